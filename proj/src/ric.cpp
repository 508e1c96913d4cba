#include "lpsr/ric.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "lpsr/rng.hpp"

namespace lpsr::ric {

namespace {

double subset_stat(const Eigen::MatrixXd& A, const std::vector<int>& cols) {
  const int k = static_cast<int>(cols.size());
  Eigen::MatrixXd sub(A.rows(), k);
  for (int j = 0; j < k; ++j) sub.col(j) = A.col(cols[j]);
  Eigen::MatrixXd gram = sub.transpose() * sub;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram,
                                                     Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  return std::max(ev(k - 1) - 1.0, 1.0 - ev(0));
}

// Advance a k-combination of {0..n-1} in colexicographic order.
bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = 0; i < k; ++i) {
    int limit = (i + 1 < k) ? c[i + 1] : n;
    if (c[i] + 1 < limit) {
      ++c[i];
      for (int j = 0; j < i; ++j) c[j] = j;
      return true;
    }
  }
  return false;
}

}  // namespace

std::string to_string(RicKind k) {
  switch (k) {
    case RicKind::exact: return "exact";
    case RicKind::sampled_lower_bound: return "sampled_lower_bound";
    default: return "user_supplied";
  }
}

std::uint64_t subset_count(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    if (c > UINT64_MAX / num) return UINT64_MAX;
    c = c * num / static_cast<std::uint64_t>(i);
  }
  return c;
}

RicEstimate exact_ric(const Eigen::MatrixXd& A, int k,
                      const ExactOptions& opts) {
  const int n = static_cast<int>(A.cols());
  if (k < 1 || k > n) throw std::invalid_argument("exact_ric: need 1 <= k <= n");
  const std::uint64_t count = subset_count(n, k);
  if (count > opts.subset_cap) {
    throw std::runtime_error(
        "exact_ric: enumeration refused, " + std::to_string(count) +
        " subsets exceed cap " + std::to_string(opts.subset_cap) +
        "; use the sampled lower bound instead");
  }

  std::vector<int> cols(k);
  std::iota(cols.begin(), cols.end(), 0);
  RicEstimate est;
  est.order = k;
  est.kind = RicKind::exact;
  est.delta = -1.0;
  do {
    double s = subset_stat(A, cols);
    if (s > est.delta) {  // ties keep the colex-earliest subset
      est.delta = s;
      est.argmax_subset = cols;
    }
  } while (next_combination(cols, n));
  est.rip_fails = est.delta >= 1.0;
  return est;
}

RicEstimate sampled_ric_lower_bound(const Eigen::MatrixXd& A, int k,
                                    int trials, std::uint64_t seed) {
  const int n = static_cast<int>(A.cols());
  if (k < 1 || k > n) throw std::invalid_argument("sampled_ric: need 1 <= k <= n");
  if (trials < 1) throw std::invalid_argument("sampled_ric: trials >= 1");

  Rng rng(seed);
  std::vector<int> pool(n);
  RicEstimate est;
  est.order = k;
  est.kind = RicKind::sampled_lower_bound;
  est.delta = -1.0;
  std::vector<int> cols(k);
  for (int t = 0; t < trials; ++t) {
    std::iota(pool.begin(), pool.end(), 0);
    for (int j = 0; j < k; ++j) {  // partial Fisher-Yates
      std::swap(pool[j], pool[j + static_cast<int>(rng.below(n - j))]);
    }
    std::copy(pool.begin(), pool.begin() + k, cols.begin());
    std::sort(cols.begin(), cols.end());
    double s = subset_stat(A, cols);
    if (s > est.delta) {
      est.delta = s;
      est.argmax_subset = cols;
    }
  }
  est.rip_fails = est.delta >= 1.0;
  return est;
}

Eigen::MatrixXd normalize_columns(const Eigen::MatrixXd& A) {
  Eigen::MatrixXd out = A;
  for (int j = 0; j < out.cols(); ++j) {
    double norm = out.col(j).norm();
    if (norm == 0.0) {
      throw std::invalid_argument("normalize_columns: zero column " +
                                  std::to_string(j));
    }
    out.col(j) /= norm;
  }
  return out;
}

}  // namespace lpsr::ric
