#ifndef LPSR_RIC_HPP
#define LPSR_RIC_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace lpsr::ric {

enum class RicKind { exact, sampled_lower_bound, user_supplied };

std::string to_string(RicKind k);

/// A value for delta_k together with how it was obtained.  rip_fails is set
/// when delta >= 1 (the matrix has no RIP of this order); such estimates are
/// reported but rejected by the bound machinery.
struct RicEstimate {
  double delta = 0.0;
  int order = 0;  // k
  RicKind kind = RicKind::user_supplied;
  bool rip_fails = false;
  std::vector<int> argmax_subset;  // columns attaining the max (sorted)
};

inline RicEstimate user_ric(double delta, int order) {
  return {delta, order, RicKind::user_supplied, delta >= 1.0, {}};
}

/// binomial(n,k), saturating at UINT64_MAX.
std::uint64_t subset_count(int n, int k);

struct ExactOptions {
  std::uint64_t subset_cap = 1'000'000;
};

/// Exact delta_k by colexicographic enumeration of all k-column subsets:
/// delta = max over subsets S of max(lmax(A_S^T A_S)-1, 1-lmin(A_S^T A_S)).
/// Throws std::runtime_error (reporting the subset count) when
/// binomial(n,k) exceeds the cap.
RicEstimate exact_ric(const Eigen::MatrixXd& A, int k,
                      const ExactOptions& opts = {});

/// Same subset statistic maximized over `trials` uniformly random k-subsets;
/// a reproducible lower bound on the true delta_k.
RicEstimate sampled_ric_lower_bound(const Eigen::MatrixXd& A, int k,
                                    int trials, std::uint64_t seed);

/// Rescale every column to unit l2 norm; throws on a zero column.
Eigen::MatrixXd normalize_columns(const Eigen::MatrixXd& A);

}  // namespace lpsr::ric

#endif  // LPSR_RIC_HPP
