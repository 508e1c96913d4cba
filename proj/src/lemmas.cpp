#include "lpsr/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lpsr::lemmas {

namespace {

constexpr double kRelTol = 1e-9;
constexpr double kAbsTol = 1e-12;
constexpr double kSqrt2Over2 = 0.70710678118654752440;
constexpr double kExactRecoveryTol = 1e-6;

double pth_power_sum(const Eigen::VectorXd& v, const std::vector<int>& idx,
                     double p) {
  double s = 0.0;
  for (int i : idx) s += std::pow(std::abs(v(i)), p);
  return s;
}

bool feasible_for(const solver::SensingProblem& prob,
                  const Eigen::VectorXd& v) {
  double tol = prob.epsilon * (1.0 + 1e-8) + 1e-8 * std::max(1.0, prob.y.norm());
  return (prob.y - prob.A * v).norm() <= tol;
}

}  // namespace

double PartitionedError::block_l2(int i) const {
  double s = 0.0;
  for (int j : blocks[i]) s += h(j) * h(j);
  return std::sqrt(s);
}

double PartitionedError::block_pp(int i) const {
  return pth_power_sum(h, blocks[i], p);
}

double PartitionedError::tail_pp() const {
  double s = 0.0;
  for (size_t i = 1; i < blocks.size(); ++i) s += block_pp(static_cast<int>(i));
  return s;
}

double PartitionedError::tail_image_norm(const Eigen::MatrixXd& A) const {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(A.rows());
  for (size_t i = 2; i < blocks.size(); ++i) {
    for (int j : blocks[i]) sum += h(j) * A.col(j);
  }
  return sum.norm();
}

PartitionedError partition_error(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& x_hat, int k,
                                 double p) {
  const int n = static_cast<int>(x.size());
  if (x_hat.size() != n) throw std::invalid_argument("partition_error: sizes");
  if (k < 1 || k > n) throw std::invalid_argument("partition_error: 1<=k<=n");
  if (p <= 0.0 || p > 1.0) throw std::domain_error("partition_error: p");

  PartitionedError pe;
  pe.h = x - x_hat;
  pe.k = k;
  pe.p = p;

  // T0 = largest-k entries of x, ties broken by original index.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(x(a)) > std::abs(x(b));
  });
  std::vector<int> head(order.begin(), order.begin() + k);
  std::sort(head.begin(), head.end());
  pe.blocks.push_back(head);

  // T0^c sorted by |h| non-increasing, stable in the original index.
  std::vector<int> rest(order.begin() + k, order.end());
  std::sort(rest.begin(), rest.end());
  std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) {
    return std::abs(pe.h(a)) > std::abs(pe.h(b));
  });

  // Chunk into blocks of k; zero padding makes the count (n-k+k-1)/k at
  // minimum one block.
  pe.l = std::max(1, (n - k + k - 1) / k);
  for (int b = 0; b < pe.l; ++b) {
    std::vector<int> blk;
    for (int j = b * k; j < std::min<int>((b + 1) * k, rest.size()); ++j) {
      blk.push_back(rest[j]);
    }
    pe.blocks.push_back(blk);
  }

  double tail = pe.tail_pp();
  pe.t = tail > 0.0 ? pe.block_pp(1) / tail : 0.0;
  return pe;
}

CheckReport make_report(const std::string& name, double lhs, double rhs,
                        bool hypotheses_met) {
  CheckReport r;
  r.name = name;
  r.lhs = lhs;
  r.rhs = rhs;
  r.hypotheses_met = hypotheses_met;
  r.satisfied = lhs <= rhs * (1.0 + kRelTol) + kAbsTol;
  r.slack = rhs - lhs;
  return r;
}

CheckReport check_cone(const Eigen::VectorXd& x, const Eigen::VectorXd& x_hat,
                       int k, double p) {
  bool cert = solver::lp_norm_pth_power(x_hat, p) <=
              solver::lp_norm_pth_power(x, p) * (1.0 + kRelTol) + kAbsTol;
  PartitionedError pe = partition_error(x, x_hat, k, p);
  double x_tail = 0.0;
  for (size_t i = 1; i < pe.blocks.size(); ++i) {
    x_tail += pth_power_sum(x, pe.blocks[i], p);
  }
  return make_report("cone", pe.tail_pp(), pe.block_pp(0) + 2.0 * x_tail,
                     cert);
}

CheckReport check_tail_energy(const PartitionedError& pe, double p) {
  double lhs = 0.0;
  for (size_t i = 2; i < pe.blocks.size(); ++i) {
    double b = pe.block_l2(static_cast<int>(i));
    lhs += b * b;
  }
  double tail = pe.tail_pp();
  double tpw = pe.t == 0.0 ? 0.0 : std::pow(pe.t, 2.0 / p - 1.0);
  double rhs = (1.0 - pe.t) * tpw * std::pow(pe.k, 1.0 - 2.0 / p) *
               std::pow(tail, 2.0 / p);
  return make_report("tail_energy", lhs, rhs);
}

CheckReport check_reverse_holder(const Eigen::VectorXd& u, double p) {
  const double k = static_cast<double>(u.size());
  double lhs = std::pow(k, 0.5 - 1.0 / p) * solver::lp_norm(u, p);
  return make_report("reverse_holder", lhs, u.norm());
}

CheckReport check_shift(const Eigen::VectorXd& u, int l, int r, double p) {
  const int n = static_cast<int>(u.size());
  if (l < 1 || r < 1 || l + r > n) {
    throw std::invalid_argument("check_shift: need l,r >= 1 and l+r <= n");
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (u(i) + kAbsTol < u(i + 1)) {
      throw std::invalid_argument("check_shift: u must be non-increasing");
    }
  }
  if (u(n - 1) < -kAbsTol) {
    throw std::invalid_argument("check_shift: u must be nonnegative");
  }
  double lhs2 = 0.0;
  for (int i = l; i < l + r; ++i) lhs2 += u(i) * u(i);
  double psum = 0.0;
  for (int i = 0; i < r; ++i) psum += std::pow(std::abs(u(i)), p);
  double c = std::max(std::pow(static_cast<double>(r), 0.5 - 1.0 / p),
                      std::sqrt(p / 2.0) *
                          std::pow(2.0 * l / (2.0 - p), 0.5 - 1.0 / p));
  return make_report("shift", std::sqrt(lhs2),
                     c * std::pow(psum, 1.0 / p));
}

CheckReport check_shift_corollary(const Eigen::VectorXd& u, int k, double p) {
  const int n = static_cast<int>(u.size());
  if (k < 1 || n < 3 * k) {
    throw std::invalid_argument("check_shift_corollary: need 3k entries");
  }
  double lhs2 = 0.0;
  for (int i = k; i < 3 * k; ++i) lhs2 += u(i) * u(i);
  double psum = 0.0;
  for (int i = 0; i < 2 * k; ++i) psum += std::pow(std::abs(u(i)), p);
  double rhs = bounds::c1_shift(p) *
               std::pow(static_cast<double>(k), 0.5 - 1.0 / p) *
               std::pow(psum, 1.0 / p);
  return make_report("shift_corollary", std::sqrt(lhs2), rhs);
}

CheckReport check_reverse_block_sum(const PartitionedError& pe, double p) {
  double lhs = 0.0;
  for (size_t i = 2; i < pe.blocks.size(); ++i) {
    lhs += pe.block_l2(static_cast<int>(i));
  }
  double rhs = std::sqrt(2.0) * bounds::c1_shift(p) *
               std::pow(static_cast<double>(pe.k), 0.5 - 1.0 / p) *
               std::pow(pe.tail_pp(), 1.0 / p);
  return make_report("reverse_block_sum", lhs, rhs);
}

CheckReport check_A_blocksum(const Eigen::MatrixXd& A,
                             const PartitionedError& pe,
                             const ric::RicEstimate& delta, double p) {
  if (delta.kind != ric::RicKind::exact) {
    throw std::invalid_argument(
        "check_A_blocksum: inequality requires an exact RIC");
  }
  bool hyp = delta.order == 2 * pe.k && !delta.rip_fails;
  double lhs = pe.tail_image_norm(A);
  // clamp so the report stays evaluable when rip_fails (hyp is false then)
  double d = std::min(std::max(delta.delta, 0.0), 1.0 - 1e-15);
  double rhs = bounds::c1_tp(pe.t, p, d) *
               std::pow(static_cast<double>(pe.k), 1.0 - 2.0 / p) *
               std::pow(pe.tail_pp(), 2.0 / p);
  return make_report("A_blocksum", lhs * lhs, rhs, hyp);
}

CheckReport check_head_energy(const solver::SensingProblem& prob,
                              const Eigen::VectorXd& x,
                              const Eigen::VectorXd& x_hat,
                              const ric::RicEstimate& delta, double p) {
  bool hyp = feasible_for(prob, x) && feasible_for(prob, x_hat) &&
             delta.kind != ric::RicKind::sampled_lower_bound &&
             !delta.rip_fails && delta.order == 2 * prob.k;
  PartitionedError pe = partition_error(x, x_hat, prob.k, p);
  double lhs = pe.block_l2(0) * pe.block_l2(0);
  if (pe.blocks.size() > 1) lhs += pe.block_l2(1) * pe.block_l2(1);
  double s = 2.0 * prob.epsilon + pe.tail_image_norm(prob.A);
  return make_report("head_energy", lhs, s * s / (1.0 - delta.delta), hyp);
}

CheckReport check_head_p_bound(const solver::SensingProblem& prob,
                               const Eigen::VectorXd& x,
                               const Eigen::VectorXd& x_hat,
                               const ric::RicEstimate& delta, double p,
                               bounds::Regime regime) {
  const double d = delta.delta;
  bool hyp = feasible_for(prob, x) && feasible_for(prob, x_hat) &&
             delta.kind != ric::RicKind::sampled_lower_bound &&
             delta.order == 2 * prob.k && d >= kSqrt2Over2 && d < 1.0;
  PartitionedError pe = partition_error(x, x_hat, prob.k, p);
  const double kpow = std::pow(static_cast<double>(prob.k), 1.0 - p / 2.0);
  const double epsp = std::pow(prob.epsilon, p);
  const double dp2 = std::pow(1.0 - d, p / 2.0);
  double rhs;
  const char* name;
  if (regime == bounds::Regime::general) {
    rhs = std::pow(2.0, 1.5 * p) / dp2 * kpow * epsp +
          bounds::big_c(p, std::min(d, 1.0 - 1e-15)) * pe.tail_pp();
    name = "head_p_general";
  } else {
    hyp = hyp && (pe.l == 3);  // n = 4k after padding
    rhs = std::pow(2.0, p + 1.0) / dp2 * kpow * epsp +
          bounds::big_c_bar(p, std::min(d, 1.0 - 1e-15)) * pe.tail_pp();
    name = "head_p_special";
  }
  return make_report(name, pe.block_pp(0), rhs, hyp);
}

std::vector<CheckReport> check_theorem_bounds(
    const solver::SensingProblem& prob, const Eigen::VectorXd& x,
    const Eigen::VectorXd& x_hat, const bounds::BoundSet& bset, double p) {
  bool cert = solver::lp_norm_pth_power(x_hat, p) <=
              solver::lp_norm_pth_power(x, p) * (1.0 + kRelTol) + kAbsTol;
  bool hyp = feasible_for(prob, x) && feasible_for(prob, x_hat) && cert;

  PartitionedError pe = partition_error(x, x_hat, prob.k, p);
  double x_tail = 0.0;
  for (size_t i = 1; i < pe.blocks.size(); ++i) {
    x_tail += pth_power_sum(x, pe.blocks[i], p);
  }
  const Eigen::VectorXd h = x - x_hat;
  const double err_p = solver::lp_norm_pth_power(h, p);
  const double err_2 = h.norm();
  const double kpow = std::pow(static_cast<double>(prob.k), 1.0 - p / 2.0);
  const double epsp = std::pow(prob.epsilon, p);

  auto bound_report = [&](const char* name, double lhs, double rhs,
                          bool valid) {
    // rhs == 0 is the noiseless k-sparse case: the theorems promise exact
    // recovery, which floating point can only attest up to a tolerance.
    if (rhs == 0.0) {
      return make_report(name, err_2, kExactRecoveryTol, hyp && valid);
    }
    return make_report(name, lhs, rhs, hyp && valid);
  };

  std::vector<CheckReport> out;
  out.push_back(bound_report("theorem_pnorm", err_p,
                             bset.c0 * x_tail + bset.c1 * kpow * epsp,
                             bset.general_valid));
  out.push_back(bound_report(
      "theorem_2norm", std::pow(err_2, p),
      bset.d0 * x_tail / kpow + bset.d1 * epsp, bset.general_valid));
  if (pe.l == 3) {
    out.push_back(bound_report(
        "theorem_pnorm_bar", err_p,
        bset.c0_bar * x_tail + bset.c1_bar * kpow * epsp, bset.special_valid));
    out.push_back(bound_report(
        "theorem_2norm_bar", std::pow(err_2, p),
        bset.d0_bar * x_tail / kpow + bset.d1_bar * epsp, bset.special_valid));
  }
  return out;
}

}  // namespace lpsr::lemmas
