#ifndef LPSR_LEMMAS_HPP
#define LPSR_LEMMAS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "lpsr/bounds.hpp"
#include "lpsr/ric.hpp"
#include "lpsr/solver.hpp"

namespace lpsr::lemmas {

/// Error vector h = x - x_hat split into the head block T0 (the largest-k
/// entries of x, ties broken by index) and k-sized tail blocks T1..Tl taken
/// in non-increasing |h| order over T0^c (stable in the original index).
/// Conceptually h is zero-padded so n = (l+1)k; padding never changes a
/// norm, so blocks simply store original indices and the last one may be
/// short.
struct PartitionedError {
  Eigen::VectorXd h;
  int k = 0;
  int l = 0;  // number of tail blocks after padding
  double p = 0.0;
  double t = 0.0;  // ||h_T1||_p^p / ||h_T0c||_p^p, 0 when the tail is zero
  std::vector<std::vector<int>> blocks;  // blocks[0] = T0, blocks[i] = Ti

  double block_l2(int i) const;
  double block_pp(int i) const;  // ||h_Ti||_p^p
  double tail_pp() const;        // ||h_T0c||_p^p
  /// ||sum_{i>=2} A h_Ti||_2
  double tail_image_norm(const Eigen::MatrixXd& A) const;
};

PartitionedError partition_error(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& x_hat, int k,
                                 double p);

/// One verified inequality lhs <= rhs.  satisfied is judged at relative
/// tolerance 1e-9 plus absolute 1e-12.  hypotheses_met is false when the
/// inputs do not meet the inequality's preconditions; such reports are
/// excluded from pass/fail statistics.
struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  bool hypotheses_met = true;
  double slack = 0.0;  // rhs - lhs
};

CheckReport make_report(const std::string& name, double lhs, double rhs,
                        bool hypotheses_met = true);

/// Cone condition ||h_T0c||_p^p <= ||h_T0||_p^p + 2||x_T0c||_p^p; requires
/// the certificate ||x_hat||_p <= ||x||_p.
CheckReport check_cone(const Eigen::VectorXd& x, const Eigen::VectorXd& x_hat,
                       int k, double p);

/// sum_{i>=2} ||h_Ti||_2^2 <= (1-t) t^{2/p-1} k^{1-2/p} ||h_T0c||_p^2.
CheckReport check_tail_energy(const PartitionedError& pe, double p);

/// Reverse Hoelder: k^{1/2-1/p} ||u||_p <= ||u||_2 for a k-vector u.
CheckReport check_reverse_holder(const Eigen::VectorXd& u, double p);

/// Shift inequality on a sorted non-increasing nonnegative u:
/// (sum_{i=l+1}^{l+r} u_i^2)^{1/2} <= C (sum_{i=1}^r u_i^p)^{1/p} with
/// C = max(r^{1/2-1/p}, (p/2)^{1/2} (2l/(2-p))^{1/2-1/p}).
CheckReport check_shift(const Eigen::VectorXd& u, int l, int r, double p);

/// Corollary specialization l = r = k over 3k entries with constant
/// c1_shift(p) k^{1/2-1/p} and the p-sum over the first 2k entries.
CheckReport check_shift_corollary(const Eigen::VectorXd& u, int k, double p);

/// sum_{i>=2} ||h_Ti||_2 <= sqrt(2) c1_shift(p) k^{1/2-1/p} ||h_T0c||_p.
CheckReport check_reverse_block_sum(const PartitionedError& pe, double p);

/// ||sum_{i>=2} A h_Ti||_2^2 <= C1(t,p) k^{1-2/p} ||h_T0c||_p^2; requires an
/// exact RIC at order 2k.
CheckReport check_A_blocksum(const Eigen::MatrixXd& A,
                             const PartitionedError& pe,
                             const ric::RicEstimate& delta, double p);

/// ||h_T0||_2^2 + ||h_T1||_2^2 <= (2 eps + ||sum_{i>=2} A h_Ti||_2)^2 /
/// (1 - delta); requires both x and x_hat feasible for (y, eps).
CheckReport check_head_energy(const solver::SensingProblem& prob,
                              const Eigen::VectorXd& x,
                              const Eigen::VectorXd& x_hat,
                              const ric::RicEstimate& delta, double p);

/// Head p-mass bound: the general form with C(p) or, when n = 4k, the
/// special form with Cbar(p).
CheckReport check_head_p_bound(const solver::SensingProblem& prob,
                               const Eigen::VectorXd& x,
                               const Eigen::VectorXd& x_hat,
                               const ric::RicEstimate& delta, double p,
                               bounds::Regime regime);

/// The four recovery error bounds evaluated on a concrete (x, x_hat) pair.
/// The barred pair is emitted only when n = 4k after padding.  When a bound's
/// right-hand side is exactly zero (noiseless, k-sparse reference) the
/// theorem's exact-recovery clause is verified instead: ||h||_2 <= 1e-6.
std::vector<CheckReport> check_theorem_bounds(
    const solver::SensingProblem& prob, const Eigen::VectorXd& x,
    const Eigen::VectorXd& x_hat, const bounds::BoundSet& bset, double p);

}  // namespace lpsr::lemmas

#endif  // LPSR_LEMMAS_HPP
