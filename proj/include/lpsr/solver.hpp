#ifndef LPSR_SOLVER_HPP
#define LPSR_SOLVER_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>

namespace lpsr::solver {

/// One instance of y = A x + e with noise budget ||e||_2 <= epsilon.
/// x_ref, when present, is the reference signal used for certificates.
struct SensingProblem {
  Eigen::MatrixXd A;
  Eigen::VectorXd y;
  double epsilon = 0.0;
  int k = 0;  // sparsity metadata for evaluation
  std::optional<Eigen::VectorXd> x_ref;
};

struct RecoveryOutcome {
  Eigen::VectorXd x_hat;
  double residual = 0.0;     // ||y - A x_hat||_2
  double objective_p = 0.0;  // ||x_hat||_p^p
  bool feasible = false;
  bool has_reference = false;
  bool objective_dominates_reference = false;  // ||x_hat||_p <= ||x_ref||_p
  bool converged = true;  // false: iteration cap hit, best iterate returned
  bool objective_monotone = true;  // smoothed objective non-increasing
  int iterations = 0;
  double final_smoothing = 0.0;
};

struct IrlsOptions {
  double sigma_decay = 0.1;
  double sigma_floor = 1e-9;
  int max_iters_per_level = 500;
  double step_tol = 1e-9;
  double lambda_lo = 1e-6;  // bisection bracket for the noisy path
  double lambda_hi = 1e6;
  int max_bisection_steps = 60;
};

/// Iteratively reweighted least squares with geometric smoothing
/// continuation for min ||x||_p s.t. ||y - Ax||_2 <= epsilon.
/// Noiseless path (epsilon = 0): weighted minimum-norm iterations, every
/// iterate feasible. Noisy path: penalized IRLS with the penalty weight
/// found by bisection on the residual, then a least-squares projection onto
/// the feasible boundary if needed.
RecoveryOutcome irls_recover(const SensingProblem& prob, double p,
                             const IrlsOptions& opts = {});

/// (sum |v_i|^p)^{1/p}, p in (0,1].
double lp_norm(const Eigen::VectorXd& v, double p);
/// sum |v_i|^p — the ||.||_p^p convention used in the error bounds.
double lp_norm_pth_power(const Eigen::VectorXd& v, double p);

enum class Ensemble { gaussian, bernoulli, partial_orthogonal };

Ensemble ensemble_from_string(const std::string& s);
std::string to_string(Ensemble e);

/// Column-normalized random sensing matrix.
Eigen::MatrixXd make_matrix(int m, int n, Ensemble ensemble,
                            std::uint64_t seed);

/// Exactly k-sparse vector: uniform support, standard normal nonzeros.
Eigen::VectorXd make_sparse_signal(int n, int k, std::uint64_t seed);

/// Noise drawn uniformly on the eps-sphere (zero when eps = 0).
Eigen::VectorXd make_noise(int m, double eps, std::uint64_t seed);

/// Random instance: A from the ensemble (column-normalized), x_ref exactly
/// k-sparse with uniform support and standard normal nonzeros, e uniform on
/// the epsilon-sphere, y = A x_ref + e. Deterministic per seed.
SensingProblem make_instance(int m, int n, int k, double noise_eps,
                             std::uint64_t seed,
                             Ensemble ensemble = Ensemble::gaussian);

}  // namespace lpsr::solver

#endif  // LPSR_SOLVER_HPP
