#include "lpsr/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lpsr/ric.hpp"
#include "lpsr/rng.hpp"

namespace lpsr::solver {

namespace {

double smoothed_objective(const Eigen::VectorXd& x, double p, double sigma) {
  double s = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    s += std::pow(x(i) * x(i) + sigma * sigma, p / 2.0);
  }
  return s;
}

// Geometric continuation schedule sigma0, sigma0*decay, ..., clamped at the
// floor (the floor level itself is included).
std::vector<double> smoothing_levels(double sigma0, const IrlsOptions& opts) {
  std::vector<double> levels;
  double s = std::max(sigma0, opts.sigma_floor);
  while (s > opts.sigma_floor) {
    levels.push_back(s);
    s *= opts.sigma_decay;
  }
  levels.push_back(opts.sigma_floor);
  return levels;
}

struct IrlsState {
  Eigen::VectorXd x;
  int iterations = 0;
  bool converged = true;
  bool monotone = true;
  double final_smoothing = 0.0;
};

// Noiseless path: x <- W A^T (A W A^T)^{-1} y with W = diag((x_i^2 +
// sigma^2)^{1 - p/2}); every iterate satisfies A x = y exactly.
IrlsState irls_equality(const Eigen::MatrixXd& A, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& x0, double p,
                        const IrlsOptions& opts) {
  IrlsState st;
  st.x = x0;
  const double sigma0 = st.x.cwiseAbs().maxCoeff();
  for (double sigma : smoothing_levels(sigma0, opts)) {
    st.final_smoothing = sigma;
    double prev_obj = smoothed_objective(st.x, p, sigma);
    bool level_converged = false;
    for (int it = 0; it < opts.max_iters_per_level; ++it) {
      Eigen::VectorXd w(st.x.size());
      for (int i = 0; i < w.size(); ++i) {
        w(i) = std::pow(st.x(i) * st.x(i) + sigma * sigma, 1.0 - p / 2.0);
      }
      Eigen::MatrixXd M = A * w.asDiagonal() * A.transpose();
      Eigen::VectorXd z = M.ldlt().solve(y);
      Eigen::VectorXd x_new = w.asDiagonal() * (A.transpose() * z);
      ++st.iterations;
      double obj = smoothed_objective(x_new, p, sigma);
      if (obj > prev_obj * (1.0 + 1e-9) + 1e-12) st.monotone = false;
      prev_obj = obj;
      double step = (x_new - st.x).norm() / std::max(1.0, st.x.norm());
      st.x = x_new;
      if (step < opts.step_tol) {
        level_converged = true;
        break;
      }
    }
    if (!level_converged) st.converged = false;
  }
  return st;
}

// Noisy path inner solve: minimize sum (x_i^2 + sigma^2)^{p/2} +
// lambda ||Ax - y||_2^2 by reweighting, with continuation in sigma.
IrlsState irls_penalized(const Eigen::MatrixXd& A, const Eigen::VectorXd& y,
                         const Eigen::VectorXd& x0, double p, double lambda,
                         const IrlsOptions& opts) {
  IrlsState st;
  st.x = x0;
  const Eigen::MatrixXd AtA = A.transpose() * A;
  const Eigen::VectorXd Aty = A.transpose() * y;
  const double sigma0 = std::max(st.x.cwiseAbs().maxCoeff(), 1e-3);
  for (double sigma : smoothing_levels(sigma0, opts)) {
    st.final_smoothing = sigma;
    double prev_obj = smoothed_objective(st.x, p, sigma) +
                      lambda * (A * st.x - y).squaredNorm();
    bool level_converged = false;
    for (int it = 0; it < opts.max_iters_per_level; ++it) {
      Eigen::MatrixXd M = lambda * AtA;
      for (int i = 0; i < st.x.size(); ++i) {
        M(i, i) += (p / 2.0) *
                   std::pow(st.x(i) * st.x(i) + sigma * sigma, p / 2.0 - 1.0);
      }
      Eigen::VectorXd x_new = M.ldlt().solve(lambda * Aty);
      ++st.iterations;
      double obj = smoothed_objective(x_new, p, sigma) +
                   lambda * (A * x_new - y).squaredNorm();
      if (obj > prev_obj * (1.0 + 1e-9) + 1e-12) st.monotone = false;
      prev_obj = obj;
      double step = (x_new - st.x).norm() / std::max(1.0, st.x.norm());
      st.x = x_new;
      if (step < opts.step_tol) {
        level_converged = true;
        break;
      }
    }
    if (!level_converged) st.converged = false;
  }
  return st;
}

// Drop entries below 1e-8 * max|x| and refit on the remaining support; keep
// the result only when it stays feasible and does not raise the objective.
void support_cleanup(const Eigen::MatrixXd& A, const Eigen::VectorXd& y,
                     double p, double feas_tol, Eigen::VectorXd& x) {
  const double maxabs = x.cwiseAbs().maxCoeff();
  if (maxabs == 0.0) return;
  std::vector<int> support;
  for (int i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) > 1e-8 * maxabs) support.push_back(i);
  }
  if (support.empty() || static_cast<int>(support.size()) == x.size()) return;
  Eigen::MatrixXd As(A.rows(), support.size());
  for (size_t j = 0; j < support.size(); ++j) As.col(j) = A.col(support[j]);
  Eigen::VectorXd z = As.colPivHouseholderQr().solve(y);
  Eigen::VectorXd cand = Eigen::VectorXd::Zero(x.size());
  for (size_t j = 0; j < support.size(); ++j) cand(support[j]) = z(j);
  if ((y - A * cand).norm() <= feas_tol &&
      lp_norm_pth_power(cand, p) <= lp_norm_pth_power(x, p)) {
    x = cand;
  }
}

}  // namespace

double lp_norm_pth_power(const Eigen::VectorXd& v, double p) {
  if (p <= 0.0 || p > 1.0) {
    throw std::domain_error("lp_norm: p must be in (0,1]");
  }
  double s = 0.0;
  for (int i = 0; i < v.size(); ++i) s += std::pow(std::abs(v(i)), p);
  return s;
}

double lp_norm(const Eigen::VectorXd& v, double p) {
  return std::pow(lp_norm_pth_power(v, p), 1.0 / p);
}

RecoveryOutcome irls_recover(const SensingProblem& prob, double p,
                             const IrlsOptions& opts) {
  if (p <= 0.0 || p > 1.0) {
    throw std::domain_error("irls_recover: p must be in (0,1]");
  }
  const auto& A = prob.A;
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (m > n) throw std::invalid_argument("irls_recover: need m <= n");
  if (prob.y.size() != m) throw std::invalid_argument("irls_recover: y size");
  if (prob.epsilon < 0.0) {
    throw std::invalid_argument("irls_recover: epsilon >= 0");
  }

  RecoveryOutcome out;
  out.x_hat = Eigen::VectorXd::Zero(n);

  // Work on y/||y|| so the path is scale-equivariant; rescale at the end.
  const double yscale = prob.y.norm();
  if (yscale == 0.0 && prob.epsilon >= 0.0) {
    // x = 0 is feasible with zero objective: it is the minimizer.
    out.residual = 0.0;
    out.feasible = true;
  } else {
    const Eigen::VectorXd ys = prob.y / yscale;
    const double es = prob.epsilon / yscale;
    const double feas_tol = es > 0.0 ? es * (1.0 + 1e-8) : 1e-8;

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    if (prob.epsilon == 0.0 && cod.rank() < m) {
      throw std::runtime_error(
          "irls_recover: A is rank-deficient; the noiseless equality path "
          "requires full row rank");
    }
    Eigen::VectorXd x_ls = cod.solve(ys);  // minimum-norm least squares

    IrlsState st;
    if (prob.epsilon == 0.0) {
      st = irls_equality(A, ys, x_ls, p, opts);
    } else {
      // Residual of the penalized minimizer decreases in lambda; bisect on
      // the log scale until it lands in [0.9 eps, eps].
      double lo = std::log(opts.lambda_lo), hi = std::log(opts.lambda_hi);
      st = irls_penalized(A, ys, x_ls, p, std::exp(lo), opts);
      double r = (ys - A * st.x).norm();
      if (r > es) {
        for (int step = 0; step < opts.max_bisection_steps; ++step) {
          double mid = 0.5 * (lo + hi);
          IrlsState cand = irls_penalized(A, ys, st.x, p, std::exp(mid), opts);
          cand.iterations += st.iterations;
          cand.monotone = cand.monotone && st.monotone;
          double rc = (ys - A * cand.x).norm();
          if (rc > es) {
            lo = mid;
            st.iterations = cand.iterations;
            st.monotone = cand.monotone;
          } else {
            st = cand;
            r = rc;
            if (rc >= 0.9 * es) break;
            hi = mid;
          }
        }
      }
      // Single least-squares correction onto the feasible boundary.
      if (r > es) {
        Eigen::VectorXd resid = ys - A * st.x;
        Eigen::VectorXd d = cod.solve(resid);
        st.x += (1.0 - es / r) * d;
      }
    }

    support_cleanup(A, ys, p, feas_tol, st.x);

    out.x_hat = yscale * st.x;
    out.iterations = st.iterations;
    out.converged = st.converged;
    out.objective_monotone = st.monotone;
    out.final_smoothing = st.final_smoothing;
    out.residual = (prob.y - A * out.x_hat).norm();
    out.feasible = prob.epsilon > 0.0
                       ? out.residual <= prob.epsilon * (1.0 + 1e-8)
                       : out.residual <= 1e-8 * yscale;
  }

  out.objective_p = lp_norm_pth_power(out.x_hat, p);
  if (prob.x_ref) {
    out.has_reference = true;
    double ref_obj = lp_norm_pth_power(*prob.x_ref, p);
    out.objective_dominates_reference =
        out.objective_p <= ref_obj * (1.0 + 1e-9) + 1e-12;
  }
  return out;
}

Ensemble ensemble_from_string(const std::string& s) {
  if (s == "gaussian") return Ensemble::gaussian;
  if (s == "bernoulli") return Ensemble::bernoulli;
  if (s == "partial_orthogonal") return Ensemble::partial_orthogonal;
  throw std::domain_error("unknown ensemble: " + s);
}

std::string to_string(Ensemble e) {
  switch (e) {
    case Ensemble::gaussian: return "gaussian";
    case Ensemble::bernoulli: return "bernoulli";
    default: return "partial_orthogonal";
  }
}

Eigen::MatrixXd make_matrix(int m, int n, Ensemble ensemble,
                            std::uint64_t seed) {
  if (m < 1 || n < 1) throw std::invalid_argument("make_matrix: m,n >= 1");
  Rng rng(seed);
  if (ensemble == Ensemble::partial_orthogonal) {
    // m x n corner of a Haar-ish orthogonal matrix; much better restricted
    // isometry at desk scale than i.i.d. entries.
    const int d = std::max(m, n);
    Eigen::MatrixXd G(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) G(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    Eigen::MatrixXd Q = qr.householderQ();
    return ric::normalize_columns(Q.topLeftCorner(m, n));
  }
  Eigen::MatrixXd A(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      A(i, j) = ensemble == Ensemble::gaussian ? rng.normal() : rng.sign();
    }
  }
  return ric::normalize_columns(A);
}

Eigen::VectorXd make_sparse_signal(int n, int k, std::uint64_t seed) {
  if (k < 1 || k > n) throw std::invalid_argument("make_sparse_signal: k");
  Rng rng(seed);
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int j = 0; j < k; ++j) {
    std::swap(pool[j], pool[j + static_cast<int>(rng.below(n - j))]);
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < k; ++j) x(pool[j]) = rng.normal();
  return x;
}

Eigen::VectorXd make_noise(int m, double eps, std::uint64_t seed) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
  if (eps > 0.0) {
    Rng rng(seed);
    for (int i = 0; i < m; ++i) e(i) = rng.normal();
    e *= eps / e.norm();  // uniform on the eps-sphere
  }
  return e;
}

SensingProblem make_instance(int m, int n, int k, double noise_eps,
                             std::uint64_t seed, Ensemble ensemble) {
  if (!(k >= 1 && k <= m && m <= n)) {
    throw std::invalid_argument("make_instance: need 1 <= k <= m <= n");
  }
  if (noise_eps < 0.0) throw std::invalid_argument("make_instance: eps >= 0");

  SensingProblem prob;
  prob.A = make_matrix(m, n, ensemble, derive_seed(seed, 0));
  prob.epsilon = noise_eps;
  prob.k = k;
  prob.x_ref = make_sparse_signal(n, k, derive_seed(seed, 1));
  prob.y = prob.A * (*prob.x_ref) + make_noise(m, noise_eps, derive_seed(seed, 2));
  return prob;
}

}  // namespace lpsr::solver
