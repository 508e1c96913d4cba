#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lpsr/rng.hpp"
#include "lpsr/solver.hpp"

using namespace lpsr;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("lp_norm: goldens and p = 1 reduction") {
  VectorXd v(2);
  v << 1, 1;
  CHECK(solver::lp_norm(v, 0.5) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(solver::lp_norm_pth_power(v, 0.5) == doctest::Approx(2.0).epsilon(1e-13));
  VectorXd w(3);
  w << -1, 2, -3;
  CHECK(solver::lp_norm(w, 1.0) == doctest::Approx(6.0).epsilon(1e-13));
  CHECK(solver::lp_norm_pth_power(w, 0.5) ==
        doctest::Approx(1.0 + std::sqrt(2.0) + std::sqrt(3.0)).epsilon(1e-13));
  CHECK_THROWS_AS(solver::lp_norm(w, 0.0), std::domain_error);
  CHECK_THROWS_AS(solver::lp_norm(w, 1.5), std::domain_error);
}

TEST_CASE("make_instance: deterministic, correct geometry") {
  auto p1 = solver::make_instance(8, 12, 2, 0.05, 314);
  auto p2 = solver::make_instance(8, 12, 2, 0.05, 314);
  CHECK(p1.A == p2.A);
  CHECK(p1.y == p2.y);
  REQUIRE(p1.x_ref.has_value());
  CHECK(*p1.x_ref == *p2.x_ref);
  // exactly k nonzeros
  int nnz = 0;
  for (int i = 0; i < p1.x_ref->size(); ++i)
    if ((*p1.x_ref)(i) != 0.0) ++nnz;
  CHECK(nnz == 2);
  // unit columns
  for (int j = 0; j < p1.A.cols(); ++j)
    CHECK(p1.A.col(j).norm() == doctest::Approx(1.0).epsilon(1e-12));
  // noise lies exactly on the epsilon-sphere
  CHECK((p1.y - p1.A * *p1.x_ref).norm() ==
        doctest::Approx(0.05).epsilon(1e-12));
  // different seed changes the instance
  auto p3 = solver::make_instance(8, 12, 2, 0.05, 315);
  CHECK(p1.y != p3.y);
  // noiseless consistency
  auto p0 = solver::make_instance(8, 12, 2, 0.0, 314);
  CHECK((p0.y - p0.A * *p0.x_ref).norm() < 1e-15);
}

TEST_CASE("make_matrix: bernoulli entries are +-1/sqrt(m)") {
  MatrixXd a = solver::make_matrix(5, 7, solver::Ensemble::bernoulli, 2);
  double mag = 1.0 / std::sqrt(5.0);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      CHECK(std::abs(std::abs(a(i, j)) - mag) < 1e-12);
}

TEST_CASE("irls_recover: orthonormal system is solved exactly") {
  MatrixXd a = MatrixXd::Identity(6, 6);
  VectorXd x = VectorXd::Zero(6);
  x(1) = 2.0;
  x(4) = -0.5;
  solver::SensingProblem prob{a, a * x, 0.0, 2, x};
  auto out = solver::irls_recover(prob, 0.5);
  CHECK(out.feasible);
  CHECK((out.x_hat - x).norm() < 1e-9);
  CHECK(out.objective_dominates_reference);
  CHECK(out.residual < 1e-10);
}

TEST_CASE("irls_recover: noiseless gaussian instances recover exactly") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    auto prob = solver::make_instance(8, 12, 2, 0.0, seed);
    auto out = solver::irls_recover(prob, 0.5);
    CHECK(out.feasible);
    CHECK((out.x_hat - *prob.x_ref).norm() < 1e-8);
    CHECK(out.objective_dominates_reference);
  }
}

TEST_CASE("irls_recover: noisy path honors the residual budget") {
  for (std::uint64_t seed : {10u, 11u, 12u}) {
    auto prob = solver::make_instance(8, 12, 2, 0.05, seed);
    auto out = solver::irls_recover(prob, 0.5);
    CHECK(out.feasible);
    CHECK(out.residual <= 0.05 * (1.0 + 1e-8));
    CHECK(out.objective_p ==
          doctest::Approx(solver::lp_norm_pth_power(out.x_hat, 0.5))
              .epsilon(1e-12));
  }
}

TEST_CASE("irls_recover: scale equivariance") {
  auto prob = solver::make_instance(8, 12, 2, 0.05, 77);
  auto base = solver::irls_recover(prob, 0.5);
  const double s = 1e-6;
  solver::SensingProblem scaled = prob;
  scaled.y *= s;
  scaled.epsilon *= s;
  scaled.x_ref = *prob.x_ref * s;
  auto out = solver::irls_recover(scaled, 0.5);
  CHECK(out.feasible);
  CHECK((out.x_hat - s * base.x_hat).norm() < 1e-8 * s * base.x_hat.norm() + 1e-18);
}

TEST_CASE("irls_recover: zero measurement returns zero") {
  auto prob = solver::make_instance(6, 9, 2, 0.0, 5);
  prob.y.setZero();
  prob.x_ref = VectorXd::Zero(9);
  auto out = solver::irls_recover(prob, 0.5);
  CHECK(out.x_hat.norm() == 0.0);
  CHECK(out.feasible);
}

TEST_CASE("irls_recover: argument validation") {
  auto prob = solver::make_instance(6, 9, 2, 0.0, 5);
  CHECK_THROWS_AS(solver::irls_recover(prob, 0.0), std::domain_error);
  CHECK_THROWS_AS(solver::irls_recover(prob, 1.5), std::domain_error);
  auto bad = prob;
  bad.epsilon = -1.0;
  CHECK_THROWS_AS(solver::irls_recover(bad, 0.5), std::invalid_argument);
}

namespace {
// Smallest ||y - A x||_2 over all supports of size <= k, with the best x.
std::pair<VectorXd, double> best_k_sparse_fit(const MatrixXd& a,
                                              const VectorXd& y, int k,
                                              double p) {
  const int n = static_cast<int>(a.cols());
  VectorXd best = VectorXd::Zero(n);
  double best_obj = std::numeric_limits<double>::infinity();
  double best_res = y.norm();
  std::vector<int> idx(k);
  // enumerate supports of size exactly k (subsumes smaller supports)
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      MatrixXd sub(a.rows(), k);
      for (int j = 0; j < k; ++j) sub.col(j) = a.col(idx[j]);
      VectorXd c = sub.colPivHouseholderQr().solve(y);
      double res = (y - sub * c).norm();
      VectorXd x = VectorXd::Zero(n);
      for (int j = 0; j < k; ++j) x(idx[j]) = c(j);
      double obj = lpsr::solver::lp_norm_pth_power(x, p);
      if (res < best_res - 1e-12 ||
          (res < best_res + 1e-12 && obj < best_obj)) {
        best_res = res;
        best_obj = obj;
        best = x;
      }
      return;
    }
    for (int i = start; i < n; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return {best, best_res};
}
}  // namespace

TEST_CASE("irls_recover: matches brute-force oracle on small instances") {
  int wins = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    auto prob = solver::make_instance(6, 10, 2, 0.0, 9000 + t);
    auto out = solver::irls_recover(prob, 0.5);
    auto [oracle, res] = best_k_sparse_fit(prob.A, prob.y, 2, 0.5);
    if (out.feasible && (out.x_hat - oracle).norm() < 1e-6) ++wins;
    // the reported flags must be truthful regardless
    CHECK(out.residual == doctest::Approx((prob.y - prob.A * out.x_hat).norm())
                              .epsilon(1e-10));
  }
  CHECK(wins >= 18);
}
