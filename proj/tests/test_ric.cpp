#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "lpsr/ric.hpp"
#include "lpsr/rng.hpp"
#include "lpsr/solver.hpp"

using namespace lpsr;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("subset_count: small values and saturation") {
  CHECK(ric::subset_count(5, 2) == 10);
  CHECK(ric::subset_count(12, 4) == 495);
  CHECK(ric::subset_count(4, 0) == 1);
  CHECK(ric::subset_count(4, 4) == 1);
  CHECK(ric::subset_count(3, 5) == 0);
  CHECK(ric::subset_count(200, 100) == UINT64_MAX);  // saturates
}

TEST_CASE("exact_ric: orthonormal columns give delta = 0") {
  MatrixXd a = MatrixXd::Identity(6, 4);
  for (int k = 1; k <= 4; ++k) {
    auto est = ric::exact_ric(a, k);
    CHECK(std::abs(est.delta) < 1e-12);
    CHECK(est.order == k);
    CHECK(est.kind == ric::RicKind::exact);
    CHECK_FALSE(est.rip_fails);
    CHECK(static_cast<int>(est.argmax_subset.size()) == k);
  }
}

TEST_CASE("exact_ric: two columns, delta_2 = |<a1,a2>|") {
  Rng rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    MatrixXd a(5, 2);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 2; ++j) a(i, j) = rng.normal();
    a = ric::normalize_columns(a);
    double dot = std::abs(a.col(0).dot(a.col(1)));
    auto est = ric::exact_ric(a, 2);
    CHECK(est.delta == doctest::Approx(dot).epsilon(1e-12));
  }
}

TEST_CASE("exact_ric: duplicate columns make delta_2 = 1 and rip_fails") {
  MatrixXd a(4, 3);
  a.col(0) << 1, 0, 0, 0;
  a.col(1) << 1, 0, 0, 0;
  a.col(2) << 0, 1, 0, 0;
  auto est = ric::exact_ric(a, 2);
  CHECK(est.delta == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(est.rip_fails);
  CHECK(est.argmax_subset == std::vector<int>{0, 1});
}

TEST_CASE("exact_ric: monotone in k") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    MatrixXd a(6, 8);
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) a(i, j) = rng.normal();
    a = ric::normalize_columns(a);
    double prev = 0.0;
    for (int k = 1; k <= 5; ++k) {
      auto est = ric::exact_ric(a, k);
      CHECK(est.delta >= prev - 1e-12);
      prev = est.delta;
    }
  }
}

TEST_CASE("exact_ric vs brute-force Rayleigh quotients") {
  // max over random k-sparse unit vectors of |(norm(Ax)^2 - 1)| can only
  // approach the exact constant from below.
  Rng rng(13);
  MatrixXd a(7, 9);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a(i, j) = rng.normal() / std::sqrt(7.0);
  int k = 3;
  auto est = ric::exact_ric(a, k);
  double best = 0.0;
  for (int t = 0; t < 20000; ++t) {
    VectorXd x = VectorXd::Zero(9);
    int s0 = static_cast<int>(rng.below(9));
    int s1, s2;
    do { s1 = static_cast<int>(rng.below(9)); } while (s1 == s0);
    do { s2 = static_cast<int>(rng.below(9)); } while (s2 == s0 || s2 == s1);
    x(s0) = rng.normal();
    x(s1) = rng.normal();
    x(s2) = rng.normal();
    x /= x.norm();
    best = std::max(best, std::abs((a * x).squaredNorm() - 1.0));
  }
  CHECK(best <= est.delta + 1e-12);
  CHECK(best > 0.5 * est.delta);  // the sampler should get reasonably close
}

TEST_CASE("exact_ric: subset cap refusal") {
  MatrixXd a = MatrixXd::Identity(30, 30);
  ric::ExactOptions opts;
  opts.subset_cap = 100;
  CHECK_THROWS_AS(ric::exact_ric(a, 15, opts), std::runtime_error);
}

TEST_CASE("sampled_ric_lower_bound: never exceeds exact, deterministic") {
  Rng rng(17);
  MatrixXd a(6, 10);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a(i, j) = rng.normal() / std::sqrt(6.0);
  auto exact = ric::exact_ric(a, 2);
  auto s1 = ric::sampled_ric_lower_bound(a, 2, 30, 99);
  auto s2 = ric::sampled_ric_lower_bound(a, 2, 30, 99);
  CHECK(s1.kind == ric::RicKind::sampled_lower_bound);
  CHECK(s1.delta == s2.delta);
  CHECK(s1.argmax_subset == s2.argmax_subset);
  CHECK(s1.delta <= exact.delta + 1e-12);
  // sampling far more subsets than exist must reach the exact value
  auto s3 = ric::sampled_ric_lower_bound(a, 2, 2000, 5);
  CHECK(s3.delta == doctest::Approx(exact.delta).epsilon(1e-12));
}

TEST_CASE("normalize_columns: golden and zero-column error") {
  MatrixXd a(2, 1);
  a << 3, 4;
  MatrixXd an = ric::normalize_columns(a);
  CHECK(an(0, 0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(an(1, 0) == doctest::Approx(0.8).epsilon(1e-15));
  MatrixXd z = MatrixXd::Zero(3, 2);
  z(0, 0) = 1.0;
  CHECK_THROWS_AS(ric::normalize_columns(z), std::invalid_argument);
}

TEST_CASE("user_ric: flags") {
  auto ok = ric::user_ric(0.5, 4);
  CHECK_FALSE(ok.rip_fails);
  CHECK(ok.kind == ric::RicKind::user_supplied);
  auto bad = ric::user_ric(1.0, 4);
  CHECK(bad.rip_fails);
}
