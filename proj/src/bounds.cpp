#include "lpsr/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lpsr::bounds {

namespace {

constexpr double kSqrt2Over2 = 0.70710678118654752440;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

// t^e with the convention 0^e = 0 for e > 0.
double tpow(double t, double e) { return t == 0.0 ? 0.0 : std::pow(t, e); }

// delta-dependent additive term shared by c1_tp/c2_tp/c3_tp.
double cross_term(double p, double delta) {
  return p <= p_star() ? 2.0 * g(p) * delta
                       : std::pow(2.0, 2.0 - 2.0 / p) * delta;
}

}  // namespace

double f(double p) {
  require(p > 0.0 && p <= 1.0, "f: p must be in (0,1]");
  return std::sqrt(p / 2.0) * std::pow(2.0 - p, 1.0 / p - 0.5);
}

double g(double p) {
  require(p > 0.0 && p <= 1.0, "g: p must be in (0,1]");
  return (p / 2.0) * std::pow(1.0 - p / 2.0, 2.0 / p - 1.0);
}

double p_star() {
  // f is strictly decreasing with f(1e-6) >> 1 and f(1) < 1.
  static const double root = [] {
    double lo = 1e-6, hi = 1.0;
    while (hi - lo > 1e-10) {
      double mid = 0.5 * (lo + hi);
      (f(mid) >= 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return root;
}

double h(double p) {
  require(p > 0.0 && p < 1.0, "h: p must be in (0,1)");
  return p <= p_star() ? 1.0 - 0.5 * p : 1.0 - 0.62 * p;
}

double p_bar(double delta) {
  require(delta >= kSqrt2Over2 && delta < 1.0,
          "p_bar: delta must be in [sqrt(2)/2, 1); below that use p = 1");
  if (delta < 0.7183) return (50.0 / 31.0) * (1.0 - delta);
  if (delta < 0.7729) return p_star();
  return 2.0 * (1.0 - delta);
}

double big_c(double p, double delta) {
  require(p > 0.0 && p <= 1.0, "big_c: p must be in (0,1]");
  require(delta >= 0.0 && delta < 1.0, "big_c: delta must be in [0,1)");
  double base;
  if (p <= p_star()) {
    base = (std::pow(2.0 - delta, 1.0 - 2.0 / p) + 2.0 * delta) * g(p) /
           (1.0 - delta);
  } else {
    base = (std::pow(2.0 - delta, 1.0 - 2.0 / p) * g(p) +
            std::pow(2.0, 2.0 - 2.0 / p) * delta) /
           (1.0 - delta);
  }
  return std::pow(base, p / 2.0);
}

double big_d(double p, double delta) {
  require(p > 0.0 && p <= 1.0, "big_d: p must be in (0,1]");
  require(delta >= 0.0 && delta < 1.0, "big_d: delta must be in [0,1)");
  double base;
  if (p <= p_star()) {
    base = (2.0 + delta) * g(p) / (1.0 - delta);
  } else {
    base = ((2.0 - delta) * g(p) + std::pow(2.0, 2.0 - 2.0 / p) * delta) /
           (1.0 - delta);
  }
  return std::pow(base, p / 2.0);
}

double big_c_bar(double p, double delta) {
  require(p > 0.0 && p <= 1.0, "big_c_bar: p must be in (0,1]");
  require(delta >= 0.0 && delta < 1.0, "big_c_bar: delta must be in [0,1)");
  return (1.0 + delta) * std::pow(2.0, p / 2.0 - 1.0) *
         std::pow(g(p) / (1.0 - delta), p / 2.0);
}

double big_d_bar(double p, double delta) {
  require(p > 0.0 && p <= 1.0, "big_d_bar: p must be in (0,1]");
  require(delta >= 0.0 && delta < 1.0, "big_d_bar: delta must be in [0,1)");
  return std::pow(2.0 * g(p) / (1.0 - delta), p / 2.0);
}

double c1_tp(double t, double p, double delta) {
  require(t >= 0.0 && t <= 1.0, "c1_tp: t must be in [0,1]");
  require(p > 0.0 && p < 1.0, "c1_tp: p must be in (0,1)");
  require(delta >= 0.0 && delta < 1.0, "c1_tp: delta must be in [0,1)");
  return (1.0 - t) * tpow(t, 2.0 / p - 1.0) + cross_term(p, delta);
}

double c2_tp(double t, double p, double delta) {
  require(t >= 0.0 && t <= 1.0, "c2_tp: t must be in [0,1]");
  require(p > 0.0 && p < 1.0, "c2_tp: p must be in (0,1)");
  require(delta >= 0.0 && delta < 1.0, "c2_tp: delta must be in [0,1)");
  return (delta - 2.0) * tpow(t, 2.0 / p) + tpow(t, 2.0 / p - 1.0) +
         cross_term(p, delta);
}

double c3_tp(double t, double p, double delta) {
  require(t >= 0.0 && t <= 1.0, "c3_tp: t must be in [0,1]");
  require(p > 0.0 && p < 1.0, "c3_tp: p must be in (0,1)");
  require(delta >= 0.0 && delta < 1.0, "c3_tp: delta must be in [0,1)");
  return (2.0 - delta) * (1.0 - t) * tpow(t, 2.0 / p - 1.0) +
         cross_term(p, delta);
}

double c1_shift(double p) {
  require(p > 0.0 && p < 1.0, "c1_shift: p must be in (0,1)");
  if (p <= p_star()) {
    return std::sqrt(p / 2.0) * std::pow(2.0 / (2.0 - p), 0.5 - 1.0 / p);
  }
  return std::pow(2.0, 0.5 - 1.0 / p);
}

double phi1(double t) {
  require(t > 0.0 && t < 1.0, "phi1: t must be in (0,1)");
  return std::pow((1.0 - t) / (1.0 + t), 1.0 / t - 1.0);
}

double phi2(double t) {
  require(t > 0.0 && t < 1.0, "phi2: t must be in (0,1)");
  return std::pow(1.0 - t, 1.0 / t);
}

double varphi(double p) {
  require(p > 0.0 && p <= 1.0, "varphi: p must be in (0,1]");
  const double r = 3.0 - 2.0 * std::sqrt(2.0);
  return std::pow(1.0 - r * p, 2.0 / p) * std::pow(1.0 - p / 2.0, 2.0 / p - 1.0);
}

double varphi_bar(double p) {
  require(p > 0.0 && p <= 1.0, "varphi_bar: p must be in (0,1]");
  const double r = 3.0 - 2.0 * std::sqrt(2.0);
  return r * p / (1.0 - r * p) + p / 2.0 + std::log1p(-r * p) +
         std::log1p(-p / 2.0);
}

Regime regime_from_string(const std::string& s) {
  if (s == "general") return Regime::general;
  if (s == "special" || s == "special_n_le_4k") return Regime::special_n_le_4k;
  throw std::domain_error("unknown regime: " + s);
}

std::string to_string(Regime r) {
  return r == Regime::general ? "general" : "special_n_le_4k";
}

BoundSet bound_set(double p, double delta, Regime regime) {
  require(p > 0.0 && p <= 1.0, "bound_set: p must be in (0,1]");
  require(delta >= 0.0 && delta < 1.0, "bound_set: delta must be in [0,1)");

  BoundSet b;
  b.p = p;
  b.delta = delta;
  b.regime = regime;
  b.c_p = big_c(p, delta);
  b.d_p = big_d(p, delta);
  b.c_bar = big_c_bar(p, delta);
  b.d_bar = big_d_bar(p, delta);

  const double dp2 = std::pow(1.0 - delta, p / 2.0);
  // The recovery guarantees require p strictly below 1 on top of C < 1.
  b.general_valid = b.c_p < 1.0 && p < 1.0;
  if (b.general_valid) {
    const double den = 1.0 - b.c_p;
    b.c0 = 2.0 * (1.0 + b.c_p) / den;
    b.c1 = std::pow(2.0, 1.5 * p + 1.0) / (dp2 * den);
    b.d0 = 2.0 * b.d_p / den;
    b.d1 = (std::pow(2.0, p) + std::pow(2.0, 1.5 * p) * b.d_p / den) / dp2;
  } else {
    b.c0 = b.c1 = b.d0 = b.d1 = kNan;
  }

  b.special_valid = b.c_bar < 1.0 && p < 1.0;
  if (b.special_valid) {
    const double den = 1.0 - b.c_bar;
    b.c0_bar = 2.0 * (1.0 + b.c_bar) / den;
    b.c1_bar = std::pow(2.0, p + 2.0) / (dp2 * den);
    b.d0_bar = 2.0 * b.d_bar / den;
    b.d1_bar = std::pow(2.0, p) / dp2 * (1.0 + 2.0 * b.d_bar / den);
  } else {
    b.c0_bar = b.c1_bar = b.d0_bar = b.d1_bar = kNan;
  }

  b.valid = regime == Regime::general ? b.general_valid : b.special_valid;
  return b;
}

}  // namespace lpsr::bounds
