#ifndef LPSR_BOUNDS_HPP
#define LPSR_BOUNDS_HPP

#include <string>

namespace lpsr::bounds {

// Scalar bound functions for lp recovery with p in (0,1].  All functions
// throw std::domain_error outside their stated domains.

/// f(p) = (p/2)^{1/2} (2-p)^{1/p-1/2} on (0,1]; strictly decreasing,
/// f(1) = sqrt(2)/2, f(p) -> +inf as p -> 0+.
double f(double p);

/// g(p) = (p/2)(1-p/2)^{2/p-1} on (0,1]; strictly increasing, range (0,1/4].
double g(double p);

/// Unique root of f(p) = 1 on (0,1], about 0.45418.  Computed once by
/// bisection to absolute tolerance 1e-10 and cached.
double p_star();

/// Piecewise admissibility threshold: 1-0.5p for p <= p_star, 1-0.62p above;
/// domain (0,1).
double h(double p);

/// Largest admissible p for a given delta in [sqrt(2)/2, 1):
///   (50/31)(1-delta) on [sqrt(2)/2, 0.7183)
///   p_star            on [0.7183, 0.7729)
///   2(1-delta)        on [0.7729, 1)
/// For delta < sqrt(2)/2 the l1 case (p = 1) applies and this throws.
double p_bar(double delta);

// Theorem constants C(p), D(p) and their n<=4k variants; p in (0,1),
// delta in [0,1).  Both C and D place p = p_star on the left branch.
double big_c(double p, double delta);
double big_d(double p, double delta);
double big_c_bar(double p, double delta);
double big_d_bar(double p, double delta);

// t-parameterized envelopes used in the proofs, t in [0,1].  The t-powers
// t^{2/p-1} and t^{2/p} are defined as 0 at t = 0.
double c1_tp(double t, double p, double delta);
double c2_tp(double t, double p, double delta);
double c3_tp(double t, double p, double delta);

// Closed-form maximizer locations of c1_tp and c2_tp over t.
inline double c1_tp_argmax(double p) { return 1.0 - p / 2.0; }
inline double c2_tp_argmax(double p, double delta) {
  return (2.0 - p) / (2.0 * (2.0 - delta));
}

/// Shift-inequality constant: (p/2)^{1/2}(2/(2-p))^{1/2-1/p} for p <= p_star,
/// 2^{1/2-1/p} above; domain (0,1).
double c1_shift(double p);

// Appendix monotonicity helpers; phi1/phi2 on (0,1), varphi on (0,1].
double phi1(double t);
double phi2(double t);
double varphi(double p);
/// Auxiliary of the varphi monotonicity proof; <= 0 on (0,1].
double varphi_bar(double p);

enum class Regime { general, special_n_le_4k };

Regime regime_from_string(const std::string& s);
std::string to_string(Regime r);

/// All derived recovery constants for a (p, delta) pair.  Constants whose
/// denominator condition (C(p) < 1, resp. Cbar(p) < 1) fails are NaN and the
/// corresponding validity flag is false; no exception is thrown for that.
struct BoundSet {
  double p = 0.0;
  double delta = 0.0;
  Regime regime = Regime::general;

  double c_p = 0.0;   // C(p)
  double c0 = 0.0;    // 2(1+C)/(1-C)
  double c1 = 0.0;    // 2^{3p/2+1} / ((1-delta)^{p/2}(1-C))
  double d_p = 0.0;   // D(p)
  double d0 = 0.0;    // 2D/(1-C)
  double d1 = 0.0;    // (2^p + 2^{3p/2} D/(1-C)) / (1-delta)^{p/2}

  double c_bar = 0.0;   // Cbar(p)
  double c0_bar = 0.0;  // 2(1+Cbar)/(1-Cbar)
  double c1_bar = 0.0;  // 2^{p+2} / ((1-delta)^{p/2}(1-Cbar))
  double d_bar = 0.0;   // Dbar(p)
  double d0_bar = 0.0;  // 2Dbar/(1-Cbar)
  double d1_bar = 0.0;  // 2^p/(1-delta)^{p/2} (1 + 2Dbar/(1-Cbar))

  bool general_valid = false;  // C(p) < 1
  bool special_valid = false;  // Cbar(p) < 1
  bool valid = false;          // validity of the requested regime
};

BoundSet bound_set(double p, double delta, Regime regime);

}  // namespace lpsr::bounds

#endif  // LPSR_BOUNDS_HPP
