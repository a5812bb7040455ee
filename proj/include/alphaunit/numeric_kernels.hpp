#pragma once

// Special functions and a bracketed root finder shared by the rest of the
// library. Everything here is a pure function of its arguments.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "alphaunit/errors.hpp"

namespace alphaunit {

inline constexpr double inv_sqrt_2pi = 0.398942280401432677939946059934381868;
inline constexpr double half_log_2pi = 0.918938533204672741780329736405617640;

struct tolerance {
  double abs_tol = 1e-12;
  int max_iter = 200;

  void validate() const {
    if (!(abs_tol > 0.0)) throw domain_error("tolerance: abs_tol must be positive");
    if (max_iter < 1) throw domain_error("tolerance: max_iter must be at least 1");
  }
};

struct bracket {
  double lo;
  double hi;

  void validate() const {
    if (!(lo < hi)) throw domain_error("bracket: lo must be strictly below hi");
  }
};

inline double std_normal_pdf(double x) { return inv_sqrt_2pi * std::exp(-0.5 * x * x); }

inline double std_normal_cdf(double x) {
  if (x < 0.0) return 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0);
  return 1.0 - 0.5 * std::erfc(x * std::numbers::sqrt2 / 2.0);
}

namespace detail {

// Backward evaluation of Laplace's continued fraction for the Mills ratio
//   R(x) = (1 - Phi(x)) / phi(x) = 1/(x + 1/(x + 2/(x + 3/(x + ...)))).
// Returns the first two tails D1 = x + 2/(x + 3/...), D2 = x + 3/(x + 4/...),
// so that R = D1 / (x*D1 + 1). Accurate to ~1 ulp for x >= 2 with 200 terms.
struct mills_tails {
  double d1;
  double d2;
};

inline mills_tails mills_continued_fraction(double x) {
  constexpr int terms = 200;
  double t = x;
  double d2 = x;
  for (int k = terms; k >= 1; --k) {
    t = x + static_cast<double>(k + 1) / t;
    if (k == 2) d2 = t;
  }
  return {t, d2};
}

inline constexpr double mills_switch = 2.0;

}  // namespace detail

/// e^{x^2/2} (1 - Phi(x)) for x >= 0. Beyond x = 2 it is the Mills ratio times phi(0).
inline double scaled_normal_tail(double x) {
  if (!(x >= 0.0)) throw domain_error("scaled_normal_tail: x must be nonnegative");
  if (x < detail::mills_switch) {
    return std::exp(0.5 * x * x) * 0.5 * std::erfc(x * std::numbers::sqrt2 / 2.0);
  }
  if (std::isinf(x)) return 0.0;
  const auto tails = detail::mills_continued_fraction(x);
  return inv_sqrt_2pi * tails.d1 / (x * tails.d1 + 1.0);
}

namespace detail {

// Bernoulli terms B_{2k} / (2k (2k-1) x^{2k-1}) of Stirling's series, x >= 10.
inline double stirling_tail(double x) {
  const double z2 = 1.0 / (x * x);
  return (1.0 / 12.0 +
          z2 * (-1.0 / 360.0 +
                z2 * (1.0 / 1260.0 +
                      z2 * (-1.0 / 1680.0 + z2 * (1.0 / 1188.0 + z2 * (-691.0 / 360360.0)))))) /
         x;
}

}  // namespace detail

/// ln Gamma(x) for x > 0: upward recurrence to x >= 10, then Stirling's series.
inline double log_gamma(double x) {
  if (!(x > 0.0) || std::isnan(x)) throw domain_error("log_gamma: x must be positive");
  if (std::isinf(x)) return x;
  if (x <= 20.0 && x == std::floor(x)) {
    double factorial = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) factorial *= k;
    return std::log(factorial);
  }
  double shift = 0.0;
  if (x < 10.0) {
    double product = 1.0;
    while (x < 10.0) {
      product *= x;
      x += 1.0;
    }
    shift = std::log(product);
  }
  return (x - 0.5) * std::log(x) - x + half_log_2pi + detail::stirling_tail(x) - shift;
}

/// ln Gamma(a + 1/2) - ln Gamma(a) for a > 0, without cancellation for large a.
inline double log_gamma_half_step(double a) {
  if (!(a > 0.0) || std::isnan(a)) throw domain_error("log_gamma_half_step: a must be positive");
  if (a < 10.0) return log_gamma(a + 0.5) - log_gamma(a);
  const double x = 0.5 / a;
  return (a * std::log1p(x) - 0.5) + 0.5 * std::log(a) + detail::stirling_tail(a + 0.5) -
         detail::stirling_tail(a);
}

namespace detail {

// Regularized lower incomplete gamma P(a, x): power series below a + 1,
// Lentz continued fraction for Q(a, x) above.
inline double regularized_gamma_p(double a, double x) {
  constexpr double eps = 1e-16;
  constexpr int max_terms = 100000;
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double log_prefactor = -x + a * std::log(x) - log_gamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < max_terms; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * eps) break;
    }
    return std::min(1.0, sum * std::exp(log_prefactor));
  }
  constexpr double tiny = std::numeric_limits<double>::min() / eps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < max_terms; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < eps) break;
  }
  return std::max(0.0, 1.0 - std::exp(log_prefactor) * h);
}

}  // namespace detail

inline double chi_square_cdf(double w, unsigned dof) {
  if (dof == 0) throw domain_error("chi_square_cdf: dof must be positive");
  if (!(w >= 0.0)) throw domain_error("chi_square_cdf: w must be nonnegative");
  return detail::regularized_gamma_p(0.5 * dof, 0.5 * w);
}

/// Bisection on a sign-changing bracket. Stops when |f| <= abs_tol, the
/// bracket is narrower than abs_tol, or no representable midpoint remains.
template <class F>
double find_root(F&& f, bracket b, tolerance tol = {}) {
  b.validate();
  tol.validate();
  double lo = b.lo;
  double hi = b.hi;
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi) || std::isnan(f_lo) || std::isnan(f_hi)) {
    throw bracket_error("find_root: no sign change on [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
  }
  for (int iter = 0; iter < tol.max_iter; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    const double f_mid = f(mid);
    if (std::abs(f_mid) <= tol.abs_tol || (hi - lo) <= tol.abs_tol || mid == lo || mid == hi) {
      return mid;
    }
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  throw convergence_error("find_root: no convergence after " + std::to_string(tol.max_iter) +
                          " iterations");
}

/// Bisection followed by a Newton polish. Newton steps are accepted only while
/// they stay inside the original bracket and shrink |f|.
template <class F, class DF>
double find_root(F&& f, DF&& df, bracket b, tolerance tol = {}) {
  double x = find_root(f, b, tol);
  double fx = f(x);
  for (int i = 0; i < 8 && fx != 0.0; ++i) {
    const double slope = df(x);
    if (!(std::abs(slope) > 0.0) || !std::isfinite(slope)) break;
    const double candidate = x - fx / slope;
    if (!(candidate >= b.lo && candidate <= b.hi)) break;
    const double f_candidate = f(candidate);
    if (!(std::abs(f_candidate) < std::abs(fx))) break;
    x = candidate;
    fx = f_candidate;
  }
  return x;
}

/// Inverse of the standard normal CDF.
inline double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw domain_error("std_normal_quantile: p must lie in (0, 1)");
  if (p > 0.5) return -std_normal_quantile(1.0 - p);
  if (p == 0.5) return 0.0;
  const tolerance tol{std::min(1e-15, p * 1e-14), 400};
  return find_root([p](double z) { return std_normal_cdf(z) - p; }, std_normal_pdf,
                   bracket{-38.0, 0.0}, tol);
}

}  // namespace alphaunit
