#pragma once

// Alpha-Unit distribution AU(alpha): X = exp(-alpha |B|) with B ~ BN(1).
//
//   f(x) = 2/(x alpha) u^2 phi(u),     u = ln(x)/alpha,   0 < x <= 1
//   F(x) = 2 Phi(u) - 2 u phi(u)
//
// Most quantities are evaluated in u-space, where F reduces to a standard
// normal integral of u^2 phi(u).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "alphaunit/errors.hpp"
#include "alphaunit/numeric_kernels.hpp"

namespace alphaunit {

class alpha_unit_params {
 public:
  explicit alpha_unit_params(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw domain_error("alpha_unit_params: alpha must be positive and finite");
    }
  }
  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

struct hdi_interval {
  double lower;
  double upper;
  double mass;

  double width() const { return upper - lower; }
};

namespace detail {

inline void check_unit_support(double x, const char* where) {
  if (!(x > 0.0 && x <= 1.0)) {
    throw domain_error(std::string(where) + ": x must lie in (0, 1]");
  }
}

// Phi(u) - u phi(u) = integral_{-inf}^{u} t^2 phi(t) dt, i.e. F/2 in u-space.
inline double half_cdf_u(double u) { return std_normal_cdf(u) - u * std_normal_pdf(u); }

// E|B|^j for B ~ BN(1), i.e. E[W^{j/2}] with W ~ chi-square(3).
inline double abs_bn1_moment(int j) {
  return std::exp(0.5 * j * std::numbers::ln2 + log_gamma(0.5 * (3 + j)) - log_gamma(1.5));
}

}  // namespace detail

inline double au_pdf(double x, const alpha_unit_params& params) {
  detail::check_unit_support(x, "au_pdf");
  const double alpha = params.alpha();
  const double u = std::log(x) / alpha;
  return 2.0 / alpha * u * u * std_normal_pdf(u) / x;
}

/// Exponential-family form c(alpha) T(x) + d(alpha) + S(x) with
/// c = -1/(2 alpha^2), T = (ln x)^2, d = -3 ln alpha, S = ln(2 (ln x)^2 / (x sqrt(2 pi))).
inline double au_log_pdf(double x, const alpha_unit_params& params) {
  if (!(x > 0.0 && x < 1.0)) throw domain_error("au_log_pdf: x must lie in (0, 1)");
  const double alpha = params.alpha();
  const double log_x = std::log(x);
  const double t = log_x * log_x;
  const double c = -0.5 / (alpha * alpha);
  const double d = -3.0 * std::log(alpha);
  const double s = std::numbers::ln2 + 2.0 * std::log(-log_x) - log_x - half_log_2pi;
  return c * t + d + s;
}

inline double au_cdf(double x, const alpha_unit_params& params) {
  detail::check_unit_support(x, "au_cdf");
  if (x == 1.0) return 1.0;
  const double u = std::log(x) / params.alpha();
  return std::clamp(2.0 * detail::half_cdf_u(u), 0.0, 1.0);
}

/// Solves ln(Phi(u) - u phi(u)) = ln(p/2) for u in [-40, 0] and returns exp(alpha u).
/// The left side is increasing in u.
inline double au_quantile(double p, const alpha_unit_params& params) {
  if (!(p > 0.0 && p <= 1.0)) throw domain_error("au_quantile: p must lie in (0, 1]");
  if (p == 1.0) return 1.0;
  const double log_target = std::log(0.5 * p);
  const double u = find_root(
      [log_target](double v) { return std::log(detail::half_cdf_u(v)) - log_target; },
      [](double v) { return v * v * std_normal_pdf(v) / detail::half_cdf_u(v); },
      bracket{-40.0, 0.0}, tolerance{1e-15, 400});
  return std::max(std::exp(params.alpha() * u), std::numeric_limits<double>::denorm_min());
}

/// E[X^r] = 2 e^{s^2/2} [(1 + s^2)(1 - Phi(s)) - s phi(s)], s = r alpha.
///
/// Small s uses the scaled tail directly. For s >= 2 the bracket is
/// (1 + s^2) R(s) - s = 2 / (D2 (s D1 + 1)) with R the Mills ratio.
inline double au_moment(double r, const alpha_unit_params& params) {
  if (!(r >= 0.0)) throw domain_error("au_moment: r must be nonnegative");
  const double s = r * params.alpha();
  if (std::isinf(s)) return 0.0;
  double m;
  if (s < detail::mills_switch) {
    m = 2.0 * (1.0 + s * s) * scaled_normal_tail(s) - 2.0 * s * inv_sqrt_2pi;
  } else {
    const auto tails = detail::mills_continued_fraction(s);
    m = 2.0 * inv_sqrt_2pi * 2.0 / (tails.d2 * (s * tails.d1 + 1.0));
  }
  return std::min(m, 1.0);
}

inline double au_mean(const alpha_unit_params& params) { return au_moment(1.0, params); }

/// Var X = E[X^2] - E[X]^2. Below alpha = 0.05 it is summed from the series
/// of E[(1-X)] and E[(1-X)^2] in powers of alpha.
inline double au_variance(const alpha_unit_params& params) {
  const double alpha = params.alpha();
  if (alpha >= 0.05) {
    const double mean = au_mean(params);
    return au_moment(2.0, params) - mean * mean;
  }
  double first = 0.0;   // E[1 - X]
  double second = 0.0;  // E[(1 - X)^2]
  double scale = 1.0;   // alpha^j / j!
  for (int j = 1; j <= 40; ++j) {
    scale *= alpha / j;
    const double term = scale * detail::abs_bn1_moment(j);
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    first += sign * term;
    if (j >= 2) second -= sign * term * (std::ldexp(1.0, j) - 2.0);
    if (term < 1e-300) break;
  }
  return second - first * first;
}

/// Interior maximizer exp(-(alpha^2 + sqrt(alpha^4 + 8 alpha^2)) / 2). With
/// t = -ln x > 0 the stationarity condition of ln f is t^2 + alpha^2 t - 2 alpha^2 = 0;
/// the other root gives x > 1, outside the support.
inline double au_mode(const alpha_unit_params& params) {
  const double a2 = params.alpha() * params.alpha();
  return std::exp(-0.5 * (a2 + std::sqrt(a2 * a2 + 8.0 * a2)));
}

/// Moment series sum_k t^k/k! E[X^k], truncated once |t|^{K+1}/(K+1)! < abs_tol
/// (valid since 0 < E[X^k] <= 1).
inline double au_mgf(double t, const alpha_unit_params& params, tolerance tol = {}) {
  tol.validate();
  if (!std::isfinite(t)) throw domain_error("au_mgf: t must be finite");
  double sum = 0.0;
  double coefficient = 1.0;  // t^k / k!
  double bound = 1.0;        // |t|^k / k!
  for (int k = 0;; ++k) {
    sum += coefficient * au_moment(k, params);
    coefficient *= t / (k + 1);
    bound *= std::abs(t) / (k + 1);
    if (bound < tol.abs_tol) break;
    if (k > 100000) throw convergence_error("au_mgf: series did not reach tolerance");
  }
  return sum;
}

/// Shortest interval with the given probability mass. The search variable is
/// v = ln q for the lower-tail probability q in (0, 1 - mass]; the interval is
/// [Q(q), Q(q + mass)] so the mass constraint holds at every iterate, and q is
/// chosen so that both endpoints carry equal log density.
inline hdi_interval au_hdi(double mass, const alpha_unit_params& params) {
  if (!(mass > 0.0 && mass < 1.0)) throw domain_error("au_hdi: mass must lie in (0, 1)");
  auto log_density_at = [&params](double p) {
    return std::log(au_pdf(au_quantile(std::min(p, 1.0), params), params));
  };
  auto gap = [&](double v) {
    const double q = std::exp(v);
    return log_density_at(q) - log_density_at(q + mass);
  };
  const double v = find_root(gap, bracket{std::log(1e-300), std::log1p(-mass)}, tolerance{1e-15, 400});
  const double q = std::exp(v);
  const double lower = au_quantile(q, params);
  const double upper = au_quantile(std::min(q + mass, 1.0), params);
  return {lower, upper, mass};
}

}  // namespace alphaunit
