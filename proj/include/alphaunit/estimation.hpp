#pragma once

// Inference for the AU scale parameter. Everything is driven by the complete
// sufficient statistic T = sum (ln x_i)^2, with T / alpha^2 ~ chi-square(3n).

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>

#include "alphaunit/alpha_unit.hpp"
#include "alphaunit/errors.hpp"
#include "alphaunit/numeric_kernels.hpp"
#include "alphaunit/unit_sample.hpp"

namespace alphaunit {

struct sufficient_stat {
  double t_value;
  std::size_t n;
};

enum class estimator { mle, umvue };

inline std::string_view to_string(estimator e) { return e == estimator::mle ? "MLE" : "UMVUE"; }

struct interval {
  double lo;
  double hi;

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

struct fit_result {
  double alpha_hat;
  estimator method;
  double se;
  interval ci_wald;
  interval ci_delta;
  double conf_level;
  double loglik;
  double aic;
  double bic;
  std::size_t n;
};

namespace detail {

inline void check_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw domain_error(std::string(what) + " must be positive and finite");
  }
}

inline void check_conf_level(double conf_level) {
  if (!(conf_level > 0.0 && conf_level < 1.0)) {
    throw domain_error("conf_level must lie in (0, 1)");
  }
}

inline void check_informative(const sufficient_stat& stat) {
  if (!(stat.t_value > 0.0)) {
    throw degenerate_sample_error(
        "sample is degenerate: every observation equals 1, so sum (ln x)^2 = 0");
  }
}

// z_{1 - pi/2} with pi = 1 - conf_level.
inline double two_sided_z(double conf_level) {
  check_conf_level(conf_level);
  return std_normal_quantile(0.5 + 0.5 * conf_level);
}

}  // namespace detail

inline sufficient_stat sufficient_statistic(const unit_sample& data) {
  if (data.empty()) throw domain_error("sufficient_statistic: sample is empty");
  double t = 0.0;
  for (double x : data.values()) {
    const double log_x = std::log(x);
    t += log_x * log_x;
  }
  return {t, data.size()};
}

/// Closed-form maximizer sqrt(T / (3n)).
inline double mle_alpha(const sufficient_stat& stat) {
  detail::check_informative(stat);
  return std::sqrt(stat.t_value / (3.0 * static_cast<double>(stat.n)));
}

inline double mle_alpha(const unit_sample& data) { return mle_alpha(sufficient_statistic(data)); }

/// Gamma(3n/2) / (sqrt(2) Gamma((3n+1)/2)), i.e. 1 / E[sqrt(chi-square(3n))].
inline double umvue_constant(std::size_t n) {
  if (n == 0) throw domain_error("umvue_constant: n must be at least 1");
  const double half_dof = 1.5 * static_cast<double>(n);
  return std::exp(-log_gamma_half_step(half_dof) - 0.5 * std::numbers::ln2);
}

/// Unbiased estimator based on the complete sufficient statistic.
inline double umvue_alpha(const sufficient_stat& stat) {
  detail::check_informative(stat);
  return umvue_constant(stat.n) * std::sqrt(stat.t_value);
}

inline double umvue_alpha(const unit_sample& data) {
  return umvue_alpha(sufficient_statistic(data));
}

inline double fisher_information(double alpha, std::size_t n) {
  detail::check_positive(alpha, "fisher_information: alpha");
  if (n == 0) throw domain_error("fisher_information: n must be at least 1");
  return 6.0 * static_cast<double>(n) / (alpha * alpha);
}

/// alpha_hat / sqrt(6n): square root of the inverse Fisher information.
inline double standard_error(double alpha_hat, std::size_t n) {
  return 1.0 / std::sqrt(fisher_information(alpha_hat, n));
}

/// Symmetric normal-approximation interval; the lower end may be negative.
inline interval wald_ci(double alpha_hat, std::size_t n, double conf_level) {
  const double half_width = detail::two_sided_z(conf_level) * standard_error(alpha_hat, n);
  return {alpha_hat - half_width, alpha_hat + half_width};
}

/// Interval for ln(alpha) mapped back: [alpha_hat e^{-z/sqrt(6n)}, alpha_hat e^{z/sqrt(6n)}].
inline interval delta_ci(double alpha_hat, std::size_t n, double conf_level) {
  detail::check_positive(alpha_hat, "delta_ci: alpha_hat");
  if (n == 0) throw domain_error("delta_ci: n must be at least 1");
  const double spread = detail::two_sided_z(conf_level) / std::sqrt(6.0 * static_cast<double>(n));
  return {alpha_hat * std::exp(-spread), alpha_hat * std::exp(spread)};
}

inline double log_likelihood(const unit_sample& data, double alpha) {
  const alpha_unit_params params(alpha);
  double total = 0.0;
  std::size_t position = 0;
  for (double x : data.values()) {
    ++position;
    if (x == 1.0) {
      throw boundary_likelihood_error(
          "log_likelihood: observation " + std::to_string(position) +
          " equals 1 where the density is zero; apply the boundary squeeze (--squeeze) first");
    }
    total += au_log_pdf(x, params);
  }
  return total;
}

/// T / alpha^2, distributed chi-square(3n) when the data are AU(alpha).
inline double pivot_wn(const unit_sample& data, double alpha_true) {
  detail::check_positive(alpha_true, "pivot_wn: alpha_true");
  return sufficient_statistic(data).t_value / (alpha_true * alpha_true);
}

inline double aic(double loglik, std::size_t param_count) {
  return 2.0 * static_cast<double>(param_count) - 2.0 * loglik;
}

inline double bic(double loglik, std::size_t param_count, std::size_t n) {
  return static_cast<double>(param_count) * std::log(static_cast<double>(n)) - 2.0 * loglik;
}

/// Point estimate, both interval types, and information criteria for the AU model.
inline fit_result fit_alpha_unit(const unit_sample& data, estimator method = estimator::mle,
                                 double conf_level = 0.95) {
  detail::check_conf_level(conf_level);
  const auto stat = sufficient_statistic(data);
  const double alpha_hat = method == estimator::mle ? mle_alpha(stat) : umvue_alpha(stat);
  const double loglik = log_likelihood(data, alpha_hat);
  return {alpha_hat,
          method,
          standard_error(alpha_hat, stat.n),
          wald_ci(alpha_hat, stat.n, conf_level),
          delta_ci(alpha_hat, stat.n, conf_level),
          conf_level,
          loglik,
          aic(loglik, 1),
          bic(loglik, 1, stat.n),
          stat.n};
}

}  // namespace alphaunit
