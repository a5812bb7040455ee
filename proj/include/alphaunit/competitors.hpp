#pragma once

// Unit-interval models used as comparators for AU, fitted by maximum
// likelihood with a derivative-free search over unconstrained coordinates
// (log for positive parameters, logit for parameters in (0, 1)).
//
//   BE(mu, sigma)      beta with shapes a = mu (1-s^2)/s^2, b = (1-mu)(1-s^2)/s^2
//   KUM(mu, sigma)     Kumaraswamy with shapes mu, sigma
//   LOGITNO(mu, sigma) logit(X) ~ N(logit mu, sigma^2)
//   SIMPLEX(mu, sigma) Barndorff-Nielsen & Jorgensen simplex
//   UHN(sigma)         X/(1-X) half-normal with scale sigma
//   ULINDLEY(theta)    X/(1-X) Lindley with rate theta; mean parameter 1/(1+theta)
//   AU(alpha)

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alphaunit/alpha_unit.hpp"
#include "alphaunit/errors.hpp"
#include "alphaunit/estimation.hpp"
#include "alphaunit/numeric_kernels.hpp"
#include "alphaunit/optimize.hpp"
#include "alphaunit/unit_sample.hpp"

namespace alphaunit {

enum class unit_family { au, be, kum, logitno, simplex, uhn, ulindley };

inline constexpr std::array<unit_family, 7> all_unit_families{
    unit_family::au,      unit_family::be,  unit_family::kum,     unit_family::logitno,
    unit_family::simplex, unit_family::uhn, unit_family::ulindley};

inline std::string_view family_name(unit_family family) {
  switch (family) {
    case unit_family::au: return "AU";
    case unit_family::be: return "BE";
    case unit_family::kum: return "KUM";
    case unit_family::logitno: return "LOGITNO";
    case unit_family::simplex: return "SIMPLEX";
    case unit_family::uhn: return "UHN";
    case unit_family::ulindley: return "ULINDLEY";
  }
  return "UNKNOWN";
}

/// Case-insensitive lookup by the short family name.
inline std::optional<unit_family> parse_family(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (auto family : all_unit_families) {
    if (family_name(family) == upper) return family;
  }
  return std::nullopt;
}

struct open_interval {
  double lo;
  double hi;

  bool contains(double x) const { return lo < x && x < hi; }
};

struct unit_model_spec {
  unit_family family;
  std::vector<std::string> param_names;
  std::vector<open_interval> param_domains;

  std::size_t param_count() const { return param_names.size(); }
};

inline unit_model_spec model_spec(unit_family family) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const open_interval positive{0.0, inf};
  const open_interval unit{0.0, 1.0};
  switch (family) {
    case unit_family::au: return {family, {"alpha"}, {positive}};
    case unit_family::be: return {family, {"mu", "sigma"}, {unit, unit}};
    case unit_family::kum: return {family, {"mu", "sigma"}, {positive, positive}};
    case unit_family::logitno: return {family, {"mu", "sigma"}, {unit, positive}};
    case unit_family::simplex: return {family, {"mu", "sigma"}, {unit, positive}};
    case unit_family::uhn: return {family, {"sigma"}, {positive}};
    case unit_family::ulindley: return {family, {"theta"}, {positive}};
  }
  throw domain_error("model_spec: unknown family");
}

namespace detail {

inline void check_params(const unit_model_spec& spec, std::span<const double> params) {
  if (params.size() != spec.param_count()) {
    throw domain_error(std::string(family_name(spec.family)) + ": expected " +
                       std::to_string(spec.param_count()) + " parameter(s)");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!spec.param_domains[i].contains(params[i])) {
      throw domain_error(std::string(family_name(spec.family)) + ": parameter " +
                         spec.param_names[i] + " outside its domain");
    }
  }
}

inline double logit(double p) { return std::log(p / (1.0 - p)); }
inline double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Log density without argument validation; hot path of the fitter.
inline double unit_log_pdf_unchecked(unit_family family, std::span<const double> p, double x) {
  const double log_x = std::log(x);
  const double log_1mx = std::log1p(-x);
  switch (family) {
    case unit_family::au: {
      return au_log_pdf(x, alpha_unit_params(p[0]));
    }
    case unit_family::be: {
      const double precision = (1.0 - p[1] * p[1]) / (p[1] * p[1]);
      const double a = p[0] * precision;
      const double b = (1.0 - p[0]) * precision;
      return log_gamma(a + b) - log_gamma(a) - log_gamma(b) + (a - 1.0) * log_x +
             (b - 1.0) * log_1mx;
    }
    case unit_family::kum: {
      const double a = p[0];
      const double b = p[1];
      return std::log(a) + std::log(b) + (a - 1.0) * log_x +
             (b - 1.0) * std::log1p(-std::exp(a * log_x));
    }
    case unit_family::logitno: {
      const double z = (log_x - log_1mx - logit(p[0])) / p[1];
      return -0.5 * z * z - half_log_2pi - std::log(p[1]) - log_x - log_1mx;
    }
    case unit_family::simplex: {
      const double mu = p[0];
      const double s2 = p[1] * p[1];
      const double x1mx = x * (1.0 - x);
      const double mu1mmu = mu * (1.0 - mu);
      const double deviance = (x - mu) * (x - mu) / (x1mx * mu1mmu * mu1mmu);
      return -half_log_2pi - std::log(p[1]) - 1.5 * (log_x + log_1mx) - deviance / (2.0 * s2);
    }
    case unit_family::uhn: {
      const double y = x / (1.0 - x);
      return 0.5 * std::log(2.0 / std::numbers::pi) - std::log(p[0]) - 2.0 * log_1mx -
             y * y / (2.0 * p[0] * p[0]);
    }
    case unit_family::ulindley: {
      const double theta = p[0];
      return 2.0 * std::log(theta) - std::log1p(theta) - 3.0 * log_1mx - theta * x / (1.0 - x);
    }
  }
  return -std::numeric_limits<double>::infinity();
}

}  // namespace detail

inline double unit_log_pdf(unit_family family, std::span<const double> params, double x) {
  detail::check_params(model_spec(family), params);
  if (!(x > 0.0 && x < 1.0)) throw domain_error("unit_log_pdf: x must lie in (0, 1)");
  return detail::unit_log_pdf_unchecked(family, params, x);
}

inline double unit_pdf(unit_family family, std::span<const double> params, double x) {
  return std::exp(unit_log_pdf(family, params, x));
}

/// Mean-parameter reported for the unit-Lindley fit.
inline double ulindley_mean_parameter(double theta) { return 1.0 / (1.0 + theta); }

struct competitor_fit {
  unit_family family;
  std::vector<double> params;
  std::vector<double> se;  // empty when the observed information is not positive definite
  double loglik;
  double aic;
  double bic;
  bool converged;
  int iterations;
  bool boundary_warning;
  std::size_t n;
};

namespace detail {

inline bool is_unit_domain(const open_interval& d) { return d.lo == 0.0 && d.hi == 1.0; }

inline std::vector<double> to_natural(const unit_model_spec& spec, std::span<const double> z) {
  std::vector<double> theta(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    theta[i] = is_unit_domain(spec.param_domains[i]) ? logistic(z[i]) : std::exp(z[i]);
  }
  return theta;
}

inline std::vector<double> to_search(const unit_model_spec& spec, std::span<const double> theta) {
  std::vector<double> z(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    z[i] = is_unit_domain(spec.param_domains[i]) ? logit(theta[i]) : std::log(theta[i]);
  }
  return z;
}

inline double total_loglik(unit_family family, std::span<const double> theta,
                           std::span<const double> data) {
  double total = 0.0;
  for (double x : data) total += unit_log_pdf_unchecked(family, theta, x);
  return total;
}

inline std::vector<double> starting_point(unit_family family, std::span<const double> data) {
  const double n = static_cast<double>(data.size());
  double mean = 0.0;
  for (double x : data) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : data) var += (x - mean) * (x - mean);
  var /= n;
  auto clamp_unit = [](double v) { return std::clamp(v, 1e-3, 1.0 - 1e-3); };
  switch (family) {
    case unit_family::au: return {1.0};
    case unit_family::be: {
      const double mu = clamp_unit(mean);
      return {mu, std::clamp(std::sqrt(var / (mu * (1.0 - mu))), 0.05, 0.95)};
    }
    case unit_family::kum: return {1.0, 1.0};
    case unit_family::logitno: {
      double m = 0.0;
      for (double x : data) m += logit(x);
      m /= n;
      double s = 0.0;
      for (double x : data) s += (logit(x) - m) * (logit(x) - m);
      return {logistic(m), std::max(std::sqrt(s / n), 1e-2)};
    }
    case unit_family::simplex: return {clamp_unit(mean), 1.0};
    case unit_family::uhn: {
      double s = 0.0;
      for (double x : data) s += (x / (1.0 - x)) * (x / (1.0 - x));
      return {std::max(std::sqrt(s / n), 1e-3)};
    }
    case unit_family::ulindley: {
      double y = 0.0;
      for (double x : data) y += x / (1.0 - x);
      return {std::max(n / y, 1e-3)};
    }
  }
  return {};
}

// Standard errors from the inverse of a central-difference observed
// information matrix in the natural parameters.
inline std::vector<double> observed_information_se(unit_family family,
                                                   const unit_model_spec& spec,
                                                   std::vector<double> theta,
                                                   std::span<const double> data) {
  const std::size_t k = theta.size();
  std::vector<double> h(k);
  for (std::size_t i = 0; i < k; ++i) {
    double step = 1e-5 * std::max(std::abs(theta[i]), 1e-8);
    const auto& d = spec.param_domains[i];
    step = std::min({step, 0.5 * (theta[i] - d.lo), 0.5 * (d.hi - theta[i])});
    h[i] = step;
  }
  auto nll = [&](const std::vector<double>& t) { return -total_loglik(family, t, data); };
  auto shifted = [&](int si, std::size_t i, int sj, std::size_t j) {
    auto t = theta;
    t[i] += si * h[i];
    t[j] += sj * h[j];
    return nll(t);
  };
  const double center = nll(theta);
  std::vector<double> hess(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    auto plus = theta;
    auto minus = theta;
    plus[i] += h[i];
    minus[i] -= h[i];
    hess[i * k + i] = (nll(plus) - 2.0 * center + nll(minus)) / (h[i] * h[i]);
    for (std::size_t j = i + 1; j < k; ++j) {
      const double v = (shifted(1, i, 1, j) - shifted(1, i, -1, j) - shifted(-1, i, 1, j) +
                        shifted(-1, i, -1, j)) /
                       (4.0 * h[i] * h[j]);
      hess[i * k + j] = v;
      hess[j * k + i] = v;
    }
  }
  if (k == 1) {
    if (!(hess[0] > 0.0) || !std::isfinite(hess[0])) return {};
    return {1.0 / std::sqrt(hess[0])};
  }
  const double det = hess[0] * hess[3] - hess[1] * hess[2];
  if (!(hess[0] > 0.0) || !(det > 0.0) || !std::isfinite(det)) return {};
  return {std::sqrt(hess[3] / det), std::sqrt(hess[0] / det)};
}

}  // namespace detail

/// Maximum-likelihood fit of one family. Requires every observation strictly
/// inside (0, 1). Non-convergence is reported through `converged`.
inline competitor_fit fit_model(unit_family family, const unit_sample& data) {
  if (data.empty()) throw domain_error("fit_model: sample is empty");
  if (data.has_upper_boundary()) {
    throw boundary_likelihood_error(
        "fit_model: observations equal to 1 have zero density under the unit models; apply the "
        "boundary squeeze (--squeeze) first");
  }
  const auto spec = model_spec(family);
  const auto values = data.values();
  auto objective = [&](const std::vector<double>& z) {
    const auto theta = detail::to_natural(spec, z);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      if (!spec.param_domains[i].contains(theta[i])) return std::numeric_limits<double>::infinity();
    }
    return -detail::total_loglik(family, theta, values);
  };

  auto z = detail::to_search(spec, detail::starting_point(family, values));
  nelder_mead_options options;
  minimize_result best = nelder_mead(objective, z, options);
  int iterations = best.iterations;
  bool converged = best.converged;
  // Restart from the incumbent until a fresh simplex stops improving it.
  for (int restart = 0; restart < 8; ++restart) {
    options.initial_step = 0.1;
    const auto again = nelder_mead(objective, best.x, options);
    iterations += again.iterations;
    const double improvement = best.value - again.value;
    const bool stalled = improvement <= options.f_rel_tol * std::max(1.0, std::abs(best.value));
    if (again.value <= best.value) best = again;
    converged = again.converged;
    if (stalled) break;
  }

  const auto theta = detail::to_natural(spec, best.x);
  bool boundary = false;
  for (double zi : best.x) boundary = boundary || std::abs(zi) > 15.0;
  const double loglik = -best.value;
  const std::size_t p = spec.param_count();
  return {family,
          theta,
          detail::observed_information_se(family, spec, theta, values),
          loglik,
          aic(loglik, p),
          bic(loglik, p, data.size()),
          converged && std::isfinite(loglik),
          iterations,
          boundary,
          data.size()};
}

/// Ascending AIC, then BIC, then family name.
inline void rank_fits(std::vector<competitor_fit>& fits) {
  std::stable_sort(fits.begin(), fits.end(), [](const competitor_fit& a, const competitor_fit& b) {
    if (a.aic != b.aic) return a.aic < b.aic;
    if (a.bic != b.bic) return a.bic < b.bic;
    return family_name(a.family) < family_name(b.family);
  });
}

inline std::vector<competitor_fit> compare_models(const unit_sample& data,
                                                  std::span<const unit_family> families) {
  if (families.empty()) throw domain_error("compare_models: no families requested");
  std::vector<competitor_fit> fits;
  fits.reserve(families.size());
  for (auto family : families) fits.push_back(fit_model(family, data));
  rank_fits(fits);
  return fits;
}

}  // namespace alphaunit
