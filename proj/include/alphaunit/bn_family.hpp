#pragma once

// Bimodal normal family BN(k): density b^{2k} phi(b) / (2k-1)!!, with
// B = V * sqrt(W), V = +-1 equiprobable and W ~ chi-square(2k + 1).

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "alphaunit/errors.hpp"
#include "alphaunit/numeric_kernels.hpp"

namespace alphaunit {

class bimodal_normal {
 public:
  explicit bimodal_normal(unsigned k) : k_(k) {
    if (k == 0) throw domain_error("bimodal_normal: order k must be at least 1");
  }
  unsigned order() const { return k_; }

 private:
  unsigned k_;
};

namespace detail {

inline void check_order(unsigned k, const char* where) {
  if (k == 0) throw domain_error(std::string(where) + ": order k must be at least 1");
}

// ln prod_{j=1}^{k} (2j - 1) = ln Gamma(k + 1/2) + k ln 2 - ln sqrt(pi)
inline double log_bn_normalizer(unsigned k) {
  return log_gamma(k + 0.5) + k * std::numbers::ln2 - 0.5 * std::log(std::numbers::pi);
}

}  // namespace detail

/// Double factorial (2k - 1)!!; exact product up to k = 50, log-space beyond.
inline double bn_normalizer(unsigned k) {
  detail::check_order(k, "bn_normalizer");
  if (k > 50) return std::exp(detail::log_bn_normalizer(k));
  double c = 1.0;
  for (unsigned j = 1; j <= k; ++j) c *= static_cast<double>(2 * j - 1);
  return c;
}

inline double bn_pdf(double b, unsigned k) {
  detail::check_order(k, "bn_pdf");
  if (b == 0.0) return 0.0;
  if (std::isinf(b)) return 0.0;
  if (k <= 50) {
    return std::pow(b * b, static_cast<double>(k)) * std_normal_pdf(b) / bn_normalizer(k);
  }
  return std::exp(2.0 * k * std::log(std::abs(b)) - 0.5 * b * b - half_log_2pi -
                  detail::log_bn_normalizer(k));
}

inline double bn_pdf(double b, const bimodal_normal& dist) { return bn_pdf(b, dist.order()); }

/// F(b) = 1/2 + F_chi2(b^2; 2k+1)/2 for b >= 0, reflected for b < 0.
inline double bn_cdf(double b, unsigned k) {
  detail::check_order(k, "bn_cdf");
  if (std::isinf(b)) return b > 0 ? 1.0 : 0.0;
  const double half_mass = 0.5 * chi_square_cdf(b * b, 2 * k + 1);
  return b >= 0.0 ? 0.5 + half_mass : 0.5 - half_mass;
}

inline double bn_cdf(double b, const bimodal_normal& dist) { return bn_cdf(b, dist.order()); }

/// Maximizers of bn_pdf: d/db [b^{2k} phi(b)] = b^{2k-1} (2k - b^2) phi(b) vanishes at +-sqrt(2k).
inline std::pair<double, double> bn_modes(unsigned k) {
  detail::check_order(k, "bn_modes");
  const double m = std::sqrt(2.0 * k);
  return {-m, m};
}

}  // namespace alphaunit
