#pragma once

// Control charts for AU-distributed quality characteristics.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alphaunit/alpha_unit.hpp"
#include "alphaunit/errors.hpp"

namespace alphaunit {

enum class limit_method { equal_tailed, hdi };

inline std::string_view to_string(limit_method m) {
  return m == limit_method::hdi ? "hdi" : "equal_tailed";
}

struct chart_spec {
  double alpha;
  double false_alarm;  // probability of signalling while in control
  limit_method method = limit_method::hdi;

  void validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw domain_error("chart_spec: alpha must be positive and finite");
    }
    if (!(false_alarm > 0.0 && false_alarm < 1.0)) {
      throw domain_error("chart_spec: false_alarm must lie in (0, 1)");
    }
  }
};

struct chart_limits {
  double lcl;
  double cl;
  double ucl;
  limit_method method;
};

struct chart_evaluation {
  std::vector<std::size_t> alarm_indices;  // 1-based positions in the series
  std::size_t alarm_count = 0;
  double alarm_rate = 0.0;
  std::size_t n = 0;
};

/// Equal-tailed: LCL = Q(pi/2), UCL = Q(1 - pi/2). HDI: the shortest interval
/// of mass 1 - pi. The centre line is E[X] in both cases.
inline chart_limits control_limits(const chart_spec& spec) {
  spec.validate();
  const alpha_unit_params params(spec.alpha);
  const double cl = au_mean(params);
  if (spec.method == limit_method::hdi) {
    const auto hdi = au_hdi(1.0 - spec.false_alarm, params);
    return {hdi.lower, cl, hdi.upper, spec.method};
  }
  const double half = 0.5 * spec.false_alarm;
  return {au_quantile(half, params), cl, au_quantile(1.0 - half, params), spec.method};
}

/// Flags values strictly below LCL or strictly above UCL.
inline chart_evaluation evaluate_series(std::span<const double> series,
                                        const chart_limits& limits) {
  chart_evaluation out;
  out.n = series.size();
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double x = series[i];
    if (!(x > 0.0 && x <= 1.0)) {
      throw domain_error("evaluate_series: value at position " + std::to_string(i + 1) +
                         " is outside (0, 1]");
    }
    if (x < limits.lcl || x > limits.ucl) out.alarm_indices.push_back(i + 1);
  }
  out.alarm_count = out.alarm_indices.size();
  out.alarm_rate = out.n == 0 ? 0.0 : static_cast<double>(out.alarm_count) / out.n;
  return out;
}

}  // namespace alphaunit
