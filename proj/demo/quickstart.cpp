// Draws an AU sample, fits it, compares competitor models and builds a control chart.

#include <cstdio>

#include "alphaunit/alphaunit.hpp"

int main() {
  using namespace alphaunit;

  const alpha_unit_params truth(0.35);
  std::printf("AU(%.2f): mean %.6f  variance %.6f  mode %.6f\n", truth.alpha(), au_mean(truth),
              au_variance(truth), au_mode(truth));

  random_stream stream(20240601, 0);
  const unit_sample data(sample_au(truth, stream, 250).values);

  for (auto method : {estimator::mle, estimator::umvue}) {
    const auto fit = fit_alpha_unit(data, method, 0.95);
    std::printf("%-5s alpha=%.5f  se=%.5f  delta CI [%.5f, %.5f]\n",
                std::string(to_string(method)).c_str(), fit.alpha_hat, fit.se, fit.ci_delta.lo,
                fit.ci_delta.hi);
  }

  std::printf("\nmodel      AIC\n");
  for (const auto& row : compare_models(data, all_unit_families)) {
    std::printf("%-9s %10.3f%s\n", std::string(family_name(row.family)).c_str(), row.aic,
                row.converged ? "" : "  (not converged)");
  }

  const auto limits = control_limits({mle_alpha(data), 0.01, limit_method::hdi});
  const auto chart = evaluate_series(data.values(), limits);
  std::printf("\nLCL %.4f  CL %.4f  UCL %.4f  alarms %zu/%zu\n", limits.lcl, limits.cl, limits.ucl,
              chart.alarm_count, chart.n);
}
