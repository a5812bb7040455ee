#pragma once

// Monte Carlo study of the MLE and UMVUE of alpha over an (alpha, n) grid.
// Repetition r of cell c draws from random_stream(master_seed, (c << 32) | r).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "alphaunit/errors.hpp"
#include "alphaunit/estimation.hpp"
#include "alphaunit/sampling.hpp"

namespace alphaunit {

struct sim_config {
  std::vector<double> alphas{0.1, 0.3, 0.5, 0.7, 1.1, 1.5};
  std::vector<std::size_t> ns{100, 200, 500};
  std::size_t repetitions = 1000;
  double conf_level = 0.95;
  std::uint64_t master_seed = 20240601;
  unsigned threads = 0;  // 0 picks std::thread::hardware_concurrency()

  void validate() const {
    if (alphas.empty() || ns.empty()) throw domain_error("sim_config: empty alpha or n grid");
    for (double a : alphas) {
      if (!(a > 0.0) || !std::isfinite(a)) throw domain_error("sim_config: alphas must be positive");
    }
    for (auto n : ns) {
      if (n == 0) throw domain_error("sim_config: sample sizes must be positive");
    }
    if (repetitions < 2) throw domain_error("sim_config: repetitions must be at least 2");
    if (!(conf_level > 0.0 && conf_level < 1.0)) {
      throw domain_error("sim_config: conf_level must lie in (0, 1)");
    }
  }

  std::size_t cell_count() const { return alphas.size() * ns.size(); }
};

struct sim_cell_result {
  double alpha;
  std::size_t n;
  estimator method;
  double avg_estimate;
  double bias;
  double mse;
  std::optional<double> ci_length;  // MLE only
};

struct estimate_summary {
  double avg_estimate;
  double bias;
  double mse;
};

inline estimate_summary summarize_estimates(double alpha, std::span<const double> estimates) {
  if (estimates.empty()) throw domain_error("summarize_estimates: no estimates");
  double avg = 0.0;
  double mse = 0.0;
  double count = 0.0;
  for (double e : estimates) {
    count += 1.0;
    avg += (e - avg) / count;
    mse += ((e - alpha) * (e - alpha) - mse) / count;
  }
  return {avg, avg - alpha, mse};
}

/// Interquartile range with quartiles interpolated linearly between order
/// statistics (Hyndman-Fan type 7).
inline double interquartile_range(std::vector<double> values) {
  if (values.empty()) throw domain_error("interquartile_range: no values");
  std::sort(values.begin(), values.end());
  auto quantile = [&values](double p) {
    const double h = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  return quantile(0.75) - quantile(0.25);
}

/// Raw per-repetition estimates of one cell.
struct cell_draws {
  double alpha;
  std::size_t n;
  std::vector<double> mle;
  std::vector<double> umvue;
};

inline random_stream repetition_stream(std::uint64_t master_seed, std::size_t cell_index,
                                       std::size_t repetition) {
  return random_stream(master_seed, (static_cast<std::uint64_t>(cell_index) << 32) |
                                        static_cast<std::uint64_t>(repetition));
}

/// Runs one cell with a caller-supplied estimator of type double(const sufficient_stat&).
template <class Estimator>
std::vector<double> simulate_cell(double alpha, std::size_t n, std::size_t repetitions,
                                  std::uint64_t master_seed, std::size_t cell_index,
                                  Estimator&& estimate) {
  std::vector<double> out(repetitions);
  for (std::size_t r = 0; r < repetitions; ++r) {
    auto stream = repetition_stream(master_seed, cell_index, r);
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double log_x = std::log(draw_au(alpha, stream));
      t += log_x * log_x;
    }
    out[r] = estimate(sufficient_stat{t, n});
  }
  return out;
}

/// All cells in alpha-major order (cell index = alpha_index * ns.size() + n_index).
inline std::vector<cell_draws> simulate_all_cells(const sim_config& config) {
  config.validate();
  const std::size_t cells = config.cell_count();
  std::vector<cell_draws> draws(cells);
  auto run_cell = [&config, &draws](std::size_t c) {
    const double alpha = config.alphas[c / config.ns.size()];
    const std::size_t n = config.ns[c % config.ns.size()];
    auto t_values = simulate_cell(alpha, n, config.repetitions, config.master_seed, c,
                                  [](const sufficient_stat& s) { return s.t_value; });
    cell_draws d{alpha, n, {}, {}};
    d.mle.reserve(t_values.size());
    d.umvue.reserve(t_values.size());
    for (double t : t_values) {
      const sufficient_stat stat{t, n};
      d.mle.push_back(mle_alpha(stat));
      d.umvue.push_back(umvue_alpha(stat));
    }
    draws[c] = std::move(d);
  };
  unsigned workers = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(cells));
  if (workers == 1) {
    for (std::size_t c = 0; c < cells; ++c) run_cell(c);
    return draws;
  }
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < cells; c += workers) run_cell(c);
      });
    }
  }
  return draws;
}

/// Bias, MSE and (for the MLE) the delta-method CI length, taken as the mean
/// upper limit minus the mean lower limit over the repetitions.
inline std::vector<sim_cell_result> summarize_cells(const sim_config& config,
                                                    const std::vector<cell_draws>& draws) {
  std::vector<sim_cell_result> results;
  results.reserve(2 * draws.size());
  for (const auto& d : draws) {
    const auto mle = summarize_estimates(d.alpha, d.mle);
    double upper_sum = 0.0;
    double lower_sum = 0.0;
    for (double a : d.mle) {
      const auto ci = delta_ci(a, d.n, config.conf_level);
      lower_sum += ci.lo;
      upper_sum += ci.hi;
    }
    const double reps = static_cast<double>(d.mle.size());
    results.push_back({d.alpha, d.n, estimator::mle, mle.avg_estimate, mle.bias, mle.mse,
                       upper_sum / reps - lower_sum / reps});
    const auto umvue = summarize_estimates(d.alpha, d.umvue);
    results.push_back({d.alpha, d.n, estimator::umvue, umvue.avg_estimate, umvue.bias, umvue.mse,
                       std::nullopt});
  }
  return results;
}

/// For each n, IQR of the pooled differences (MLE - UMVUE) across every alpha.
inline std::vector<std::pair<std::size_t, double>> iqr_by_sample_size(
    const sim_config& config, const std::vector<cell_draws>& draws) {
  std::vector<std::pair<std::size_t, double>> out;
  for (auto n : config.ns) {
    std::vector<double> diffs;
    for (const auto& d : draws) {
      if (d.n != n) continue;
      for (std::size_t r = 0; r < d.mle.size(); ++r) diffs.push_back(d.mle[r] - d.umvue[r]);
    }
    out.emplace_back(n, interquartile_range(std::move(diffs)));
  }
  return out;
}

inline std::vector<sim_cell_result> run_monte_carlo(const sim_config& config) {
  return summarize_cells(config, simulate_all_cells(config));
}

inline std::vector<std::pair<std::size_t, double>> iqr_of_estimator_differences(
    const sim_config& config) {
  return iqr_by_sample_size(config, simulate_all_cells(config));
}

struct monte_carlo_report {
  std::vector<sim_cell_result> cells;
  std::vector<std::pair<std::size_t, double>> iqr_by_n;
};

/// Cell summaries and the IQR summary from a single pass over the draws.
inline monte_carlo_report run_study(const sim_config& config) {
  const auto draws = simulate_all_cells(config);
  return {summarize_cells(config, draws), iqr_by_sample_size(config, draws)};
}

}  // namespace alphaunit
