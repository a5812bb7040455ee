// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "alphaunit/alphaunit.hpp"
#include "oracles.hpp"

using namespace alphaunit;

namespace {

struct outcome {
  bool pass;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

constexpr std::uint64_t seed = 20240601;

// 1. HDI limits for alpha = 0.1092 at mass 0.99.
outcome hdi_limits() {
  const auto start = std::chrono::steady_clock::now();
  const alpha_unit_params p(0.1092);
  const auto h = au_hdi(0.99, p);
  const double elapsed = seconds_since(start);
  const double mass = oracle::au_cdf(h.upper, 0.1092) - oracle::au_cdf(h.lower, 0.1092);
  const double f_lo = oracle::au_pdf(h.lower, 0.1092);
  const double f_hi = oracle::au_pdf(h.upper, 0.1092);
  const double density_gap = std::abs(f_lo - f_hi) / f_lo;
  const bool pass = std::abs(h.lower - 0.6856) <= 0.002 && std::abs(h.upper - 0.9773) <= 0.002 &&
                    std::abs(mass - 0.99) <= 1e-9 && density_gap <= 1e-6 && elapsed < 1.0;
  return {pass, format("lcl=%.6f ucl=%.6f mass-0.99=%.1e density rel gap=%.1e time=%.3fs", h.lower,
                       h.upper, mass - 0.99, density_gap, elapsed)};
}

// 2. Mean at alpha = 1.205943.
outcome mean_anchor() {
  const double m = au_moment(1.0, alpha_unit_params(1.205943));
  return {std::abs(m - 0.1948) <= 1e-3, format("E[X]=%.10f target 0.1948 +- 1e-3", m)};
}

// 3. Variance of the MLE at alpha = 1.205943, n = 30.
outcome variance_anchor() {
  const double v = 1.0 / fisher_information(1.205943, 30);
  return {std::abs(v - 0.008079) <= 1e-6, format("alpha^2/(6n)=%.9f target 0.008079 +- 1e-6", v)};
}

// Table-style study shared by criteria 4 and 5.
struct study {
  sim_config config;
  monte_carlo_report report;
  double seconds;
};

const study& table_study() {
  static const study s = [] {
    sim_config c;
    c.repetitions = 1000;
    c.master_seed = seed;
    const auto start = std::chrono::steady_clock::now();
    auto r = run_study(c);
    return study{c, std::move(r), seconds_since(start)};
  }();
  return s;
}

// 4. Monte Carlo table: estimates, MSE, delta-CI lengths.
outcome monte_carlo_table() {
  const auto& s = table_study();
  // Reference CI lengths, rows alpha in {0.1, 0.3, 0.5, 0.7, 1.1, 1.5}, columns n in {100, 200, 500}.
  const double reference[6][3] = {{0.0160, 0.0113, 0.0071}, {0.0480, 0.0339, 0.0214},
                                  {0.0800, 0.0565, 0.0357}, {0.1120, 0.0791, 0.0501},
                                  {0.1760, 0.1244, 0.0787}, {0.2400, 0.1696, 0.1073}};
  const double z = std_normal_quantile(0.5 + 0.5 * s.config.conf_level);
  double worst_bias = 0.0, worst_mse = 0.0, worst_closed = 0.0, worst_ref = 0.0;
  std::size_t cell = 0;
  for (std::size_t ai = 0; ai < s.config.alphas.size(); ++ai) {
    for (std::size_t ni = 0; ni < s.config.ns.size(); ++ni, ++cell) {
      const auto& mle = s.report.cells[2 * cell];
      const auto& umvue = s.report.cells[2 * cell + 1];
      const double a = mle.alpha;
      const double n = static_cast<double>(mle.n);
      worst_bias = std::max({worst_bias, std::abs(mle.avg_estimate - a), std::abs(umvue.avg_estimate - a)});
      worst_mse = std::max(worst_mse, std::abs(mle.mse / (a * a / (6 * n)) - 1.0));
      const double k = z / std::sqrt(6 * n);
      const double closed = mle.avg_estimate * (std::exp(k) - std::exp(-k));
      worst_closed = std::max(worst_closed, std::abs(*mle.ci_length - closed));
      worst_ref = std::max(worst_ref, std::abs(*mle.ci_length / reference[ai][ni] - 1.0));
    }
  }
  const bool pass = worst_bias <= 0.01 && worst_mse <= 0.15 && worst_closed <= 1e-6 &&
                    worst_ref <= 0.05 && s.seconds < 120.0;
  return {pass, format("max|avg-alpha|=%.2e max MSE rel dev=%.3f max CI closed-form diff=%.1e "
                       "max CI rel dev vs table=%.3f time=%.2fs",
                       worst_bias, worst_mse, worst_closed, worst_ref, s.seconds)};
}

// 5. IQR of MLE - UMVUE differences per n.
outcome iqr_summary() {
  const auto& s = table_study();
  const double reference[3] = {0.00053, 0.00025, 0.00012};
  const auto& iqr = s.report.iqr_by_n;
  bool pass = iqr.size() == 3;
  for (std::size_t i = 0; pass && i < 3; ++i) {
    const double ratio = iqr[i].second / reference[i];
    pass = ratio >= 0.5 && ratio <= 2.0;
    if (i > 0) pass = pass && iqr[i].second < iqr[i - 1].second;
  }
  return {pass, format("IQR n=100: %.6f n=200: %.6f n=500: %.6f (reference 0.00053/0.00025/0.00012)",
                       iqr[0].second, iqr[1].second, iqr[2].second)};
}

// 6. Moment closed form against quadrature, and large-order stability.
outcome moment_oracle() {
  double worst = 0.0;
  for (double a : {0.1, 0.5, 1.0, 2.0}) {
    for (int r = 1; r <= 8; ++r) {
      const double ref = oracle::au_moment_quadrature(r, a);
      worst = std::max(worst, std::abs(au_moment(r, alpha_unit_params(a)) / ref - 1.0));
    }
  }
  bool finite = true;
  for (double a : {0.1, 0.5, 1.0, 2.0}) {
    for (double s = 0.5; s <= 1000.0; s += 0.5) {
      const double m = au_moment(s / a, alpha_unit_params(a));
      finite = finite && std::isfinite(m) && m > 0.0 && m <= 1.0;
    }
  }
  return {worst <= 1e-8 && finite,
          format("max rel err=%.2e; finite and in (0,1] up to r*alpha=1000: %s", worst,
                 finite ? "yes" : "no")};
}

// 7. Sampling pipeline KS checks and the chi-square(3n) pivot.
outcome distributional_pipeline() {
  const std::size_t n = 100000;
  const double crit = oracle::ks_critical_5pct(n);
  random_stream s1(seed, 1);
  const auto chi = sample_chi2_3(s1, n);
  const double d_chi = oracle::ks_statistic(chi.values, [](double w) { return chi_square_cdf(w, 3); });
  random_stream s2(seed, 2);
  const auto bn = sample_bn1(s2, n);
  const double d_bn = oracle::ks_statistic(bn.values, [](double b) { return bn_cdf(b, 1); });
  std::vector<double> squares;
  for (double b : bn.values) squares.push_back(b * b);
  const double d_sq = oracle::ks_statistic(squares, [](double w) { return chi_square_cdf(w, 3); });
  random_stream s3(seed, 3);
  const auto au = sample_au(alpha_unit_params(0.5), s3, n);
  const double d_au = oracle::ks_statistic(au.values, [](double x) { return au_cdf(x, alpha_unit_params(0.5)); });

  const std::size_t reps = 2000;
  std::vector<double> pivots(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    random_stream s(seed, 1000 + r);
    pivots[r] = pivot_wn(unit_sample(sample_au(alpha_unit_params(0.5), s, 20).values), 0.5);
  }
  const double mean = oracle::mean(pivots);
  const double var = oracle::variance(pivots);
  const double d_pivot = oracle::ks_statistic(pivots, [](double w) { return chi_square_cdf(w, 60); });
  const bool pivot_ok = std::abs(mean - 60.0) <= 3.0 * std::sqrt(120.0 / reps) &&
                        std::abs(var / 120.0 - 1.0) <= 0.15 &&
                        d_pivot < oracle::ks_critical_5pct(reps);
  const bool pass = d_chi < crit && d_bn < crit && d_sq < crit && d_au < crit && pivot_ok;
  return {pass, format("KS chi2_3=%.5f bn1=%.5f bn1^2=%.5f au(0.5)=%.5f (crit %.5f); pivot mean=%.3f "
                       "var=%.2f KS=%.4f (crit %.4f)",
                       d_chi, d_bn, d_sq, d_au, crit, mean, var, d_pivot,
                       oracle::ks_critical_5pct(reps))};
}

// 8. UMVUE unbiasedness.
outcome umvue_unbiased() {
  const std::array<std::pair<double, std::size_t>, 3> cases{{{0.3, 50}, {0.7, 100}, {1.5, 200}}};
  const std::size_t reps = 2000;
  bool pass = true;
  std::string detail;
  std::size_t cell = 0;
  for (auto [alpha, n] : cases) {
    const auto est = simulate_cell(alpha, n, reps, seed + 8, cell++,
                                   [](const sufficient_stat& t) { return umvue_alpha(t); });
    const double mean = oracle::mean(est);
    const double se = std::sqrt(oracle::variance(est) / reps);
    const double z = (mean - alpha) / se;
    pass = pass && std::abs(z) <= 3.0;
    detail += format("(%.1f,%zu): mean=%.5f z=%+.2f ", alpha, n, mean, z);
  }
  return {pass, detail};
}

// 9. Closed-form mode against numeric argmax.
outcome mode_argmax() {
  double worst = 0.0;
  for (double a : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const alpha_unit_params p(a);
    auto log_density = [&p](double t) { return std::log(au_pdf(std::exp(-t), p)); };
    double best = 1e-9;
    double step = 1.01;
    for (double t = best; t < 700.0; t *= step) {
      if (log_density(t) > log_density(best)) best = t;
    }
    const double t = oracle::argmax(log_density, best / step, best * step, 1e-13);
    worst = std::max(worst, std::abs(au_mode(p) - std::exp(-t)));
  }
  return {worst <= 1e-6, format("max |mode - argmax|=%.2e", worst)};
}

// 10. Exponential-family form reproduces the density.
outcome exponential_family() {
  double worst = 0.0;
  for (double a : {0.1, 0.7, 1.5, 3.0}) {
    const alpha_unit_params p(a);
    const double c = -1.0 / (2.0 * a * a);
    const double d = -3.0 * std::log(a);
    for (int i = 1; i <= 1000; ++i) {
      const double x = i / 1001.0;
      const double t = std::log(x) * std::log(x);
      const double s = std::log(2.0 * t / (x * std::sqrt(2.0 * std::numbers::pi)));
      const double via_family = std::exp(c * t + d + s);
      worst = std::max({worst, std::abs(via_family - au_pdf(x, p)),
                        std::abs(std::exp(au_log_pdf(x, p)) - au_pdf(x, p))});
    }
  }
  return {worst <= 1e-12, format("max abs diff over 4 x 1000 grid=%.2e", worst)};
}

// 11. Model selection on AU data and competitor normalization.
outcome model_selection() {
  const int trials = 50;
  int au_first = 0;
  for (int trial = 0; trial < trials; ++trial) {
    random_stream s(seed + 11, trial);
    const unit_sample data(sample_au(alpha_unit_params(1.2), s, 500).values);
    if (compare_models(data, all_unit_families).front().family == unit_family::au) ++au_first;
  }
  struct point {
    unit_family family;
    std::vector<double> params;
  };
  const std::vector<point> grid{
      {unit_family::au, {0.1}},          {unit_family::au, {1.2}},           {unit_family::au, {3.0}},
      {unit_family::be, {0.19, 0.31}},   {unit_family::be, {0.5, 0.6}},      {unit_family::be, {0.8, 0.1}},
      {unit_family::kum, {1.37, 7.97}},  {unit_family::kum, {0.5, 0.5}},     {unit_family::kum, {3.0, 1.5}},
      {unit_family::logitno, {0.2, 0.8}}, {unit_family::logitno, {0.5, 2.0}}, {unit_family::logitno, {0.9, 0.3}},
      {unit_family::simplex, {0.2, 1.0}}, {unit_family::simplex, {0.5, 3.0}}, {unit_family::simplex, {0.8, 0.5}},
      {unit_family::uhn, {0.2}},         {unit_family::uhn, {1.0}},          {unit_family::uhn, {5.0}},
      {unit_family::ulindley, {0.3}},    {unit_family::ulindley, {2.0}},     {unit_family::ulindley, {10.0}}};
  double worst = 0.0;
  for (const auto& g : grid) {
    auto f = [&g](double x) { return x <= 0.0 || x >= 1.0 ? 0.0 : unit_pdf(g.family, g.params, x); };
    worst = std::max(worst, std::abs(oracle::tanh_sinh(f, 0.0, 1.0, 1e-12) - 1.0));
  }
  const bool pass = au_first >= 40 && worst <= 1e-7;
  return {pass, format("AU ranked first in %d/%d trials (need 40); max normalization error=%.1e",
                       au_first, trials, worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<outcome()>>> criteria{
      {"HDI control limits", hdi_limits},
      {"mean anchor", mean_anchor},
      {"MLE variance anchor", variance_anchor},
      {"Monte Carlo estimator table", monte_carlo_table},
      {"IQR of estimator differences", iqr_summary},
      {"moment closed form vs quadrature", moment_oracle},
      {"sampling pipeline distributions", distributional_pipeline},
      {"UMVUE unbiasedness", umvue_unbiased},
      {"mode vs numeric argmax", mode_argmax},
      {"exponential-family identity", exponential_family},
      {"model selection sanity", model_selection}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    outcome result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    if (!result.pass) ++failures;
    std::printf("%s %zu %s: %s\n", result.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                result.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
