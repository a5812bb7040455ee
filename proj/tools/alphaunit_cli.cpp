// alphaunit: command-line front end for the AU distribution library.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "alphaunit/alphaunit.hpp"
#include "report.hpp"

namespace {

using namespace alphaunit;
using alphaunit::cli::json;

constexpr std::uint64_t fallback_seed = 20240601;
constexpr const char* seed_env = "ALPHAUNIT_SEED";

enum exit_code : int { ok = 0, usage = 1, data = 2, numerical = 3 };

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(seed_env)) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw domain_error(std::string(seed_env) + " is not an unsigned integer");
    }
  }
  return fallback_seed;
}

column_ref parse_column(const std::string& text) {
  if (!text.empty() && text.find_first_not_of("0123456789") == std::string::npos) {
    return static_cast<std::size_t>(std::stoull(text));
  }
  return text;
}

// Output goes to the named file, or stdout when the name is empty or "-".
class output_sink {
 public:
  explicit output_sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw data_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string fmt(double v) { return alphaunit::cli::format_double(v); }

json interval_json(const interval& i) { return json::array({i.lo, i.hi}); }

json fit_result_json(const fit_result& f) {
  json j;
  j["method"] = to_string(f.method);
  j["alpha_hat"] = f.alpha_hat;
  j["se"] = f.se;
  j["variance"] = f.se * f.se;
  j["conf_level"] = f.conf_level;
  j["ci_wald"] = interval_json(f.ci_wald);
  j["ci_delta"] = interval_json(f.ci_delta);
  j["loglik"] = f.loglik;
  j["aic"] = f.aic;
  j["bic"] = f.bic;
  j["n"] = f.n;
  return j;
}

json competitor_json(const competitor_fit& fit, std::size_t rank) {
  const auto spec = model_spec(fit.family);
  json j;
  j["rank"] = rank;
  j["model"] = family_name(fit.family);
  json params = json::object();
  json se = fit.se.empty() ? json(nullptr) : json::object();
  for (std::size_t i = 0; i < fit.params.size(); ++i) {
    params[spec.param_names[i]] = fit.params[i];
    if (!fit.se.empty()) se[spec.param_names[i]] = fit.se[i];
  }
  if (fit.family == unit_family::ulindley) params["mu"] = ulindley_mean_parameter(fit.params[0]);
  j["params"] = params;
  j["se"] = se;
  j["loglik"] = fit.loglik;
  j["aic"] = fit.aic;
  j["bic"] = fit.bic;
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["boundary_warning"] = fit.boundary_warning;
  return j;
}

struct data_options {
  std::string path;
  std::string column = "0";
  bool minmax = false;
  bool squeeze = false;
  bool no_squeeze = false;
};

void add_data_options(CLI::App* cmd, data_options& opts, bool required) {
  auto* data = cmd->add_option("--data", opts.path, "CSV file with the observations");
  if (required) data->required();
  cmd->add_option("--column", opts.column, "Column name or zero-based index")
      ->capture_default_str();
  cmd->add_flag("--minmax", opts.minmax, "Min-max standardize the column to [0, 1]");
  auto* sq = cmd->add_flag("--squeeze", opts.squeeze,
                           "Apply the boundary squeeze (y(n-1)+0.5)/n (default with --minmax)");
  cmd->add_flag("--no-squeeze", opts.no_squeeze, "Disable the squeeze after --minmax")
      ->excludes(sq);
}

// Loads the column and turns it into a unit sample. With --minmax the squeeze
// is on unless --no-squeeze is given.
unit_sample load_sample(const data_options& opts) {
  const auto raw = ingest_csv(opts.path, parse_column(opts.column));
  if (raw.empty()) throw data_error("'" + opts.path + "' contains no observations");
  if (opts.minmax) {
    return to_unit_sample(minmax_transform(raw, !opts.no_squeeze), opts.path);
  }
  if (opts.squeeze) return to_unit_sample({squeeze_values(raw), true}, opts.path);
  try {
    return unit_sample(raw, false, opts.path);
  } catch (const domain_error& e) {
    throw data_error(std::string(e.what()) + "; rescale with --minmax or use --squeeze");
  }
}

json data_inputs(const data_options& opts) {
  json j;
  j["data"] = opts.path;
  j["column"] = opts.column;
  j["minmax"] = opts.minmax;
  j["squeeze"] = opts.squeeze || (opts.minmax && !opts.no_squeeze);
  return j;
}

// --- fit -------------------------------------------------------------------

struct fit_options {
  data_options data;
  std::vector<std::string> models{"au", "be", "kum", "logitno", "simplex", "uhn", "ulindley"};
  double conf = 0.95;
  std::string out;
};

int run_fit(const fit_options& opts) {
  std::vector<unit_family> families;
  for (const auto& name : opts.models) {
    const auto family = parse_family(name);
    if (!family) throw domain_error("unknown model '" + name + "'");
    families.push_back(*family);
  }
  const auto sample = load_sample(opts.data);
  if (sample.has_upper_boundary()) {
    throw data_error("data contain observations equal to 1, where every unit density used here "
                     "vanishes; rerun with --squeeze (or --minmax, which squeezes by default)");
  }
  const auto ranking = compare_models(sample, families);
  json table = json::array();
  for (std::size_t i = 0; i < ranking.size(); ++i) table.push_back(competitor_json(ranking[i], i + 1));

  json results;
  results["n"] = sample.size();
  results["squeezed"] = sample.squeezed();
  results["ranking"] = table;
  results["au_fit"] = {{"mle", fit_result_json(fit_alpha_unit(sample, estimator::mle, opts.conf))},
                       {"umvue", fit_result_json(fit_alpha_unit(sample, estimator::umvue, opts.conf))}};

  json inputs = data_inputs(opts.data);
  inputs["models"] = opts.models;
  inputs["conf"] = opts.conf;
  output_sink sink(opts.out);
  alphaunit::cli::write_json(sink.stream(),
                             alphaunit::cli::make_report("fit", inputs, results, std::nullopt));
  sink.stream() << '\n';
  return ok;
}

// --- sample ----------------------------------------------------------------

struct sample_options {
  double alpha = 0.0;
  std::size_t n = 0;
  std::optional<std::uint64_t> seed;
  std::uint64_t stream = 0;
  std::string out;
};

int run_sample(const sample_options& opts) {
  const alpha_unit_params params(opts.alpha);
  const std::uint64_t seed = resolve_seed(opts.seed);
  random_stream stream(seed, opts.stream);
  const auto batch = sample_au(params, stream, opts.n);
  output_sink sink(opts.out);
  auto& os = sink.stream();
  os << "index,value\n";
  for (std::size_t i = 0; i < batch.values.size(); ++i) {
    os << (i + 1) << ',' << fmt(batch.values[i]) << '\n';
  }
  return ok;
}

// --- eval ------------------------------------------------------------------

struct eval_options {
  double alpha = 0.0;
  bool pdf = false;
  bool cdf = false;
  bool quantile = false;
  bool mean = false;
  bool variance = false;
  bool mode = false;
  std::optional<double> moment;
  std::optional<double> mgf;
  std::optional<double> hdi;
  std::vector<double> at;
  bool as_json = false;
};

int run_eval(const eval_options& opts) {
  const alpha_unit_params params(opts.alpha);
  const int selected = opts.pdf + opts.cdf + opts.quantile + opts.mean + opts.variance +
                       opts.mode + opts.moment.has_value() + opts.mgf.has_value() +
                       opts.hdi.has_value();
  if (selected != 1) throw domain_error("eval: choose exactly one quantity to evaluate");
  const bool pointwise = opts.pdf || opts.cdf || opts.quantile;
  if (pointwise && opts.at.empty()) throw domain_error("eval: --at is required for this quantity");

  std::string quantity;
  json values = json::array();
  std::vector<std::string> lines;
  auto emit = [&](double v) {
    values.push_back(v);
    lines.push_back(fmt(v));
  };
  if (pointwise) {
    quantity = opts.pdf ? "pdf" : opts.cdf ? "cdf" : "quantile";
    for (double x : opts.at) {
      emit(opts.pdf ? au_pdf(x, params) : opts.cdf ? au_cdf(x, params) : au_quantile(x, params));
    }
  } else if (opts.mean) {
    quantity = "mean";
    emit(au_mean(params));
  } else if (opts.variance) {
    quantity = "variance";
    emit(au_variance(params));
  } else if (opts.mode) {
    quantity = "mode";
    emit(au_mode(params));
  } else if (opts.moment) {
    quantity = "moment";
    emit(au_moment(*opts.moment, params));
  } else if (opts.mgf) {
    quantity = "mgf";
    emit(au_mgf(*opts.mgf, params));
  } else {
    quantity = "hdi";
    const auto h = au_hdi(*opts.hdi, params);
    values.push_back(h.lower);
    values.push_back(h.upper);
    lines.push_back(fmt(h.lower) + "," + fmt(h.upper));
  }

  if (opts.as_json) {
    json inputs;
    inputs["alpha"] = opts.alpha;
    inputs["quantity"] = quantity;
    if (opts.moment) inputs["r"] = *opts.moment;
    if (opts.mgf) inputs["t"] = *opts.mgf;
    if (opts.hdi) inputs["mass"] = *opts.hdi;
    if (pointwise) inputs["at"] = opts.at;
    json results;
    results["values"] = values;
    alphaunit::cli::write_json(std::cout,
                               alphaunit::cli::make_report("eval", inputs, results, std::nullopt));
    std::cout << '\n';
  } else {
    for (const auto& l : lines) std::cout << l << '\n';
  }
  return ok;
}

// --- simulate --------------------------------------------------------------

struct simulate_options {
  std::vector<double> alphas{0.1, 0.3, 0.5, 0.7, 1.1, 1.5};
  std::vector<std::size_t> ns{100, 200, 500};
  std::size_t reps = 1000;
  double conf = 0.95;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string out;
  std::string table;
};

int run_simulate(const simulate_options& opts) {
  sim_config config;
  config.alphas = opts.alphas;
  config.ns = opts.ns;
  config.repetitions = opts.reps;
  config.conf_level = opts.conf;
  config.master_seed = resolve_seed(opts.seed);
  config.threads = opts.threads;
  const auto report = run_study(config);

  json cells = json::array();
  for (const auto& c : report.cells) {
    json j;
    j["alpha"] = c.alpha;
    j["n"] = c.n;
    j["method"] = to_string(c.method);
    j["avg_estimate"] = c.avg_estimate;
    j["bias"] = c.bias;
    j["mse"] = c.mse;
    j["ci_length"] = c.ci_length ? json(*c.ci_length) : json(nullptr);
    cells.push_back(j);
  }
  json iqr = json::array();
  for (const auto& [n, v] : report.iqr_by_n) iqr.push_back({{"n", n}, {"iqr", v}});
  json results;
  results["cells"] = cells;
  results["iqr_mle_minus_umvue"] = iqr;

  json inputs;
  inputs["alphas"] = opts.alphas;
  inputs["ns"] = opts.ns;
  inputs["reps"] = opts.reps;
  inputs["conf"] = opts.conf;

  output_sink sink(opts.out);
  alphaunit::cli::write_json(
      sink.stream(), alphaunit::cli::make_report("simulate", inputs, results, config.master_seed));
  sink.stream() << '\n';

  if (!opts.table.empty()) {
    output_sink table(opts.table);
    auto& os = table.stream();
    os << "n,alpha,mle_estimate,mle_bias,mle_mse,ci_length,umvue_estimate,umvue_bias,umvue_mse\n";
    for (std::size_t i = 0; i + 1 < report.cells.size(); i += 2) {
      const auto& m = report.cells[i];
      const auto& u = report.cells[i + 1];
      os << m.n << ',' << fmt(m.alpha) << ',' << fmt(m.avg_estimate) << ',' << fmt(m.bias) << ','
         << fmt(m.mse) << ',' << fmt(*m.ci_length) << ',' << fmt(u.avg_estimate) << ','
         << fmt(u.bias) << ',' << fmt(u.mse) << '\n';
    }
  }
  return ok;
}

// --- spc -------------------------------------------------------------------

struct spc_options {
  data_options data;
  bool fit = false;
  std::optional<double> alpha;
  double pi = 0.01;
  std::string method = "hdi";
  std::string out;
};

int run_spc(const spc_options& opts) {
  if (opts.fit == opts.alpha.has_value()) {
    throw domain_error("spc: give exactly one of --fit or --alpha");
  }
  if (opts.fit && opts.data.path.empty()) throw domain_error("spc: --fit requires --data");
  std::optional<unit_sample> sample;
  if (!opts.data.path.empty()) sample = load_sample(opts.data);

  const double alpha = opts.fit ? mle_alpha(*sample) : *opts.alpha;
  const limit_method method = opts.method == "hdi" ? limit_method::hdi : limit_method::equal_tailed;
  const auto limits = control_limits({alpha, opts.pi, method});

  json results;
  results["alpha"] = alpha;
  results["alpha_source"] = opts.fit ? "mle" : "given";
  results["limits"] = {{"lcl", limits.lcl}, {"cl", limits.cl}, {"ucl", limits.ucl},
                       {"method", to_string(limits.method)}};
  if (sample) {
    chart_evaluation eval;
    try {
      eval = evaluate_series(sample->values(), limits);
    } catch (const domain_error& e) {
      throw data_error(e.what());
    }
    results["evaluation"] = {{"n", eval.n},
                             {"alarm_count", eval.alarm_count},
                             {"alarm_rate", eval.alarm_rate},
                             {"alarm_indices", eval.alarm_indices}};
    if (!opts.out.empty()) {
      output_sink chart(opts.out);
      auto& os = chart.stream();
      os << "index,value,alarm\n";
      std::size_t next = 0;
      const auto values = sample->values();
      for (std::size_t i = 0; i < values.size(); ++i) {
        const bool alarm = next < eval.alarm_indices.size() && eval.alarm_indices[next] == i + 1;
        if (alarm) ++next;
        os << (i + 1) << ',' << fmt(values[i]) << ',' << (alarm ? 1 : 0) << '\n';
      }
    }
  }

  json inputs = opts.data.path.empty() ? json::object() : data_inputs(opts.data);
  inputs["fit"] = opts.fit;
  if (opts.alpha) inputs["alpha"] = *opts.alpha;
  inputs["pi"] = opts.pi;
  inputs["method"] = opts.method;
  alphaunit::cli::write_json(std::cout,
                             alphaunit::cli::make_report("spc", inputs, results, std::nullopt));
  std::cout << '\n';
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alpha-Unit distribution toolkit: fitting, sampling, simulation and control charts"};
  app.set_version_flag("--version", std::string(alphaunit::cli::tool_version));
  app.require_subcommand(1);

  fit_options fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit AU and competitor unit models, rank by AIC/BIC");
  add_data_options(fit_cmd, fit.data, true);
  fit_cmd->add_option("--models", fit.models, "Comma-separated model list")
      ->delimiter(',')
      ->capture_default_str();
  fit_cmd->add_option("--conf", fit.conf, "Confidence level for the AU intervals")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  fit_cmd->add_option("--out", fit.out, "Write the JSON report here instead of stdout");

  sample_options sample;
  auto* sample_cmd = app.add_subcommand("sample", "Draw an AU(alpha) sample as CSV");
  sample_cmd->add_option("--alpha", sample.alpha, "AU parameter")->required();
  sample_cmd->add_option("--n", sample.n, "Sample size")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", sample.seed,
                         std::string("Random seed (default: $") + seed_env + " or built-in)");
  sample_cmd->add_option("--stream", sample.stream, "Stream id under the seed")
      ->capture_default_str();
  sample_cmd->add_option("--out", sample.out, "Write CSV here instead of stdout");

  eval_options ev;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate AU(alpha) quantities");
  eval_cmd->add_option("--alpha", ev.alpha, "AU parameter")->required();
  eval_cmd->add_flag("--pdf", ev.pdf, "Density at --at");
  eval_cmd->add_flag("--cdf", ev.cdf, "Distribution function at --at");
  eval_cmd->add_flag("--quantile", ev.quantile, "Quantile at probabilities --at");
  eval_cmd->add_flag("--mean", ev.mean, "Mean");
  eval_cmd->add_flag("--variance", ev.variance, "Variance");
  eval_cmd->add_flag("--mode", ev.mode, "Mode");
  eval_cmd->add_option("--moment", ev.moment, "Moment of order R");
  eval_cmd->add_option("--mgf", ev.mgf, "Moment-generating function at T");
  eval_cmd->add_option("--hdi", ev.hdi, "Highest density interval of the given mass");
  eval_cmd->add_option("--at", ev.at, "Evaluation point(s)")->delimiter(',');
  eval_cmd->add_flag("--json", ev.as_json, "Emit a JSON report");

  simulate_options sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo study of the MLE and UMVUE");
  sim_cmd->add_option("--alphas", sim.alphas, "Alpha grid")->delimiter(',')->capture_default_str();
  sim_cmd->add_option("--ns", sim.ns, "Sample-size grid")->delimiter(',')->capture_default_str();
  sim_cmd->add_option("--reps", sim.reps, "Repetitions per cell")->capture_default_str();
  sim_cmd->add_option("--conf", sim.conf, "Confidence level of the delta-method interval")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Master seed");
  sim_cmd->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  sim_cmd->add_option("--out", sim.out, "Write the JSON report here instead of stdout");
  sim_cmd->add_option("--table", sim.table, "Also write a per-cell CSV table");

  spc_options spc;
  auto* spc_cmd = app.add_subcommand("spc", "AU control-chart limits and series evaluation");
  add_data_options(spc_cmd, spc.data, false);
  auto* spc_fit = spc_cmd->add_flag("--fit", spc.fit, "Estimate alpha from the data (MLE)");
  spc_cmd->add_option("--alpha", spc.alpha, "In-control alpha")->excludes(spc_fit);
  spc_cmd->add_option("--pi", spc.pi, "False-alarm probability")->capture_default_str();
  spc_cmd->add_option("--method", spc.method, "Limit construction")
      ->check(CLI::IsMember({"hdi", "tails"}))
      ->capture_default_str();
  spc_cmd->add_option("--out", spc.out, "Write the chart CSV (index,value,alarm) here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (*fit_cmd) return run_fit(fit);
    if (*sample_cmd) return run_sample(sample);
    if (*eval_cmd) return run_eval(ev);
    if (*sim_cmd) return run_simulate(sim);
    if (*spc_cmd) return run_spc(spc);
  } catch (const degenerate_sample_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return data;
  } catch (const boundary_likelihood_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return data;
  } catch (const data_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return data;
  } catch (const domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const convergence_error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return numerical;
  } catch (const bracket_error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return numerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  }
  return usage;
}
