#include "unidec/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>

#include "unidec/errors.hpp"
#include "unidec/rng.hpp"
#include "unidec/scu.hpp"
#include "unidec/term_table.hpp"

namespace unidec::cli {

namespace {

const std::set<std::string> kKnownKeys{
    "experiment", "seed",      "shots",     "out",         "manifest",   "threads",
    "kraus_file", "channel",   "gamma",     "t",           "lambda_th",  "observable",
    "rho0",       "method",    "epsilon",   "optimizer",   "time_points", "t_max",
    "epsilons",   "shot_grid", "trials",    "dims",        "samples",    "strategies"};

template <typename T>
T field(const Json& j, const std::string& key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError("field '" + key + "': " + e.what());
  }
}

void require(bool ok, const std::string& key, const std::string& message) {
  if (!ok) throw ConfigError("field '" + key + "': " + message);
}

OptimizerConfig optimizer_from_json(const Json& j) {
  OptimizerConfig c;
  if (j.is_null()) return c;
  require(j.is_object(), "optimizer", "expected an object");
  if (j.contains("methods")) {
    c.methods.clear();
    for (const auto& name : field<std::vector<std::string>>(j, "methods", {})) {
      c.methods.push_back(parse_local_method(name));
    }
  }
  c.max_iters = field(j, "max_iters", c.max_iters);
  c.shallow_iters = field(j, "shallow_iters", c.shallow_iters);
  c.scale_factors = field(j, "scale_factors", c.scale_factors);
  c.tol = field(j, "tol", c.tol);
  c.condition_threshold = field(j, "condition_threshold", c.condition_threshold);
  try {
    c.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("field 'optimizer': ") + e.what());
  }
  return c;
}

Json optimizer_to_json(const OptimizerConfig& c) {
  Json methods = Json::array();
  for (LocalMethod m : c.methods) methods.push_back(to_string(m));
  return Json{{"methods", methods},
              {"max_iters", c.max_iters},
              {"shallow_iters", c.shallow_iters},
              {"scale_factors", c.scale_factors},
              {"tol", c.tol},
              {"condition_threshold", c.condition_threshold}};
}

KrausChannel resolve_channel(const ExperimentConfig& c) {
  if (!c.kraus_file.empty()) return load_channel_file(c.kraus_file);
  if (c.channel) return channel_from_json(*c.channel);
  AdcParams p = c.adc;
  if (!c.adc_t_set && c.experiment == "mse-sweep") p.t = std::numbers::ln2 / p.gamma;
  return make_adc(p);
}

Matrix default_rho0(Eigen::Index dim) {
  Matrix rho = Matrix::Zero(dim, dim);
  if (dim == 2) {
    rho(0, 0) = 0.25;
    rho(1, 1) = 0.75;
  } else {
    rho(0, 0) = 1.0;
  }
  return rho;
}

Matrix resolve_rho0(const ExperimentConfig& c, Eigen::Index dim) {
  if (!c.rho0) return default_rho0(dim);
  Matrix rho = matrix_from_json(*c.rho0);
  if (rho.rows() != dim) throw ConfigError("field 'rho0': dimension does not match the channel");
  if (!is_density_matrix(rho)) throw ConfigError("field 'rho0': not a density matrix");
  return rho;
}

DecomposeOptions decompose_options(const ExperimentConfig& c) {
  DecomposeOptions o;
  o.method = c.method;
  o.epsilon = c.epsilon;
  o.optimizer = c.optimizer;
  o.optimizer.seed = derive_seed(c.seed, {0xDEC0ull});
  return o;
}

std::string metadata(const ExperimentConfig& c, const std::string& hash) {
  return std::string("unidec version=") + kVersion + " experiment=" + c.experiment +
         " seed=" + std::to_string(c.seed) + " config_hash=" + hash;
}

double generator_sqr(const UnitaryExpansion& part) {
  const double top = part.spectrum().eigenvalues.cwiseAbs().maxCoeff();
  return top > 0.0 ? part.l1_norm() / top : std::nan("");
}

RunOutput run_decompose(const ExperimentConfig& c, const std::string& meta, Json& summary) {
  const KrausChannel channel = resolve_channel(c);
  const auto decompositions = decompose_channel(channel, decompose_options(c));
  CsvWriter csv(meta, {"kraus", "kind", "term", "c_re", "c_im", "mu", "generator_l1",
                       "generator_sqr", "reconstruction_error"});
  double total_l1 = 0.0;
  double worst_error = 0.0;
  Json generators = Json::array();
  for (std::size_t k = 0; k < decompositions.size(); ++k) {
    const auto& d = decompositions[k];
    if (!d.parts.empty()) {
      worst_error = std::max(worst_error, max_norm(d.resum() - channel.op(k)));
    }
    for (const auto& part : d.parts) {
      const double l1 = part.l1_norm();
      const double ratio = generator_sqr(part);
      const double error = part.reconstruction_error();
      total_l1 += l1;
      generators.push_back({{"kraus", k}, {"kind", to_string(part.kind())}, {"l1", l1},
                            {"sqr", ratio}, {"terms", part.size()}});
      for (std::size_t j = 0; j < part.size(); ++j) {
        const auto& term = part.terms()[j];
        csv.cell(static_cast<std::uint64_t>(k)).cell(std::string(to_string(part.kind())));
        csv.cell(static_cast<std::uint64_t>(j)).cell(term.coefficient.real());
        csv.cell(term.coefficient.imag()).cell(term.mu).cell(l1).cell(ratio).cell(error);
        csv.end_row();
      }
    }
  }
  const TermTable table = build_term_table(decompositions);
  summary = {{"kraus_operators", channel.size()},
             {"cptp_residual", validate_cptp(channel).residual},
             {"total_l1", total_l1},
             {"total_norm_L", table.total_norm},
             {"max_reconstruction_error", worst_error},
             {"generators", generators}};
  return {csv.str(), {}};
}

RunOutput run_simulate_adc(const ExperimentConfig& c, const std::string& meta, Json& summary) {
  const double t_max = c.t_max > 0.0 ? c.t_max : 3.0 / c.adc.gamma;
  const int points = c.time_points;
  const Observable ground = Observable::population(0, 2);
  const Observable excited = Observable::population(1, 2);
  const Matrix rho0 = resolve_rho0(c, 2);
  const DecomposeOptions options = decompose_options(c);

  CsvWriter csv(meta, {"t", "p0_exact", "p1_exact", "p0_est", "p1_est", "L", "predicted_sigma",
                       "predicted_sigma_p0"});
  double max_l = 0.0;
  double max_dev = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : t_max * i / (points - 1);
    const KrausChannel channel = make_adc({c.adc.gamma, t, c.adc.lambda_th});
    const Matrix rho = apply_channel_exact(channel, rho0);
    const TermTable table = build_term_table(decompose_channel(channel, options));
    const auto idx = static_cast<std::uint64_t>(i);
    const auto p0 = estimate_observable(
        table, rho0, ground, allocate_shots(table, c.shots, derive_seed(c.seed, {idx, 0})));
    const auto p1 = estimate_observable(
        table, rho0, excited, allocate_shots(table, c.shots, derive_seed(c.seed, {idx, 1})));
    const double p1_exact = rho(1, 1).real();
    csv.cell(t).cell(rho(0, 0).real()).cell(p1_exact).cell(p0.mean).cell(p1.mean);
    csv.cell(table.total_norm).cell(std::sqrt(p1.predicted_variance));
    csv.cell(std::sqrt(p0.predicted_variance));
    csv.end_row();
    max_l = std::max(max_l, table.total_norm);
    if (p1.predicted_variance > 0.0) {
      max_dev = std::max(max_dev, std::abs(p1.mean - p1_exact) / std::sqrt(p1.predicted_variance));
    }
  }
  summary = {{"time_points", points}, {"t_max", t_max}, {"max_total_norm_L", max_l},
             {"max_p1_deviation_sigmas", max_dev}};
  return {csv.str(), {}};
}

RunOutput run_mse(const ExperimentConfig& c, const std::string& meta, Json& summary) {
  const KrausChannel channel = resolve_channel(c);
  const Matrix rho0 = resolve_rho0(c, channel.dim());
  const Observable obs = observable_from_json(c.observable, channel.dim());
  MseSweepConfig sweep;
  sweep.epsilons = c.epsilons;
  sweep.shot_grid = c.shot_grid;
  sweep.trials = c.trials;
  sweep.seed = c.seed;
  sweep.decompose = decompose_options(c);
  const auto rows = run_mse_sweep(channel, rho0, obs, sweep);

  CsvWriter csv(meta, {"method", "epsilon", "L", "s_tot", "trials", "mse", "bias",
                       "bias_sq", "predicted_variance"});
  for (const auto& r : rows) {
    csv.cell(r.method).cell(r.epsilon).cell(r.total_norm).cell(r.s_tot);
    csv.cell(static_cast<std::uint64_t>(r.trials)).cell(r.mse).cell(r.bias);
    csv.cell(r.bias * r.bias).cell(r.predicted_variance);
    csv.end_row();
  }
  std::vector<double> shots, mse;
  for (const auto& r : rows) {
    if (r.method == "exact") {
      shots.push_back(static_cast<double>(r.s_tot));
      mse.push_back(r.mse);
    }
  }
  summary = {{"rows", rows.size()}};
  if (shots.size() >= 2) summary["exact_loglog_slope"] = loglog_slope(shots, mse);
  return {csv.str(), {}};
}

RunOutput run_sqr(const ExperimentConfig& c, const std::string& meta, Json& summary) {
  SqrSweepConfig sweep;
  sweep.dims = c.dims;
  sweep.samples_per_dim = c.samples;
  sweep.strategies = c.strategies;
  sweep.optimizer = c.optimizer;
  sweep.seed = c.seed;
  const auto rows = run_sqr_sweep(sweep);
  CsvWriter csv(meta, {"dim", "strategy", "R", "samples", "sqr_min", "sqr_median", "sqr_max",
                       "mean_evaluations"});
  for (const auto& r : rows) {
    csv.cell(static_cast<std::uint64_t>(r.dim)).cell(r.strategy).cell(r.scale_factor);
    csv.cell(static_cast<std::uint64_t>(r.samples)).cell(r.sqr_min).cell(r.sqr_median);
    csv.cell(r.sqr_max).cell(r.mean_evaluations);
    csv.end_row();
  }
  summary = {{"rows", rows.size()}};
  return {csv.str(), {}};
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!kKnownKeys.contains(key)) throw ConfigError("field '" + key + "': unknown key");
  }
  ExperimentConfig c;
  c.experiment = field<std::string>(j, "experiment", "");
  require(std::find(kExperiments.begin(), kExperiments.end(), c.experiment) != kExperiments.end(),
          "experiment", "must be one of decompose, simulate-adc, mse-sweep, sqr-sweep");
  c.seed = field(j, "seed", c.seed);
  c.shots = field(j, "shots", c.shots);
  require(c.shots >= 1, "shots", "must be >= 1");
  c.out = field(j, "out", c.out);
  c.manifest = field(j, "manifest", c.manifest);
  c.threads = field(j, "threads", c.threads);
  require(c.threads >= 0, "threads", "must be >= 0");

  c.kraus_file = field(j, "kraus_file", c.kraus_file);
  if (!c.kraus_file.empty()) {
    require(std::ifstream(c.kraus_file).good(), "kraus_file", "cannot open '" + c.kraus_file + "'");
  }
  if (j.contains("channel") && !j.at("channel").is_null()) c.channel = j.at("channel");
  c.adc.gamma = field(j, "gamma", c.adc.gamma);
  require(c.adc.gamma > 0.0 && std::isfinite(c.adc.gamma), "gamma", "must be positive");
  c.adc_t_set = j.contains("t") && !j.at("t").is_null();
  c.adc.t = field(j, "t", c.adc.t);
  require(c.adc.t >= 0.0, "t", "must be >= 0");
  c.adc.lambda_th = field(j, "lambda_th", c.adc.lambda_th);
  require(c.adc.lambda_th >= 0.0 && c.adc.lambda_th <= 1.0, "lambda_th", "must lie in [0, 1]");

  if (j.contains("observable") && !j.at("observable").is_null()) c.observable = j.at("observable");
  if (j.contains("rho0") && !j.at("rho0").is_null()) c.rho0 = j.at("rho0");

  const std::string method = field<std::string>(j, "method", "exact");
  require(method == "exact" || method == "approximate", "method", "must be exact or approximate");
  c.method = method == "exact" ? ExpansionMethod::exact : ExpansionMethod::approximate;
  c.epsilon = field(j, "epsilon", c.epsilon);
  require(c.epsilon > 0.0, "epsilon", "must be positive");
  c.optimizer = optimizer_from_json(j.contains("optimizer") ? j.at("optimizer") : Json());

  c.time_points = field(j, "time_points", c.time_points);
  require(c.time_points >= 1, "time_points", "must be >= 1");
  c.t_max = field(j, "t_max", c.t_max);
  require(c.t_max >= 0.0, "t_max", "must be >= 0");

  c.epsilons = field(j, "epsilons", c.epsilons);
  for (double e : c.epsilons) require(e > 0.0, "epsilons", "must be positive");
  c.shot_grid = field(j, "shot_grid", c.shot_grid);
  require(!c.shot_grid.empty(), "shot_grid", "must not be empty");
  for (auto s : c.shot_grid) require(s >= 1, "shot_grid", "entries must be >= 1");
  c.trials = field(j, "trials", c.trials);
  require(c.trials >= 30, "trials", "must be >= 30");

  c.dims = field(j, "dims", c.dims);
  require(!c.dims.empty(), "dims", "must not be empty");
  for (int d : c.dims) require(d >= 1, "dims", "entries must be >= 1");
  c.samples = field(j, "samples", c.samples);
  require(c.samples >= 1, "samples", "must be >= 1");
  if (j.contains("strategies")) {
    c.strategies.clear();
    for (const auto& s : field<std::vector<std::string>>(j, "strategies", {})) {
      c.strategies.push_back(parse_sqr_strategy(s));
    }
  }
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  Json strategies = Json::array();
  for (SqrStrategy s : c.strategies) strategies.push_back(to_string(s));
  Json j{{"experiment", c.experiment},
         {"seed", c.seed},
         {"shots", c.shots},
         {"threads", c.threads},
         {"gamma", c.adc.gamma},
         {"lambda_th", c.adc.lambda_th},
         {"observable", c.observable},
         {"method", to_string(c.method)},
         {"epsilon", c.epsilon},
         {"optimizer", optimizer_to_json(c.optimizer)},
         {"time_points", c.time_points},
         {"t_max", c.t_max},
         {"epsilons", c.epsilons},
         {"shot_grid", c.shot_grid},
         {"trials", c.trials},
         {"dims", c.dims},
         {"samples", c.samples},
         {"strategies", strategies}};
  if (c.adc_t_set) j["t"] = c.adc.t;
  if (!c.kraus_file.empty()) j["kraus_file"] = c.kraus_file;
  if (c.channel) j["channel"] = *c.channel;
  if (c.rho0) j["rho0"] = *c.rho0;
  if (!c.out.empty()) j["out"] = c.out;
  if (!c.manifest.empty()) j["manifest"] = c.manifest;
  return j;
}

RunOutput execute(const ExperimentConfig& c) {
  Json echo = config_to_json(c);
  // Output locations and thread count do not change the data.
  echo.erase("out");
  echo.erase("manifest");
  echo.erase("threads");
  const std::string hash = fnv1a_hex(echo.dump());
  const std::string meta = metadata(c, hash);

  Json summary;
  RunOutput out;
  if (c.experiment == "decompose") {
    out = run_decompose(c, meta, summary);
  } else if (c.experiment == "simulate-adc") {
    out = run_simulate_adc(c, meta, summary);
  } else if (c.experiment == "mse-sweep") {
    out = run_mse(c, meta, summary);
  } else if (c.experiment == "sqr-sweep") {
    out = run_sqr(c, meta, summary);
  } else {
    throw ConfigError("field 'experiment': unknown experiment '" + c.experiment + "'");
  }
  out.manifest = {{"version", kVersion}, {"experiment", c.experiment}, {"seed", c.seed},
                  {"config_hash", hash}, {"config", echo},           {"summary", summary}};
  return out;
}

int run(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.threads > 0) omp_set_num_threads(c.threads);
    RunOutput result = execute(c);
    if (c.out.empty()) {
      out << result.csv;
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!(f << result.csv) || !f.flush()) {
        err << "error: cannot write '" << c.out << "'\n";
        return 1;
      }
      result.manifest["outputs"] = {c.out};
    }
    const std::string manifest_path =
        !c.manifest.empty() ? c.manifest : (c.out.empty() ? "" : c.out + ".manifest.json");
    if (!manifest_path.empty()) {
      std::ofstream f(manifest_path, std::ios::binary);
      if (!(f << result.manifest.dump(2) << "\n") || !f.flush()) {
        err << "error: cannot write '" << manifest_path << "'\n";
        return 1;
      }
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace unidec::cli
