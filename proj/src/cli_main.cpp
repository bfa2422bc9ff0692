#include <CLI11.hpp>

#include <ostream>
#include <sstream>

#include "unidec/cli.hpp"
#include "unidec/errors.hpp"

namespace unidec::cli {

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed, shots;
  std::optional<std::string> out, manifest, kraus_file, observable, method;
  std::optional<int> threads, time_points, trials, samples;
  std::optional<double> gamma, t, lambda_th, epsilon, t_max;
  std::vector<double> epsilons;
  std::vector<std::uint64_t> shot_grid;
  std::vector<int> dims;
  std::vector<std::string> strategies;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON config file");
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--out", o.out, "CSV output path (stdout if omitted)");
  cmd->add_option("--shots", o.shots, "Total shots per estimate");
  cmd->add_option("--manifest", o.manifest, "JSON manifest path");
  cmd->add_option("--threads", o.threads, "OpenMP thread count");
  cmd->add_option("--kraus-file", o.kraus_file, "Kraus operator JSON file");
  cmd->add_option("--gamma", o.gamma, "ADC decay rate");
  cmd->add_option("--lambda-th", o.lambda_th, "ADC thermal weight");
  cmd->add_option("--method", o.method, "exact or approximate");
  cmd->add_option("--epsilon", o.epsilon, "Approximate-expansion step");
}

Json merged_config(const std::string& experiment, const Overrides& o) {
  Json j = o.config.empty() ? Json::object() : read_json_file(o.config);
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  if (j.contains("experiment") && j.at("experiment") != experiment) {
    throw ConfigError("field 'experiment': config says '" + j.at("experiment").dump() +
                      "' but the subcommand is '" + experiment + "'");
  }
  j["experiment"] = experiment;
  auto set = [&j](const char* key, const auto& value) {
    if (value) j[key] = *value;
  };
  set("seed", o.seed);
  set("shots", o.shots);
  set("out", o.out);
  set("manifest", o.manifest);
  set("threads", o.threads);
  set("kraus_file", o.kraus_file);
  set("gamma", o.gamma);
  set("t", o.t);
  set("lambda_th", o.lambda_th);
  set("method", o.method);
  set("epsilon", o.epsilon);
  set("time_points", o.time_points);
  set("t_max", o.t_max);
  set("trials", o.trials);
  set("samples", o.samples);
  if (o.observable) j["observable"] = *o.observable;
  if (!o.epsilons.empty()) j["epsilons"] = o.epsilons;
  if (!o.shot_grid.empty()) j["shot_grid"] = o.shot_grid;
  if (!o.dims.empty()) j["dims"] = o.dims;
  if (!o.strategies.empty()) j["strategies"] = o.strategies;
  return j;
}

}  // namespace

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unitary decomposition of Kraus channels and SCU estimation"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Overrides o;
  CLI::App* decompose = app.add_subcommand("decompose", "Print the unitary expansion of a channel");
  CLI::App* simulate = app.add_subcommand("simulate-adc", "Amplitude damping populations over time");
  CLI::App* mse = app.add_subcommand("mse-sweep", "Estimator MSE versus total shots");
  CLI::App* sqr = app.add_subcommand("sqr-sweep", "Optimizer l1 quality versus dimension");
  for (CLI::App* cmd : {decompose, simulate, mse, sqr}) add_common(cmd, o);

  decompose->add_option("--t", o.t, "ADC time");
  simulate->add_option("--time-points", o.time_points, "Number of time points");
  simulate->add_option("--t-max", o.t_max, "Last time point (default 3/gamma)");
  simulate->add_option("--observable", o.observable, "Unused; populations are always reported");
  mse->add_option("--t", o.t, "ADC time (default ln2/gamma)");
  mse->add_option("--observable", o.observable, "x, y, z, p0, p1 or population:<k>");
  mse->add_option("--epsilons", o.epsilons, "Approximate-method step sizes");
  mse->add_option("--shot-grid", o.shot_grid, "Total shot counts");
  mse->add_option("--trials", o.trials, "Repetitions per cell");
  sqr->add_option("--dims", o.dims, "Spectrum sizes");
  sqr->add_option("--samples", o.samples, "Random spectra per size");
  sqr->add_option("--strategies", o.strategies, "multistart, simplex, gradient, random");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream info, error;
    const int code = app.exit(e, info, error);
    out << info.str();
    err << error.str();
    return code;
  }

  ExperimentConfig config;
  try {
    const CLI::App* chosen = app.get_subcommands().front();
    config = config_from_json(merged_config(chosen->get_name(), o));
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  }
  return run(config, out, err);
}

}  // namespace unidec::cli
