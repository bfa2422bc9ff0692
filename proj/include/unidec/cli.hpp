#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "unidec/analysis.hpp"
#include "unidec/decomposer.hpp"
#include "unidec/io.hpp"

namespace unidec::cli {

inline constexpr const char* kVersion = "0.1.0";

inline const std::vector<std::string> kExperiments{"decompose", "simulate-adc", "mse-sweep",
                                                   "sqr-sweep"};

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  std::uint64_t shots = 2048;
  std::string out;       // CSV path, empty for stdout
  std::string manifest;  // JSON manifest path, defaults to <out>.manifest.json
  int threads = 0;       // 0 keeps the OpenMP default

  // Channel: an explicit Kraus file or inline channel wins over the ADC keys.
  std::string kraus_file;
  std::optional<Json> channel;
  AdcParams adc{1.52e9, 0.0, 1.0};
  bool adc_t_set = false;

  Json observable = "p1";
  std::optional<Json> rho0;

  ExpansionMethod method = ExpansionMethod::exact;
  double epsilon = 0.1;
  OptimizerConfig optimizer{};

  int time_points = 30;
  double t_max = 0.0;  // 0 means 3 / gamma

  std::vector<double> epsilons{0.1, 0.05};
  std::vector<std::uint64_t> shot_grid{100, 1000, 10000, 100000, 1000000};
  int trials = 100;

  std::vector<int> dims{2, 4, 8, 16};
  int samples = 50;
  std::vector<SqrStrategy> strategies{SqrStrategy::multistart, SqrStrategy::random};
};

// Parses and validates a config object. Unknown keys and out-of-range
// values raise ConfigError naming the field.
ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& config);

struct RunOutput {
  std::string csv;
  Json manifest;
};

// Runs the experiment without touching the filesystem (except reading a
// Kraus file).
RunOutput execute(const ExperimentConfig& config);

// Runs and writes the CSV and manifest. Returns the process exit status;
// errors are reported on `err`.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (subcommand plus flags) and runs.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace unidec::cli
