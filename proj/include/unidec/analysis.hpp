#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "unidec/channels.hpp"
#include "unidec/decomposer.hpp"
#include "unidec/observable.hpp"
#include "unidec/optimizer.hpp"
#include "unidec/scu.hpp"

namespace unidec {

// Variance models for exact (interpolated) and first-order approximate
// decompositions under single-ancilla stochastic sampling (SCU) and coherent
// LCU dilation. Leading terms only.
enum class VarianceModel { exact_scu, exact_lcu, approx_scu, approx_lcu };

std::string to_string(VarianceModel model);
VarianceModel parse_variance_model(const std::string& name);

struct ResourceInputs {
  double total_norm = 1.0;  // L, used by the exact models
  std::size_t kraus_count = 1;
  double epsilon = 0.0;     // approximate models only
  std::uint64_t s_tot = 1;
};

// L = 4K / epsilon^2 for the first-order decomposition.
double approximate_total_norm(std::size_t kraus_count, double epsilon);

double predicted_variance(VarianceModel model, const ResourceInputs& inputs);

// Shots needed to reach standard error `precision`. Approximate models set
// epsilon = sqrt(precision) to keep the bias at the same order.
double required_shots_real(VarianceModel model, double precision, const ResourceInputs& inputs);
std::uint64_t required_shots(VarianceModel model, double precision, const ResourceInputs& inputs);

// p such that required shots scale as precision^p, from the ratio at
// precision and precision / 2.
double shot_scaling_exponent(VarianceModel model, double precision, const ResourceInputs& inputs);

struct ResourceModel {
  VarianceModel method = VarianceModel::exact_scu;
  ResourceInputs inputs{};

  double predicted_variance() const { return unidec::predicted_variance(method, inputs); }
  std::uint64_t shot_budget(double precision) const {
    return required_shots(method, precision, inputs);
  }
};

// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

double median(std::vector<double> values);

struct MseSweepConfig {
  bool include_exact = true;
  std::vector<double> epsilons{0.1, 0.05};
  std::vector<std::uint64_t> shot_grid{100, 1000, 10000, 100000, 1000000};
  int trials = 100;
  std::uint64_t seed = 0;
  DecomposeOptions decompose{};
  Execution exec = Execution::parallel;
};

struct MseRow {
  std::string method;  // "exact" or "approximate"
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  double total_norm = 0.0;
  std::uint64_t s_tot = 0;
  int trials = 0;
  double mse = 0.0;
  double bias = 0.0;  // infinite-shot expectation of the table minus the matrix oracle
  double predicted_variance = 0.0;
};

// MSE of the estimator against Tr(O apply_channel_exact(rho0)) for every
// method and shot count. Throws DomainError when trials < 30.
std::vector<MseRow> run_mse_sweep(const KrausChannel& channel, const Matrix& rho0,
                                  const Observable& obs, const MseSweepConfig& config);

enum class SqrStrategy { multistart, simplex, gradient, random };

std::string to_string(SqrStrategy strategy);
SqrStrategy parse_sqr_strategy(const std::string& name);

struct SqrSweepConfig {
  std::vector<int> dims{2, 4, 8, 16};
  int samples_per_dim = 50;
  std::vector<SqrStrategy> strategies{SqrStrategy::multistart, SqrStrategy::random};
  OptimizerConfig optimizer{};
  std::uint64_t seed = 0;
};

struct SqrRow {
  int dim = 0;
  std::string strategy;
  // NaN for strategies that mix every scale factor (multistart and its
  // equal-budget random baseline).
  double scale_factor = std::numeric_limits<double>::quiet_NaN();
  int samples = 0;
  double sqr_min = 0.0;
  double sqr_median = 0.0;
  double sqr_max = 0.0;
  double mean_evaluations = 0.0;
};

// Eigenvalues drawn uniformly from [0, 1]. The random strategy always gets
// the evaluation budget the multistart optimizer used on the same sample.
// Runs that never find an admissible point score an SQR of infinity.
std::vector<SqrRow> run_sqr_sweep(const SqrSweepConfig& config);

}  // namespace unidec
