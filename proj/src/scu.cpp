#include "unidec/scu.hpp"

#include <cmath>

#include "kernel_primitives.hpp"
#include "unidec/errors.hpp"
#include "unidec/kernels.hpp"

namespace unidec {

double OutcomeDistribution::mean() const {
  double s = 0.0;
  for (std::size_t m = 0; m < values.size(); ++m) s += values[m] * probabilities[m];
  return s;
}

double OutcomeDistribution::second_moment() const {
  double s = 0.0;
  for (std::size_t m = 0; m < values.size(); ++m) s += values[m] * values[m] * probabilities[m];
  return s;
}

double EstimatorModel::predicted_variance(std::uint64_t s_tot) const {
  const double v = total_norm * weighted_second_moment - expectation * expectation;
  return std::max(v, 0.0) / static_cast<double>(s_tot);
}

double EstimatorModel::involutory_variance(std::uint64_t s_tot) const {
  return (total_norm * total_norm - expectation * expectation) / static_cast<double>(s_tot);
}

namespace {

void check_dims(const TermTable& table, const Matrix& rho0, const char* what) {
  require_square(rho0, what);
  if (table.dim != 0 && rho0.rows() != table.dim) {
    throw DimensionError(std::string(what) + ": state dimension " + std::to_string(rho0.rows()) +
                         " does not match term table dimension " + std::to_string(table.dim));
  }
}

void check_dims(const TermTable& table, const Matrix& rho0, const Observable& obs, const char* what) {
  check_dims(table, rho0, what);
  if (obs.dim() != rho0.rows()) {
    throw DimensionError(std::string(what) + ": observable dimension does not match the state");
  }
}

}  // namespace

OutcomeDistribution term_outcome_distribution(const TermTable& table, std::size_t entry,
                                              const Matrix& rho0, const Observable& obs) {
  check_dims(table, rho0, obs, "term_outcome_distribution");
  return detail::entry_distribution(table, table.entries.at(entry), rho0, obs);
}

std::vector<OutcomeDistribution> outcome_distributions(const TermTable& table, const Matrix& rho0,
                                                       const Observable& obs, Execution exec) {
  check_dims(table, rho0, obs, "outcome_distributions");
  return exec == Execution::serial ? kernels::serial::distributions(table, rho0, obs)
                                   : kernels::omp::distributions(table, rho0, obs);
}

EstimatorModel estimator_model(const TermTable& table,
                               const std::vector<OutcomeDistribution>& distributions,
                               const Observable& obs) {
  if (distributions.size() != table.size()) {
    throw DimensionError("estimator_model: one distribution per entry required");
  }
  EstimatorModel model;
  model.total_norm = table.total_norm;
  model.involutory = obs.involutory();
  for (std::size_t e = 0; e < table.size(); ++e) {
    const double w = table.entries[e].weight;
    model.expectation += w * distributions[e].mean();
    model.weighted_second_moment += w * distributions[e].second_moment();
  }
  return model;
}

std::vector<OutcomeTally> sample_outcomes(const std::vector<OutcomeDistribution>& distributions,
                                          const ShotPlan& plan, Execution exec) {
  if (plan.counts.size() != distributions.size()) {
    throw DimensionError("sample_outcomes: shot plan does not match the distributions");
  }
  return exec == Execution::serial ? kernels::serial::sample(distributions, plan)
                                   : kernels::omp::sample(distributions, plan);
}

EstimateResult finalize_estimate(std::span<const OutcomeTally> tallies, const ShotPlan& plan,
                                 const EstimatorModel& model) {
  EstimateResult out;
  out.s_tot = plan.s_tot;
  const double s = static_cast<double>(plan.s_tot);
  const double norm = model.total_norm;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& t : tallies) {
    sum += t.sum;
    sum_sq += t.sum_sq;
    if (t.shots > 0) ++out.circuits_sampled;
  }
  out.mean = norm * sum / s;
  if (plan.s_tot > 1) {
    const double second = norm * norm * sum_sq / s;
    const double var_y = std::max(second - out.mean * out.mean, 0.0) * s / (s - 1.0);
    out.empirical_stderr = std::sqrt(var_y / s);
  }
  out.predicted_variance = model.predicted_variance(plan.s_tot);
  out.involutory_variance = model.involutory_variance(plan.s_tot);
  out.model_extended = !model.involutory;
  return out;
}

EstimateResult estimate_observable(const TermTable& table, const Matrix& rho0, const Observable& obs,
                                   const ShotPlan& plan, Execution exec) {
  if (plan.counts.size() != table.size()) {
    throw DimensionError("estimate_observable: shot plan was built for a different table");
  }
  const auto dists = outcome_distributions(table, rho0, obs, exec);
  const EstimatorModel model = estimator_model(table, dists, obs);
  const auto tallies = sample_outcomes(dists, plan, exec);
  return finalize_estimate(tallies, plan, model);
}

std::vector<EstimateResult> estimate_batch(const TermTable& table,
                                           const std::vector<OutcomeDistribution>& distributions,
                                           const EstimatorModel& model, std::uint64_t s_tot,
                                           std::span<const std::uint64_t> seeds, Execution exec) {
  if (distributions.size() != table.size()) {
    throw DimensionError("estimate_batch: one distribution per entry required");
  }
  return exec == Execution::serial
             ? kernels::serial::batch(table, distributions, model, s_tot, seeds)
             : kernels::omp::batch(table, distributions, model, s_tot, seeds);
}

std::vector<double> term_expectations(const TermTable& table, const Matrix& rho0,
                                      const Observable& obs, Execution exec) {
  check_dims(table, rho0, obs, "term_expectations");
  return exec == Execution::serial ? kernels::serial::expectations(table, rho0, obs)
                                   : kernels::omp::expectations(table, rho0, obs);
}

double exact_expectation(const TermTable& table, const Matrix& rho0, const Observable& obs,
                         Execution exec) {
  const auto terms = term_expectations(table, rho0, obs, exec);
  double s = 0.0;
  for (std::size_t e = 0; e < terms.size(); ++e) s += table.entries[e].weight * terms[e];
  return s;
}

Matrix reconstruct_density_matrix(const TermTable& table, const Matrix& rho0, Execution exec) {
  check_dims(table, rho0, "reconstruct_density_matrix");
  return exec == Execution::serial ? kernels::serial::reconstruct(table, rho0)
                                   : kernels::omp::reconstruct(table, rho0);
}

}  // namespace unidec
