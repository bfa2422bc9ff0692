#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "unidec/matrix.hpp"
#include "unidec/observable.hpp"
#include "unidec/term_table.hpp"

namespace unidec {

enum class Execution { serial, parallel };

// Outcome values of one circuit (ancilla X result times system O level for
// cross terms, O level for self terms) and their probabilities.
struct OutcomeDistribution {
  std::vector<double> values;
  std::vector<double> probabilities;

  double mean() const;
  double second_moment() const;
};

// Shot count and outcome sums for one entry.
struct OutcomeTally {
  std::uint64_t shots = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
};

// Infinite-shot statistics of the single-shot estimator y = L x.
struct EstimatorModel {
  double total_norm = 0.0;              // L
  double expectation = 0.0;             // Tr(O rho~)
  double weighted_second_moment = 0.0;  // sum_e w_e E[x_e^2]
  bool involutory = false;

  // (L sum_e w_e E[x_e^2] - <O>^2) / s_tot; equals the involutory law when O^2 = I.
  double predicted_variance(std::uint64_t s_tot) const;
  // (L^2 - <O>^2) / s_tot.
  double involutory_variance(std::uint64_t s_tot) const;
};

struct EstimateResult {
  double mean = 0.0;
  double predicted_variance = 0.0;
  double involutory_variance = 0.0;  // reported for every observable
  bool model_extended = false;       // true when O is not involutory
  double empirical_stderr = 0.0;
  std::uint64_t s_tot = 0;
  std::size_t circuits_sampled = 0;
};

// Outcome law of the single-ancilla circuit for one entry: ancilla prepared
// in (|0> + e^{i phase}|1>)/sqrt2, U_i applied on |1>, U_j on |0>, then X on
// the ancilla and O on the system. Self entries measure O on U_i rho U_i^dag.
OutcomeDistribution term_outcome_distribution(const TermTable& table, std::size_t entry,
                                              const Matrix& rho0, const Observable& obs);

std::vector<OutcomeDistribution> outcome_distributions(const TermTable& table, const Matrix& rho0,
                                                       const Observable& obs,
                                                       Execution exec = Execution::parallel);

EstimatorModel estimator_model(const TermTable& table,
                               const std::vector<OutcomeDistribution>& distributions,
                               const Observable& obs);

// Draws the outcomes of every entry of the plan. Entry e uses the counter
// stream (plan.seed, e), so the result is schedule independent.
std::vector<OutcomeTally> sample_outcomes(const std::vector<OutcomeDistribution>& distributions,
                                          const ShotPlan& plan, Execution exec = Execution::parallel);

EstimateResult finalize_estimate(std::span<const OutcomeTally> tallies, const ShotPlan& plan,
                                 const EstimatorModel& model);

EstimateResult estimate_observable(const TermTable& table, const Matrix& rho0, const Observable& obs,
                                   const ShotPlan& plan, Execution exec = Execution::parallel);

// Independent estimates, one per seed (allocation and sampling both keyed by
// that seed).
std::vector<EstimateResult> estimate_batch(const TermTable& table,
                                           const std::vector<OutcomeDistribution>& distributions,
                                           const EstimatorModel& model, std::uint64_t s_tot,
                                           std::span<const std::uint64_t> seeds,
                                           Execution exec = Execution::parallel);

// Re[e^{i phase} Tr(O U_i rho0 U_j^dag)] per entry, computed from traces.
std::vector<double> term_expectations(const TermTable& table, const Matrix& rho0,
                                      const Observable& obs, Execution exec = Execution::parallel);

// sum_e w_e term_expectation_e = Tr(O rho~).
double exact_expectation(const TermTable& table, const Matrix& rho0, const Observable& obs,
                         Execution exec = Execution::parallel);

// rho~ = sum_k sum_{i,j} c_i c_j* U_i rho0 U_j^dag.
Matrix reconstruct_density_matrix(const TermTable& table, const Matrix& rho0,
                                  Execution exec = Execution::parallel);

}  // namespace unidec
