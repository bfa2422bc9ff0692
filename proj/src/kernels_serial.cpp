#include "kernel_primitives.hpp"
#include "unidec/kernels.hpp"

namespace unidec::kernels::serial {

std::vector<OutcomeDistribution> distributions(const TermTable& table, const Matrix& rho0,
                                               const Observable& obs) {
  std::vector<OutcomeDistribution> out;
  out.reserve(table.size());
  for (const auto& entry : table.entries) {
    out.push_back(detail::entry_distribution(table, entry, rho0, obs));
  }
  return out;
}

std::vector<double> expectations(const TermTable& table, const Matrix& rho0, const Observable& obs) {
  std::vector<double> out;
  out.reserve(table.size());
  for (const auto& entry : table.entries) {
    out.push_back(detail::entry_expectation(table, entry, rho0, obs));
  }
  return out;
}

std::vector<OutcomeTally> sample(const std::vector<OutcomeDistribution>& dists, const ShotPlan& plan) {
  std::vector<OutcomeTally> out(dists.size());
  for (std::size_t e = 0; e < dists.size(); ++e) {
    out[e] = detail::sample_entry(dists[e], plan.counts[e], plan.seed, e);
  }
  return out;
}

Matrix reconstruct(const TermTable& table, const Matrix& rho0) {
  Matrix acc = Matrix::Zero(rho0.rows(), rho0.cols());
  for (const auto& entry : table.entries) detail::add_contribution(acc, table, entry, rho0);
  return acc;
}

std::vector<EstimateResult> batch(const TermTable& table,
                                  const std::vector<OutcomeDistribution>& dists,
                                  const EstimatorModel& model, std::uint64_t s_tot,
                                  std::span<const std::uint64_t> seeds) {
  std::vector<EstimateResult> out;
  out.reserve(seeds.size());
  for (std::uint64_t seed : seeds) out.push_back(detail::run_trial(table, dists, model, s_tot, seed));
  return out;
}

}  // namespace unidec::kernels::serial
