#pragma once

#include <span>
#include <vector>

#include "unidec/scu.hpp"

// Loop kernels behind the estimator. `serial` is the reference
// implementation; `omp` distributes the same per-entry (or per-trial) work
// over OpenMP threads. Every kernel except reconstruct is bit-identical
// between the two; reconstruct sums thread-local partials.
namespace unidec::kernels {

namespace serial {
std::vector<OutcomeDistribution> distributions(const TermTable& table, const Matrix& rho0,
                                               const Observable& obs);
std::vector<double> expectations(const TermTable& table, const Matrix& rho0, const Observable& obs);
std::vector<OutcomeTally> sample(const std::vector<OutcomeDistribution>& dists, const ShotPlan& plan);
Matrix reconstruct(const TermTable& table, const Matrix& rho0);
std::vector<EstimateResult> batch(const TermTable& table,
                                  const std::vector<OutcomeDistribution>& dists,
                                  const EstimatorModel& model, std::uint64_t s_tot,
                                  std::span<const std::uint64_t> seeds);
}  // namespace serial

namespace omp {
std::vector<OutcomeDistribution> distributions(const TermTable& table, const Matrix& rho0,
                                               const Observable& obs);
std::vector<double> expectations(const TermTable& table, const Matrix& rho0, const Observable& obs);
std::vector<OutcomeTally> sample(const std::vector<OutcomeDistribution>& dists, const ShotPlan& plan);
Matrix reconstruct(const TermTable& table, const Matrix& rho0);
std::vector<EstimateResult> batch(const TermTable& table,
                                  const std::vector<OutcomeDistribution>& dists,
                                  const EstimatorModel& model, std::uint64_t s_tot,
                                  std::span<const std::uint64_t> seeds);
}  // namespace omp

}  // namespace unidec::kernels
