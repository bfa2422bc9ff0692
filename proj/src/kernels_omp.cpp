#include "kernel_primitives.hpp"
#include "omp_error.hpp"
#include "unidec/kernels.hpp"

namespace unidec::kernels::omp {

namespace {

using detail::ErrorSlot;

long as_long(std::size_t n) { return static_cast<long>(n); }

}  // namespace

std::vector<OutcomeDistribution> distributions(const TermTable& table, const Matrix& rho0,
                                               const Observable& obs) {
  std::vector<OutcomeDistribution> out(table.size());
  ErrorSlot error;
#pragma omp parallel for schedule(dynamic, 4)
  for (long e = 0; e < as_long(table.size()); ++e) {
    try {
      const auto idx = static_cast<std::size_t>(e);
      out[idx] = detail::entry_distribution(table, table.entries[idx], rho0, obs);
    } catch (...) {
      error.capture();
    }
  }
  error.rethrow();
  return out;
}

std::vector<double> expectations(const TermTable& table, const Matrix& rho0, const Observable& obs) {
  std::vector<double> out(table.size());
#pragma omp parallel for schedule(static)
  for (long e = 0; e < as_long(table.size()); ++e) {
    const auto idx = static_cast<std::size_t>(e);
    out[idx] = detail::entry_expectation(table, table.entries[idx], rho0, obs);
  }
  return out;
}

std::vector<OutcomeTally> sample(const std::vector<OutcomeDistribution>& dists, const ShotPlan& plan) {
  std::vector<OutcomeTally> out(dists.size());
#pragma omp parallel for schedule(static)
  for (long e = 0; e < as_long(dists.size()); ++e) {
    const auto idx = static_cast<std::size_t>(e);
    out[idx] = detail::sample_entry(dists[idx], plan.counts[idx], plan.seed, idx);
  }
  return out;
}

Matrix reconstruct(const TermTable& table, const Matrix& rho0) {
  Matrix acc = Matrix::Zero(rho0.rows(), rho0.cols());
#pragma omp parallel
  {
    Matrix local = Matrix::Zero(rho0.rows(), rho0.cols());
#pragma omp for schedule(static) nowait
    for (long e = 0; e < as_long(table.size()); ++e) {
      detail::add_contribution(local, table, table.entries[static_cast<std::size_t>(e)], rho0);
    }
#pragma omp critical(unidec_reconstruct)
    acc += local;
  }
  return acc;
}

std::vector<EstimateResult> batch(const TermTable& table,
                                  const std::vector<OutcomeDistribution>& dists,
                                  const EstimatorModel& model, std::uint64_t s_tot,
                                  std::span<const std::uint64_t> seeds) {
  std::vector<EstimateResult> out(seeds.size());
  ErrorSlot error;
#pragma omp parallel for schedule(dynamic, 8)
  for (long t = 0; t < as_long(seeds.size()); ++t) {
    try {
      const auto idx = static_cast<std::size_t>(t);
      out[idx] = detail::run_trial(table, dists, model, s_tot, seeds[idx]);
    } catch (...) {
      error.capture();
    }
  }
  error.rethrow();
  return out;
}

}  // namespace unidec::kernels::omp
