#pragma once

// Per-entry building blocks shared by the serial and OpenMP kernels.

#include <algorithm>
#include <cmath>
#include <random>

#include "unidec/errors.hpp"
#include "unidec/rng.hpp"
#include "unidec/scu.hpp"

namespace unidec::detail {

inline constexpr double kProbabilityTol = 1e-10;

// Tr(P X) without forming the product.
inline Complex trace_product(const Matrix& p, const Matrix& x) {
  return (p.cwiseProduct(x.transpose())).sum();
}

inline OutcomeDistribution entry_distribution(const TermTable& table, const TermEntry& entry,
                                              const Matrix& rho0, const Observable& obs) {
  const Matrix& ui = table.unitaries[entry.left];
  const Matrix& uj = table.unitaries[entry.right];
  const auto& levels = obs.levels();
  const auto& projectors = obs.projectors();

  std::vector<std::pair<double, double>> raw;
  const Matrix left = ui * rho0 * ui.adjoint();
  if (entry.is_self()) {
    for (std::size_t m = 0; m < levels.size(); ++m) {
      raw.emplace_back(levels[m], trace_product(projectors[m], left).real());
    }
  } else {
    const Matrix right = uj * rho0 * uj.adjoint();
    const Matrix mixed = ui * rho0 * uj.adjoint();
    const Complex phase = std::polar(1.0, entry.phase);
    for (std::size_t m = 0; m < levels.size(); ++m) {
      const double diag = 0.25 * (trace_product(projectors[m], left).real() +
                                  trace_product(projectors[m], right).real());
      const double coherence = 0.5 * (phase * trace_product(projectors[m], mixed)).real();
      raw.emplace_back(levels[m], diag + coherence);
      raw.emplace_back(-levels[m], diag - coherence);
    }
  }

  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  OutcomeDistribution out;
  double total = 0.0;
  for (const auto& [value, prob] : raw) {
    if (prob < -kProbabilityTol) {
      throw NumericalError("term_outcome_distribution: negative outcome probability " +
                           std::to_string(prob));
    }
    const double p = std::max(prob, 0.0);
    total += p;
    if (!out.values.empty() && std::abs(out.values.back() - value) <= 1e-12) {
      out.probabilities.back() += p;
    } else {
      out.values.push_back(value);
      out.probabilities.push_back(p);
    }
  }
  if (!(total > 0.0)) throw NumericalError("term_outcome_distribution: zero total probability");
  for (double& p : out.probabilities) p /= total;
  return out;
}

inline double entry_expectation(const TermTable& table, const TermEntry& entry, const Matrix& rho0,
                                const Observable& obs) {
  const Matrix& ui = table.unitaries[entry.left];
  const Matrix& uj = table.unitaries[entry.right];
  const Matrix mixed = ui * rho0 * uj.adjoint();
  return (std::polar(1.0, entry.phase) * trace_product(obs.matrix(), mixed)).real();
}

inline void add_contribution(Matrix& acc, const TermTable& table, const TermEntry& entry,
                             const Matrix& rho0) {
  const Matrix& ui = table.unitaries[entry.left];
  const Matrix& uj = table.unitaries[entry.right];
  if (entry.is_self()) {
    acc.noalias() += entry.weight * (ui * rho0 * ui.adjoint());
    return;
  }
  const Matrix mixed = std::polar(0.5 * entry.weight, entry.phase) * (ui * rho0 * uj.adjoint());
  acc += mixed;
  acc += mixed.adjoint();
}

// Multinomial split of `count` shots over the outcomes, drawn from the
// counter stream (seed, entry).
inline OutcomeTally sample_entry(const OutcomeDistribution& dist, std::uint64_t count,
                                 std::uint64_t seed, std::size_t entry) {
  OutcomeTally tally;
  tally.shots = count;
  if (count == 0) return tally;
  CounterRng rng(seed, static_cast<std::uint64_t>(entry));
  std::uint64_t remaining = count;
  double mass = 1.0;
  const std::size_t n = dist.values.size();
  for (std::size_t m = 0; m < n && remaining > 0; ++m) {
    std::uint64_t k = 0;
    const double p = mass > 0.0 ? std::clamp(dist.probabilities[m] / mass, 0.0, 1.0) : 1.0;
    if (m + 1 == n || p >= 1.0) {
      k = remaining;
    } else if (p > 0.0) {
      std::binomial_distribution<std::int64_t> draw(static_cast<std::int64_t>(remaining), p);
      k = static_cast<std::uint64_t>(draw(rng));
    }
    const double v = dist.values[m];
    tally.sum += static_cast<double>(k) * v;
    tally.sum_sq += static_cast<double>(k) * v * v;
    remaining -= k;
    mass -= dist.probabilities[m];
  }
  return tally;
}

inline EstimateResult run_trial(const TermTable& table, const std::vector<OutcomeDistribution>& dists,
                                const EstimatorModel& model, std::uint64_t s_tot,
                                std::uint64_t seed) {
  const ShotPlan plan = allocate_shots(table, s_tot, seed);
  std::vector<OutcomeTally> tallies(dists.size());
  for (std::size_t e = 0; e < dists.size(); ++e) {
    tallies[e] = sample_entry(dists[e], plan.counts[e], plan.seed, e);
  }
  return finalize_estimate(tallies, plan, model);
}

}  // namespace unidec::detail
