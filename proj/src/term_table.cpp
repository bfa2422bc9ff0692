#include "unidec/term_table.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "unidec/errors.hpp"
#include "unidec/rng.hpp"

namespace unidec {

namespace {

constexpr std::uint64_t kAllocationStream = ~std::uint64_t{0};

double wrap_phase(double phase) {
  return phase <= -std::numbers::pi ? phase + 2.0 * std::numbers::pi : phase;
}

}  // namespace

TermTable build_term_table(const std::vector<KrausExpansion>& expansions) {
  TermTable table;
  for (std::size_t k = 0; k < expansions.size(); ++k) {
    const KrausExpansion& terms = expansions[k];
    if (terms.empty()) continue;
    const std::size_t base = table.unitaries.size();
    for (const auto& t : terms) {
      require_square(t.unitary, "build_term_table");
      if (table.dim == 0) table.dim = t.unitary.rows();
      if (t.unitary.rows() != table.dim) {
        throw DimensionError("build_term_table: unitaries of mixed dimension");
      }
      table.unitaries.push_back(t.unitary);
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const Complex ci = terms[i].coefficient;
      table.entries.push_back({k, i, i, std::norm(ci), 0.0, base + i, base + i});
      for (std::size_t j = i + 1; j < terms.size(); ++j) {
        const Complex alpha = ci * std::conj(terms[j].coefficient);
        table.entries.push_back(
            {k, i, j, 2.0 * std::abs(alpha), wrap_phase(std::arg(alpha)), base + i, base + j});
      }
    }
  }
  for (const auto& e : table.entries) table.total_norm += e.weight;
  return table;
}

TermTable build_term_table(const std::vector<KrausDecomposition>& decompositions) {
  std::vector<KrausExpansion> expansions;
  expansions.reserve(decompositions.size());
  for (const auto& d : decompositions) expansions.push_back(d.terms());
  return build_term_table(expansions);
}

ShotPlan allocate_shots(const TermTable& table, std::uint64_t s_tot, std::uint64_t seed) {
  if (table.entries.empty()) throw DomainError("allocate_shots: empty term table");
  if (s_tot == 0) throw DomainError("allocate_shots: s_tot must be >= 1");
  if (!(table.total_norm > 0.0)) throw DomainError("allocate_shots: table has zero total norm");

  ShotPlan plan;
  plan.s_tot = s_tot;
  plan.seed = seed;
  plan.counts.assign(table.entries.size(), 0);

  std::size_t last = 0;
  for (std::size_t e = 0; e < table.entries.size(); ++e) {
    if (table.entries[e].weight > 0.0) last = e;
  }
  // Conditional binomials: entry e gets Binomial(remaining, w_e / sum_{f>=e} w_f).
  CounterRng rng(seed, kAllocationStream);
  std::uint64_t remaining = s_tot;
  double mass = table.total_norm;
  for (std::size_t e = 0; e <= last && remaining > 0; ++e) {
    const double w = table.entries[e].weight;
    if (e == last) {
      plan.counts[e] = remaining;
      break;
    }
    const double p = mass > 0.0 ? std::clamp(w / mass, 0.0, 1.0) : 1.0;
    std::uint64_t n = 0;
    if (p >= 1.0) {
      n = remaining;
    } else if (p > 0.0) {
      std::binomial_distribution<std::int64_t> draw(static_cast<std::int64_t>(remaining), p);
      n = static_cast<std::uint64_t>(draw(rng));
    }
    plan.counts[e] = n;
    remaining -= n;
    mass -= w;
  }
  return plan;
}

}  // namespace unidec
