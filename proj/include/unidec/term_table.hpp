#pragma once

#include <cstdint>
#include <vector>

#include "unidec/decomposer.hpp"
#include "unidec/matrix.hpp"

namespace unidec {

// One sampled circuit: the pair (i, j), i <= j, of terms of Kraus operator k.
// Self terms carry |c_i|^2 and phase 0; cross terms fold (i, j) and (j, i)
// into weight 2|c_i c_j*| and phase arg(c_i c_j*).
struct TermEntry {
  std::size_t kraus = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  double weight = 0.0;
  double phase = 0.0;  // in (-pi, pi]
  std::size_t left = 0;   // index of U_i in TermTable::unitaries
  std::size_t right = 0;  // index of U_j

  bool is_self() const { return i == j; }
};

struct TermTable {
  std::vector<TermEntry> entries;
  std::vector<Matrix> unitaries;
  double total_norm = 0.0;  // L = sum of weights = sum_k (sum_i |c_i^k|)^2
  Eigen::Index dim = 0;

  std::size_t size() const { return entries.size(); }
};

TermTable build_term_table(const std::vector<KrausExpansion>& expansions);
TermTable build_term_table(const std::vector<KrausDecomposition>& decompositions);

// Multinomial allocation of s_tot shots over the entries.
struct ShotPlan {
  std::uint64_t s_tot = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t seed = 0;
};

// One multinomial draw with probabilities weight / L. Throws DomainError for
// an empty table or s_tot == 0.
ShotPlan allocate_shots(const TermTable& table, std::uint64_t s_tot, std::uint64_t seed);

}  // namespace unidec
