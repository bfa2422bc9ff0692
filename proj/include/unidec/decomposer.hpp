#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "unidec/interpolation.hpp"
#include "unidec/matrix.hpp"
#include "unidec/optimizer.hpp"

namespace unidec {

class KrausChannel;

enum class GeneratorKind { hermitian, anti_hermitian };
enum class ExpansionMethod { exact, approximate };

const char* to_string(GeneratorKind kind);
const char* to_string(ExpansionMethod method);

struct ExpansionTerm {
  Complex coefficient;
  double mu = 0.0;
};

// sum_j c_j U_j reproducing S (U_j = exp(-i mu_j S)) or A (U_j = exp(-mu_j A)).
// The generator is always Hermitian: S itself, or the proxy H = iA.
class UnitaryExpansion {
 public:
  UnitaryExpansion(GeneratorKind kind, Matrix generator, std::vector<ExpansionTerm> terms,
                   ExpansionMethod method, double epsilon = 0.0);

  GeneratorKind kind() const { return kind_; }
  ExpansionMethod method() const { return method_; }
  double epsilon() const { return epsilon_; }
  const Matrix& generator() const { return generator_; }
  const Spectrum& spectrum() const { return spectrum_; }
  const std::vector<ExpansionTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  Matrix unitary(std::size_t j) const;
  // S, or A = -i H.
  Matrix target() const;
  Matrix resum() const;
  double l1_norm() const;
  double reconstruction_error() const { return max_norm(resum() - target()); }

 private:
  GeneratorKind kind_;
  Matrix generator_;
  Spectrum spectrum_;
  std::vector<ExpansionTerm> terms_;
  ExpansionMethod method_;
  double epsilon_;
};

// First-order pair: S ~ i/(2e) (e^{-ieS} - e^{ieS}), A ~ 1/(2e) (e^{eA} - e^{-eA}).
std::pair<UnitaryExpansion, UnitaryExpansion> approximate_expansion(const GeneratorPair& pair,
                                                                    double epsilon);

struct DecomposeOptions {
  ExpansionMethod method = ExpansionMethod::exact;
  double epsilon = 0.1;
  OptimizerConfig optimizer{};
  double dedupe_rel_tol = kDedupeRelTol;
  // Generators (and Kraus operators) below this max-norm are skipped.
  double skip_tol = 1e-14;
};

// Optimization summary for one generator of an exact expansion.
struct GeneratorReport {
  GeneratorKind kind;
  InterpolationProblem problem;
  OptimizationResult optimization;
  double condition = 0.0;
  bool retried = false;
};

struct WeightedUnitary {
  Complex coefficient;
  Matrix unitary;
  GeneratorKind origin = GeneratorKind::hermitian;
  double mu = 0.0;
};

using KrausExpansion = std::vector<WeightedUnitary>;

struct KrausDecomposition {
  std::vector<UnitaryExpansion> parts;  // at most one per kind, zero generators omitted
  std::vector<GeneratorReport> reports; // exact method only

  KrausExpansion terms() const;
  Matrix resum() const;
  double l1_norm() const;
};

// Exact expansion of one Hermitian generator: eigenvalues, deduplication,
// multistart optimization of mu, and the interpolation solve (with a single
// perturbed retry when E(mu) is singular).
UnitaryExpansion exact_expansion(GeneratorKind kind, const Matrix& hermitian_generator,
                                 const DecomposeOptions& options,
                                 GeneratorReport* report = nullptr);

KrausDecomposition decompose_kraus(const Matrix& m, const DecomposeOptions& options = {});

// One decomposition per Kraus operator (operators below skip_tol give an
// empty decomposition). Operators are processed in parallel.
std::vector<KrausDecomposition> decompose_channel(const KrausChannel& channel,
                                                  const DecomposeOptions& options = {});

}  // namespace unidec
