#include "unidec/decomposer.hpp"

#include <cmath>

#include "unidec/channels.hpp"
#include "unidec/errors.hpp"
#include "unidec/rng.hpp"

namespace unidec {

namespace {
const Complex kI(0.0, 1.0);
}

const char* to_string(GeneratorKind kind) {
  return kind == GeneratorKind::hermitian ? "S" : "A";
}

const char* to_string(ExpansionMethod method) {
  return method == ExpansionMethod::exact ? "exact" : "approximate";
}

UnitaryExpansion::UnitaryExpansion(GeneratorKind kind, Matrix generator,
                                   std::vector<ExpansionTerm> terms, ExpansionMethod method,
                                   double epsilon)
    : kind_(kind),
      generator_(std::move(generator)),
      spectrum_(hermitian_eig(generator_)),
      terms_(std::move(terms)),
      method_(method),
      epsilon_(epsilon) {}

Matrix UnitaryExpansion::unitary(std::size_t j) const {
  const double mu = terms_.at(j).mu;
  // exp(-mu A) = exp(i mu H) for H = iA.
  return expm_hermitian(spectrum_, kind_ == GeneratorKind::hermitian ? -kI * mu : kI * mu);
}

Matrix UnitaryExpansion::target() const {
  return kind_ == GeneratorKind::hermitian ? generator_ : Matrix(-kI * generator_);
}

Matrix UnitaryExpansion::resum() const {
  // Diagonal in the generator eigenbasis: sum_j c_j exp(-+ i mu_j lambda).
  const double sign = kind_ == GeneratorKind::hermitian ? -1.0 : 1.0;
  ComplexVector diag = ComplexVector::Zero(spectrum_.dim());
  for (const auto& term : terms_) {
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
      diag(i) += term.coefficient * std::polar(1.0, sign * term.mu * spectrum_.eigenvalues(i));
    }
  }
  return spectrum_.synthesize(diag);
}

double UnitaryExpansion::l1_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coefficient);
  return s;
}

std::pair<UnitaryExpansion, UnitaryExpansion> approximate_expansion(const GeneratorPair& pair,
                                                                    double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("approximate_expansion: epsilon must be positive");
  }
  const double half = 1.0 / (2.0 * epsilon);
  UnitaryExpansion s_part(GeneratorKind::hermitian, pair.hermitian,
                          {{kI * half, epsilon}, {-kI * half, -epsilon}},
                          ExpansionMethod::approximate, epsilon);
  // e^{eA} is mu = -e in the exp(-mu A) convention.
  UnitaryExpansion a_part(GeneratorKind::anti_hermitian, kI * pair.anti_hermitian,
                          {{Complex(half), -epsilon}, {Complex(-half), epsilon}},
                          ExpansionMethod::approximate, epsilon);
  return {std::move(s_part), std::move(a_part)};
}

UnitaryExpansion exact_expansion(GeneratorKind kind, const Matrix& hermitian_generator,
                                 const DecomposeOptions& options, GeneratorReport* report) {
  const Spectrum spectrum = hermitian_eig(hermitian_generator);
  const double top = spectrum.eigenvalues.cwiseAbs().maxCoeff();
  const std::vector<double> values(spectrum.eigenvalues.data(),
                                   spectrum.eigenvalues.data() + spectrum.eigenvalues.size());
  InterpolationProblem problem = unique_eigenvalues(values, options.dedupe_rel_tol * top);

  OptimizationResult opt = multistart_optimize(problem, options.optimizer);
  std::vector<double> mu = opt.mu;
  bool retried = false;
  InterpolationSolution solution;
  try {
    solution = solve_exact(problem, mu, options.optimizer.condition_threshold);
  } catch (const SingularInterpolationError&) {
    retried = true;
    CounterRng rng(derive_seed(options.optimizer.seed, {0x5EEDull}), 0);
    for (double& m : mu) m += 1e-3 / top * (2.0 * rng.uniform() - 1.0);
    solution = solve_exact(problem, mu, options.optimizer.condition_threshold);
  }

  // Hermitian proxy H = iA interpolates to A after multiplying by -i, and
  // exp(-i nu H) = exp(-mu A) with mu = -nu.
  std::vector<ExpansionTerm> terms;
  terms.reserve(problem.size());
  for (std::size_t j = 0; j < problem.size(); ++j) {
    const Complex c = solution.coefficients(static_cast<Eigen::Index>(j));
    if (kind == GeneratorKind::hermitian) {
      terms.push_back({c, mu[j]});
    } else {
      terms.push_back({-kI * c, -mu[j]});
    }
  }
  if (report != nullptr) {
    opt.mu = mu;
    opt.l1 = solution.l1();
    opt.sqr = sqr(opt.l1, problem.lambdas);
    *report = GeneratorReport{kind, std::move(problem), std::move(opt), solution.condition, retried};
  }
  return UnitaryExpansion(kind, hermitian_generator, std::move(terms), ExpansionMethod::exact);
}

KrausExpansion KrausDecomposition::terms() const {
  KrausExpansion out;
  for (const auto& part : parts) {
    for (std::size_t j = 0; j < part.size(); ++j) {
      out.push_back({part.terms()[j].coefficient, part.unitary(j), part.kind(), part.terms()[j].mu});
    }
  }
  return out;
}

Matrix KrausDecomposition::resum() const {
  if (parts.empty()) return Matrix();
  Matrix sum = Matrix::Zero(parts.front().generator().rows(), parts.front().generator().cols());
  for (const auto& part : parts) sum += part.resum();
  return sum;
}

double KrausDecomposition::l1_norm() const {
  double s = 0.0;
  for (const auto& part : parts) s += part.l1_norm();
  return s;
}

KrausDecomposition decompose_kraus(const Matrix& m, const DecomposeOptions& options) {
  const GeneratorPair pair = sa_split(m);
  KrausDecomposition out;
  if (options.method == ExpansionMethod::approximate) {
    auto [s_part, a_part] = approximate_expansion(pair, options.epsilon);
    if (max_norm(pair.hermitian) > options.skip_tol) out.parts.push_back(std::move(s_part));
    if (max_norm(pair.anti_hermitian) > options.skip_tol) out.parts.push_back(std::move(a_part));
    return out;
  }
  const std::pair<GeneratorKind, Matrix> generators[] = {
      {GeneratorKind::hermitian, pair.hermitian},
      {GeneratorKind::anti_hermitian, kI * pair.anti_hermitian},
  };
  for (const auto& [kind, h] : generators) {
    if (max_norm(h) <= options.skip_tol) continue;
    GeneratorReport report;
    out.parts.push_back(exact_expansion(kind, h, options, &report));
    out.reports.push_back(std::move(report));
  }
  return out;
}

std::vector<KrausDecomposition> decompose_channel(const KrausChannel& channel,
                                                  const DecomposeOptions& options) {
  const long k = static_cast<long>(channel.size());
  std::vector<std::optional<KrausDecomposition>> slots(static_cast<std::size_t>(k));
  std::vector<std::string> errors(static_cast<std::size_t>(k));
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < k; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      const Matrix& m = channel.op(idx);
      slots[idx] = max_norm(m) <= options.skip_tol ? KrausDecomposition{}
                                                   : decompose_kraus(m, options);
    } catch (const std::exception& e) {
      errors[idx] = e.what();
    }
  }
  std::vector<KrausDecomposition> out;
  out.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!errors[i].empty()) {
      throw NumericalError("decompose_channel: Kraus operator " + std::to_string(i) + ": " +
                           errors[i]);
    }
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace unidec
