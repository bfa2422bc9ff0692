#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "unidec/interpolation.hpp"

namespace unidec {

// Returned by l1_objective when E(mu) is beyond the condition threshold.
inline constexpr double kPenalty = 1e18;

enum class LocalMethod {
  gradient,       // finite-difference descent with backtracking (SQP-style stand-in)
  simplex,        // Nelder-Mead
  random_search,  // uniform sampling baseline
};

std::string to_string(LocalMethod method);
LocalMethod parse_local_method(const std::string& name);

struct OptimizerConfig {
  std::vector<LocalMethod> methods{LocalMethod::simplex, LocalMethod::gradient};
  int max_iters = 500;
  int shallow_iters = 25;
  std::vector<double> scale_factors{0.25, 0.5, 1.0, 2.0, 4.0};
  std::uint64_t seed = 0;
  double tol = 1e-13;
  double condition_threshold = kConditionThreshold;

  // Throws DomainError when the invariants are violated.
  void validate() const;
};

struct TracePoint {
  int iteration = 0;
  double objective = 0.0;
};

struct OptimizationResult {
  std::vector<double> mu;
  double l1 = 0.0;
  double sqr = 0.0;
  std::vector<TracePoint> trace;  // best-so-far, non-increasing
  double condition = 0.0;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
  LocalMethod method = LocalMethod::simplex;
  double scale_factor = 1.0;
  // Iterations x n^3, a proxy for classical overhead.
  double classical_cost = 0.0;
};

// |E(mu)^{-1} lambda|_1, or kPenalty when E is too ill-conditioned.
double l1_objective(std::span<const double> mus, const InterpolationProblem& problem,
                    double condition_threshold = kConditionThreshold);

// Value and gradient with respect to mu (zero gradient when penalized).
double l1_objective_gradient(std::span<const double> mus, const InterpolationProblem& problem,
                             std::span<double> gradient,
                             double condition_threshold = kConditionThreshold);

// l1 / max|lambda|. Throws DomainError when every eigenvalue is zero.
double sqr(double l1, std::span<const double> lambdas);

// Symmetric equispaced stencil mu_j = R (j - (n-1)/2) h with
// h = 2 pi (n-1) / (n (lambda_max - lambda_min)).
std::vector<double> initial_points(const InterpolationProblem& problem, double scale_factor);

using Objective = std::function<double(std::span<const double>)>;
using Gradient = std::function<void(std::span<const double>, std::span<double>)>;

struct MinimizeOptions {
  LocalMethod method = LocalMethod::simplex;
  int max_iters = 500;
  double tol = 1e-13;
  // Typical coordinate scale; sets the initial simplex, finite-difference
  // step and random-search box half-width.
  double scale = 1.0;
  std::uint64_t seed = 0;
  // Used by the gradient method; central differences when empty.
  Gradient gradient;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  std::vector<TracePoint> trace;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
};

// Generic unconstrained minimizer. For random_search the box is
// x_init +- scale and max_iters is the number of samples.
MinimizeResult minimize(const Objective& objective, std::vector<double> x_init,
                        const MinimizeOptions& options);

// One local run on the l1 objective from mu_init.
OptimizationResult local_minimize(const InterpolationProblem& problem, std::vector<double> mu_init,
                                  LocalMethod method, int max_iters, const OptimizerConfig& config);

// Shallow runs over every (scale factor, method) arm, then a full run from
// the best arm. Arms run in parallel; the result does not depend on the
// schedule. Throws SingularInterpolationError if every arm is penalized.
OptimizationResult multistart_optimize(const InterpolationProblem& problem,
                                       const OptimizerConfig& config);

// Best of `evaluations` uniformly random points, spread evenly over the
// scale factors; each box is centred at zero and matches the stencil extent
// at that R, half-width R (n-1) h / 2.
OptimizationResult random_search(const InterpolationProblem& problem, long evaluations,
                                 std::span<const double> scale_factors, std::uint64_t seed,
                                 double condition_threshold = kConditionThreshold);

}  // namespace unidec
