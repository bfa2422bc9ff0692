#include "unidec/channels.hpp"

#include <cmath>
#include <string>

#include "unidec/errors.hpp"

namespace unidec {

KrausChannel::KrausChannel(std::vector<Matrix> operators, std::string label)
    : operators_(std::move(operators)), label_(std::move(label)) {
  if (operators_.empty()) throw DimensionError("KrausChannel: no operators");
  const Eigen::Index n = operators_.front().rows();
  for (std::size_t k = 0; k < operators_.size(); ++k) {
    require_square(operators_[k], "KrausChannel");
    if (operators_[k].rows() != n) {
      throw DimensionError("KrausChannel: operator " + std::to_string(k) + " has dimension " +
                           std::to_string(operators_[k].rows()) + ", expected " +
                           std::to_string(n));
    }
  }
}

double thermal_weight(double kT) {
  if (!(kT > 0.0)) throw DomainError("thermal_weight: kT must be positive");
  return 1.0 / (1.0 + std::exp(-1.0 / kT));
}

void validate(const AdcParams& p) {
  if (!(p.gamma >= 0.0) || !std::isfinite(p.gamma)) throw DomainError("adc: gamma must be >= 0");
  if (!(p.t >= 0.0) || !std::isfinite(p.t)) throw DomainError("adc: t must be >= 0");
  if (!(p.lambda_th >= 0.0 && p.lambda_th <= 1.0)) {
    throw DomainError("adc: lambda_th must lie in [0, 1]");
  }
}

KrausChannel make_adc(const AdcParams& p) {
  validate(p);
  const double decay = std::exp(-p.gamma * p.t);
  const double keep = std::sqrt(decay);
  const double lost = std::sqrt(1.0 - decay);
  const double up = std::sqrt(p.lambda_th);
  const double down = std::sqrt(1.0 - p.lambda_th);

  std::vector<Matrix> ops(4, Matrix::Zero(2, 2));
  ops[0](0, 0) = up;
  ops[0](1, 1) = up * keep;
  ops[1](0, 1) = up * lost;
  ops[2](0, 0) = down * keep;
  ops[2](1, 1) = down;
  ops[3](1, 0) = down * lost;
  return KrausChannel(std::move(ops), "adc");
}

CptpReport validate_cptp(const KrausChannel& channel, double tol) {
  const Eigen::Index n = channel.dim();
  Matrix sum = Matrix::Zero(n, n);
  for (const auto& m : channel.operators()) sum.noalias() += m.adjoint() * m;
  CptpReport report;
  report.residual = max_norm(sum - Matrix::Identity(n, n));
  report.tol = tol;
  report.passed = report.residual <= tol;
  return report;
}

bool is_density_matrix(const Matrix& rho, double tol) {
  if (!is_square(rho) || !is_finite(rho) || !is_hermitian(rho, tol)) return false;
  if (std::abs(rho.trace() - Complex(1.0)) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (rho + rho.adjoint()),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

Matrix apply_channel_exact(const KrausChannel& channel, const Matrix& rho, double tol) {
  require_square(rho, "apply_channel_exact");
  if (rho.rows() != channel.dim()) {
    throw DimensionError("apply_channel_exact: state dimension " + std::to_string(rho.rows()) +
                         " does not match channel dimension " + std::to_string(channel.dim()));
  }
  if (!is_density_matrix(rho, tol)) {
    throw PreconditionError("apply_channel_exact: input is not a density matrix");
  }
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& m : channel.operators()) out.noalias() += m * rho * m.adjoint();
  return out;
}

}  // namespace unidec
