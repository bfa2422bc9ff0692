#pragma once

#include <string>
#include <vector>

#include "unidec/matrix.hpp"

namespace unidec {

inline constexpr double kCptpTol = 1e-9;

// Ordered Kraus operators M_1..M_K sharing one dimension. Construction only
// checks shapes; use validate_cptp for the trace-normalization certificate.
class KrausChannel {
 public:
  KrausChannel(std::vector<Matrix> operators, std::string label = {});

  const std::vector<Matrix>& operators() const { return operators_; }
  const Matrix& op(std::size_t k) const { return operators_.at(k); }
  std::size_t size() const { return operators_.size(); }
  Eigen::Index dim() const { return operators_.front().rows(); }
  const std::string& label() const { return label_; }

 private:
  std::vector<Matrix> operators_;
  std::string label_;
};

// Generalized amplitude damping. gamma in 1/s, t in s.
struct AdcParams {
  double gamma = 0.0;
  double t = 0.0;
  double lambda_th = 1.0;
};

// lambda_th = 1 / (1 + exp(-1 / kT)), with kT in the same (unspecified)
// energy units as the level splitting. Informational only.
double thermal_weight(double kT);

void validate(const AdcParams& params);

// M0 = sqrt(l)(|0><0| + sqrt(e^{-gt})|1><1|), M1 = sqrt(l) sqrt(1-e^{-gt})|0><1|,
// M2 = sqrt(1-l)(sqrt(e^{-gt})|0><0| + |1><1|), M3 = sqrt(1-l) sqrt(1-e^{-gt})|1><0|.
KrausChannel make_adc(const AdcParams& params);

struct CptpReport {
  double residual = 0.0;  // max-norm of sum_k M_k^dag M_k - I
  double tol = kCptpTol;
  bool passed = false;
};

CptpReport validate_cptp(const KrausChannel& channel, double tol = kCptpTol);

// Hermitian, unit trace and PSD within tol.
bool is_density_matrix(const Matrix& rho, double tol = 1e-10);

// rho -> sum_k M_k rho M_k^dag.
Matrix apply_channel_exact(const KrausChannel& channel, const Matrix& rho, double tol = 1e-10);

}  // namespace unidec
