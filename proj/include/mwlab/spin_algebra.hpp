#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace mwlab {

using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using FourVector = std::array<double, 4>;

// Pauli and Dirac matrices in the standard (Dirac) representation:
//   gamma^0 = beta = diag(1, 1, -1, -1),
//   gamma^k = [[0, sigma_k], [-sigma_k, 0]],
//   alpha_k = [[0, sigma_k], [sigma_k, 0]].
// Metric signature (+,-,-,-).
struct SpinMatrixSet {
  std::array<Mat2c, 3> sigma;
  std::array<Mat4c, 4> gamma;
  std::array<Mat4c, 3> alpha;
  Mat4c beta;

  static const SpinMatrixSet& standard();

  // Copy with one sigma entry nudged by eps; breaks the algebra on purpose
  // (fault injection for the verify suite).
  static SpinMatrixSet perturbed(double eps);
};

struct MetricTensorValue {
  Mat4c matrix;
  FourVector a_mu;
};

// gamma_0 + gamma_0 gamma^mu A_mu. Reduces to gamma_0 exactly at A = 0.
MetricTensorValue metric_tensor(const FourVector& a_mu);

// det(gamma^mu A_mu). Analytically equals (A.A)^2 with the Minkowski product.
std::complex<double> det_slash(const FourVector& a_mu);

// A0^2 - A1^2 - A2^2 - A3^2.
double minkowski_square(const FourVector& a_mu);

}  // namespace mwlab
