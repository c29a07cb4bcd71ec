#include "mwlab/spin_algebra.hpp"

#include "mwlab/errors.hpp"

namespace mwlab {

namespace {

SpinMatrixSet build_standard() {
  using namespace std::complex_literals;
  SpinMatrixSet s;
  s.sigma[0] << 0, 1, 1, 0;
  s.sigma[1] << 0, -1i, 1i, 0;
  s.sigma[2] << 1, 0, 0, -1;

  s.beta = Mat4c::Zero();
  s.beta(0, 0) = 1;
  s.beta(1, 1) = 1;
  s.beta(2, 2) = -1;
  s.beta(3, 3) = -1;

  s.gamma[0] = s.beta;
  for (int k = 0; k < 3; ++k) {
    Mat4c g = Mat4c::Zero();
    Mat4c a = Mat4c::Zero();
    g.block<2, 2>(0, 2) = s.sigma[k];
    g.block<2, 2>(2, 0) = -s.sigma[k];
    a.block<2, 2>(0, 2) = s.sigma[k];
    a.block<2, 2>(2, 0) = s.sigma[k];
    s.gamma[k + 1] = g;
    s.alpha[k] = a;
  }
  return s;
}

}  // namespace

const SpinMatrixSet& SpinMatrixSet::standard() {
  static const SpinMatrixSet s = build_standard();
  return s;
}

SpinMatrixSet SpinMatrixSet::perturbed(double eps) {
  SpinMatrixSet s = standard();
  s.sigma[0](0, 1) += eps;
  // Rebuild the 4x4 blocks from the perturbed sigma so the fault propagates
  // consistently through the whole set.
  for (int k = 0; k < 3; ++k) {
    Mat4c g = Mat4c::Zero();
    Mat4c a = Mat4c::Zero();
    g.block<2, 2>(0, 2) = s.sigma[k];
    g.block<2, 2>(2, 0) = -s.sigma[k];
    a.block<2, 2>(0, 2) = s.sigma[k];
    a.block<2, 2>(2, 0) = s.sigma[k];
    s.gamma[k + 1] = g;
    s.alpha[k] = a;
  }
  return s;
}

MetricTensorValue metric_tensor(const FourVector& a_mu) {
  for (double a : a_mu)
    require(std::isfinite(a), ErrorCode::invalid_argument,
            "metric tensor requires finite A_mu");
  const SpinMatrixSet& s = SpinMatrixSet::standard();
  MetricTensorValue result;
  result.a_mu = a_mu;
  result.matrix = s.beta;
  for (int mu = 0; mu < 4; ++mu) {
    if (a_mu[mu] != 0.0) result.matrix += s.beta * s.gamma[mu] * a_mu[mu];
  }
  return result;
}

std::complex<double> det_slash(const FourVector& a_mu) {
  for (double a : a_mu)
    require(std::isfinite(a), ErrorCode::invalid_argument,
            "det_slash requires finite A_mu");
  const SpinMatrixSet& s = SpinMatrixSet::standard();
  Mat4c slash = Mat4c::Zero();
  for (int mu = 0; mu < 4; ++mu) slash += s.gamma[mu] * a_mu[mu];
  return slash.determinant();
}

double minkowski_square(const FourVector& a) {
  return a[0] * a[0] - a[1] * a[1] - a[2] * a[2] - a[3] * a[3];
}

}  // namespace mwlab
