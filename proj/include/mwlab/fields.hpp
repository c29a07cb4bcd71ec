#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mwlab/grid.hpp"

namespace mwlab {

using cplx = std::complex<double>;

namespace detail {

template <int NComp>
class SpinorStorage {
public:
  SpinorStorage() = default;
  explicit SpinorStorage(const GridSpec& grid)
      : grid_(grid), values_(grid.size() * NComp) {}
  SpinorStorage(const GridSpec& grid, std::vector<cplx> values)
      : grid_(grid), values_(std::move(values)) {
    require(values_.size() == grid_.size() * NComp, ErrorCode::invalid_argument,
            "field value count does not match grid");
  }

  const GridSpec& grid() const { return grid_; }
  static constexpr int components() { return NComp; }

  cplx& operator()(int ix, int iy, int c = 0) {
    return values_[grid_.index(ix, iy) * NComp + c];
  }
  const cplx& operator()(int ix, int iy, int c = 0) const {
    return values_[grid_.index(ix, iy) * NComp + c];
  }

  std::vector<cplx>& values() { return values_; }
  const std::vector<cplx>& values() const { return values_; }

  bool all_finite() const {
    for (const cplx& v : values_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

private:
  GridSpec grid_;
  std::vector<cplx> values_;
};

}  // namespace detail

// Complex scalar wavefunction phi(x, y), row-major with x fastest.
using ComplexField2D = detail::SpinorStorage<1>;

// Two-component spinor field (the large/small Pauli blocks).
using PauliField2D = detail::SpinorStorage<2>;

// Four-component Dirac spinor field in the standard representation.
using DiracField2D = detail::SpinorStorage<4>;

// Real scalar field: densities, potentials, absorber masks.
class RealField2D {
public:
  RealField2D() = default;
  explicit RealField2D(const GridSpec& grid)
      : grid_(grid), values_(grid.size(), 0.0) {}
  RealField2D(const GridSpec& grid, std::vector<double> values)
      : grid_(grid), values_(std::move(values)) {
    require(values_.size() == grid_.size(), ErrorCode::invalid_argument,
            "field value count does not match grid");
  }

  const GridSpec& grid() const { return grid_; }
  double& operator()(int ix, int iy) { return values_[grid_.index(ix, iy)]; }
  const double& operator()(int ix, int iy) const {
    return values_[grid_.index(ix, iy)];
  }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  double max() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, v);
    return m;
  }

private:
  GridSpec grid_;
  std::vector<double> values_;
};

// Real vector field with 2 (in-plane) or 3 (curl outputs carry the
// out-of-plane part) components per point. Points may be flagged undefined
// (density below threshold); an empty mask means everywhere defined.
class VectorField2D {
public:
  VectorField2D() = default;
  VectorField2D(const GridSpec& grid, int ncomp)
      : grid_(grid), ncomp_(ncomp), values_(grid.size() * ncomp, 0.0) {
    require(ncomp == 2 || ncomp == 3, ErrorCode::invalid_argument,
            "vector field supports 2 or 3 components");
  }

  const GridSpec& grid() const { return grid_; }
  int components() const { return ncomp_; }

  double& operator()(int ix, int iy, int c) {
    return values_[grid_.index(ix, iy) * ncomp_ + c];
  }
  const double& operator()(int ix, int iy, int c) const {
    return values_[grid_.index(ix, iy) * ncomp_ + c];
  }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  bool has_mask() const { return !defined_.empty(); }
  void init_mask(bool defined = true) {
    defined_.assign(grid_.size(), defined ? 1 : 0);
  }
  bool defined(int ix, int iy) const {
    return defined_.empty() || defined_[grid_.index(ix, iy)] != 0;
  }
  void set_defined(int ix, int iy, bool d) {
    if (defined_.empty()) defined_.assign(grid_.size(), 1);
    defined_[grid_.index(ix, iy)] = d ? 1 : 0;
  }
  const std::vector<std::uint8_t>& mask() const { return defined_; }

private:
  GridSpec grid_;
  int ncomp_ = 2;
  std::vector<double> values_;
  std::vector<std::uint8_t> defined_;
};

// Unit pair (n1, n2) = (phi1, phi2)/sqrt(phi1^2 + phi2^2); undefined where
// the density falls below the node threshold.
struct UnitPairField {
  GridSpec grid;
  std::vector<double> n;                // 2 per point, interleaved
  std::vector<std::uint8_t> defined;    // 1 per point

  double n1(int ix, int iy) const { return n[grid.index(ix, iy) * 2]; }
  double n2(int ix, int iy) const { return n[grid.index(ix, iy) * 2 + 1]; }
  bool is_defined(int ix, int iy) const {
    return defined[grid.index(ix, iy)] != 0;
  }
};

}  // namespace mwlab
