#pragma once

#include <cmath>
#include <cstddef>

#include "mwlab/errors.hpp"

namespace mwlab {

// Uniform rectangular 2-D grid, periodic for spectral operations.
// Coordinates are centered so that x(nx/2) == 0 exactly and x(i) == -x(nx-i),
// which keeps mirror-symmetric configurations symmetric to the last bit.
struct GridSpec {
  int nx = 0;
  int ny = 0;
  double lx = 0.0;
  double ly = 0.0;

  double hx() const { return lx / nx; }
  double hy() const { return ly / ny; }

  double x(int i) const { return (i - nx / 2) * hx(); }
  double y(int j) const { return (j - ny / 2) * hy(); }

  // FFT-ordered wavenumbers, 2*pi*n/L with n in [-N/2, N/2).
  double kx(int i) const {
    int n = (i <= nx / 2) ? i : i - nx;
    return 2.0 * M_PI * n / lx;
  }
  double ky(int j) const {
    int n = (j <= ny / 2) ? j : j - ny;
    return 2.0 * M_PI * n / ly;
  }

  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * nx + ix;
  }

  double cell_area() const { return hx() * hy(); }

  bool same_shape(const GridSpec& o) const {
    return nx == o.nx && ny == o.ny && lx == o.lx && ly == o.ly;
  }
};

inline GridSpec make_grid(int nx, int ny, double lx, double ly) {
  require(nx >= 8 && ny >= 8, ErrorCode::invalid_argument,
          "grid counts must be >= 8");
  require(lx > 0.0 && ly > 0.0, ErrorCode::invalid_argument,
          "grid lengths must be positive");
  require(std::isfinite(lx) && std::isfinite(ly), ErrorCode::invalid_argument,
          "grid lengths must be finite");
  return GridSpec{nx, ny, lx, ly};
}

}  // namespace mwlab
