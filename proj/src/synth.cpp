#include "mwlab/synth.hpp"

#include <cmath>
#include <random>

#include "internal.hpp"
#include "mwlab/calculus.hpp"

namespace mwlab {

namespace {

void normalize(ComplexField2D& f) {
  const double n = norm(f);
  if (n <= 0.0) return;
  const double s = 1.0 / std::sqrt(n);
  for (cplx& v : f.values()) v *= s;
}

}  // namespace

ComplexField2D plane_wave(const GridSpec& grid, double kx, double ky,
                          double amplitude) {
  ComplexField2D f(grid);
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix)
      f(ix, iy) = std::polar(amplitude, kx * grid.x(ix) + ky * grid.y(iy));
  return f;
}

ComplexField2D random_band_limited(const GridSpec& grid, std::uint64_t seed,
                                   int max_mode) {
  require(max_mode >= 1 && 2 * max_mode < std::min(grid.nx, grid.ny),
          ErrorCode::invalid_argument, "mode cutoff outside the grid band");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> hat(grid.size(), cplx(0.0, 0.0));
  for (int my = -max_mode; my <= max_mode; ++my) {
    for (int mx = -max_mode; mx <= max_mode; ++mx) {
      const int ix = (mx + grid.nx) % grid.nx;
      const int iy = (my + grid.ny) % grid.ny;
      hat[grid.index(ix, iy)] = cplx(gauss(rng), gauss(rng));
    }
  }
  detail::shared_fft(grid.nx, grid.ny)->inverse(hat.data());
  ComplexField2D f(grid, std::move(hat));
  normalize(f);
  return f;
}

PauliField2D random_band_limited_pauli(const GridSpec& grid, std::uint64_t seed,
                                       int max_mode) {
  const ComplexField2D up = random_band_limited(grid, seed, max_mode);
  const ComplexField2D dn = random_band_limited(grid, seed + 0x9e3779b9, max_mode);
  PauliField2D psi(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    psi.values()[2 * i] = up.values()[i];
    psi.values()[2 * i + 1] = dn.values()[i];
  }
  return psi;
}

ComplexField2D random_nodeless(const GridSpec& grid, std::uint64_t seed,
                               int max_mode) {
  const ComplexField2D base = random_band_limited(grid, seed, max_mode);
  double peak = 0.0;
  for (const cplx& v : base.values()) peak = std::max(peak, std::abs(v));
  const double scale = peak > 0 ? 0.8 / peak : 0.0;
  ComplexField2D f(grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    f.values()[i] = std::exp(scale * base.values()[i]);
  return f;
}

ComplexField2D vortex_field(const GridSpec& grid,
                            const std::vector<VortexSpec>& vortices,
                            double envelope_width) {
  ComplexField2D f(grid);
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double x = grid.x(ix), y = grid.y(iy);
      cplx v(1.0, 0.0);
      for (const VortexSpec& s : vortices) {
        const cplx z(x - s.x, y - s.y);
        for (int r = 0; r < std::abs(s.charge); ++r)
          v *= (s.charge > 0 ? z : std::conj(z));
      }
      if (envelope_width > 0)
        v *= std::exp(-(x * x + y * y) / (2 * envelope_width * envelope_width));
      f(ix, iy) = v;
    }
  }
  normalize(f);
  return f;
}

}  // namespace mwlab
