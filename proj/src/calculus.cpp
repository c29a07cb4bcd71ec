#include "mwlab/calculus.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "internal.hpp"
#include "mwlab/currents.hpp"
#include "mwlab/fft.hpp"

namespace mwlab {

namespace detail {

// Plans are reused per grid shape; gradients and the propagator share them.
std::shared_ptr<Fft2d> shared_fft(int nx, int ny) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<Fft2d>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(nx, ny);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto fft = std::make_shared<Fft2d>(nx, ny);
  cache.emplace(key, fft);
  return fft;
}

}  // namespace detail

namespace {

using detail::CompensatedSum;

// d/dx and d/dy of one component stored in `data`, written to dx/dy.
void spectral_gradient(const GridSpec& g, const std::vector<cplx>& data,
                       std::vector<cplx>& dx, std::vector<cplx>& dy) {
  auto fft = detail::shared_fft(g.nx, g.ny);
  std::vector<cplx> hat(data);
  fft->forward(hat.data());
  dx.resize(data.size());
  dy.resize(data.size());
  const cplx iunit(0.0, 1.0);
  for (int iy = 0; iy < g.ny; ++iy) {
    // Nyquist modes carry no usable derivative sign; they are zeroed.
    const double ky = (g.ny % 2 == 0 && iy == g.ny / 2) ? 0.0 : g.ky(iy);
    for (int ix = 0; ix < g.nx; ++ix) {
      const double kx = (g.nx % 2 == 0 && ix == g.nx / 2) ? 0.0 : g.kx(ix);
      const std::size_t idx = g.index(ix, iy);
      dx[idx] = hat[idx] * (iunit * kx);
      dy[idx] = hat[idx] * (iunit * ky);
    }
  }
  fft->inverse(dx.data());
  fft->inverse(dy.data());
}

void central2_gradient(const GridSpec& g, const std::vector<cplx>& data,
                       std::vector<cplx>& dx, std::vector<cplx>& dy) {
  dx.resize(data.size());
  dy.resize(data.size());
  const double ihx2 = 1.0 / (2.0 * g.hx());
  const double ihy2 = 1.0 / (2.0 * g.hy());
  for (int iy = 0; iy < g.ny; ++iy) {
    const int jm = (iy + g.ny - 1) % g.ny;
    const int jp = (iy + 1) % g.ny;
    for (int ix = 0; ix < g.nx; ++ix) {
      const int im = (ix + g.nx - 1) % g.nx;
      const int ip = (ix + 1) % g.nx;
      const std::size_t idx = g.index(ix, iy);
      dx[idx] = (data[g.index(ip, iy)] - data[g.index(im, iy)]) * ihx2;
      dy[idx] = (data[g.index(ix, jp)] - data[g.index(ix, jm)]) * ihy2;
    }
  }
}

template <int NComp>
std::pair<detail::SpinorStorage<NComp>, detail::SpinorStorage<NComp>>
gradient_impl(const detail::SpinorStorage<NComp>& f, DiffScheme scheme) {
  const GridSpec& g = f.grid();
  detail::SpinorStorage<NComp> out_dx(g), out_dy(g);
  std::vector<cplx> comp(g.size()), dx, dy;
  for (int c = 0; c < NComp; ++c) {
    for (std::size_t i = 0; i < g.size(); ++i)
      comp[i] = f.values()[i * NComp + c];
    if (scheme == DiffScheme::spectral)
      spectral_gradient(g, comp, dx, dy);
    else
      central2_gradient(g, comp, dx, dy);
    for (std::size_t i = 0; i < g.size(); ++i) {
      out_dx.values()[i * NComp + c] = dx[i];
      out_dy.values()[i * NComp + c] = dy[i];
    }
  }
  return {std::move(out_dx), std::move(out_dy)};
}

template <int NComp>
double norm_impl(const detail::SpinorStorage<NComp>& f) {
  CompensatedSum s;
  for (const cplx& v : f.values()) s.add(std::norm(v));
  return s.value() * f.grid().cell_area();
}

}  // namespace

ComplexField2D gaussian_packet_aniso(const GridSpec& grid, double cx, double cy,
                                     double width_x, double width_y, double kx,
                                     double ky) {
  const double hmax = std::max(grid.hx(), grid.hy());
  require(width_x > 2.0 * hmax && width_y > 2.0 * hmax,
          ErrorCode::invalid_argument,
          "packet width under-resolved by the grid (need width > 2 max(hx, hy))");
  ComplexField2D phi(grid);
  for (int iy = 0; iy < grid.ny; ++iy) {
    const double y = grid.y(iy) - cy;
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double x = grid.x(ix) - cx;
      const double envelope = std::exp(-x * x / (2.0 * width_x * width_x) -
                                       y * y / (2.0 * width_y * width_y));
      const double phase = kx * (x + cx) + ky * (y + cy);
      phi(ix, iy) = envelope * cplx(std::cos(phase), std::sin(phase));
    }
  }
  const double n = norm(phi);
  require(n > 0.0, ErrorCode::numerical, "packet norm vanished");
  const double scale = 1.0 / std::sqrt(n);
  for (cplx& v : phi.values()) v *= scale;
  return phi;
}

ComplexField2D gaussian_packet(const GridSpec& grid, double cx, double cy,
                               double width, double kx, double ky) {
  return gaussian_packet_aniso(grid, cx, cy, width, width, kx, ky);
}

double norm(const ComplexField2D& phi) { return norm_impl(phi); }
double norm(const PauliField2D& psi) { return norm_impl(psi); }
double norm(const DiracField2D& psi) { return norm_impl(psi); }

std::pair<ComplexField2D, ComplexField2D> gradient(const ComplexField2D& phi,
                                                   DiffScheme scheme) {
  return gradient_impl(phi, scheme);
}
std::pair<PauliField2D, PauliField2D> gradient(const PauliField2D& psi,
                                               DiffScheme scheme) {
  return gradient_impl(psi, scheme);
}

std::pair<RealField2D, RealField2D> gradient(const RealField2D& f,
                                             DiffScheme scheme) {
  const GridSpec& g = f.grid();
  std::vector<cplx> comp(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) comp[i] = f.values()[i];
  std::vector<cplx> dx, dy;
  if (scheme == DiffScheme::spectral)
    spectral_gradient(g, comp, dx, dy);
  else
    central2_gradient(g, comp, dx, dy);
  RealField2D out_dx(g), out_dy(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    out_dx.values()[i] = dx[i].real();
    out_dy.values()[i] = dy[i].real();
  }
  return {std::move(out_dx), std::move(out_dy)};
}

namespace {

cplx overlap_from_current(const RealField2D& rho, const VectorField2D& j,
                          const VectorField2D& a, double dt) {
  const GridSpec& g = rho.grid();
  require(g.same_shape(a.grid()), ErrorCode::grid_mismatch,
          "field and potential live on different grids");
  CompensatedSum density_sum, coupling_sum;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      density_sum.add(rho(ix, iy));
      double ja = j(ix, iy, 0) * a(ix, iy, 0) + j(ix, iy, 1) * a(ix, iy, 1);
      if (j.components() == 3 && a.components() == 3)
        ja += j(ix, iy, 2) * a(ix, iy, 2);
      coupling_sum.add(ja);
    }
  }
  const double area = g.cell_area();
  return cplx(density_sum.value() * area, dt * coupling_sum.value() * area);
}

}  // namespace

cplx metric_overlap(const ComplexField2D& psi, const VectorField2D& a,
                    double dt, double mass) {
  require(mass > 0.0, ErrorCode::invalid_argument, "mass must be positive");
  return overlap_from_current(density(psi),
                              schrodinger_current(psi, mass), a, dt);
}

cplx metric_overlap(const PauliField2D& psi, const VectorField2D& a, double dt,
                    double mass) {
  require(mass > 0.0, ErrorCode::invalid_argument, "mass must be positive");
  return overlap_from_current(density(psi), pauli_current(psi, mass), a, dt);
}

}  // namespace mwlab
