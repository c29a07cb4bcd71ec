#include "mwlab/currents.hpp"

#include <cmath>

#include "internal.hpp"

namespace mwlab {

namespace {

// psi+ sigma_k chi for 2-spinors, k = 0,1,2.
cplx sigma_bilinear(int k, const cplx& u0, const cplx& u1, const cplx& v0,
                    const cplx& v1) {
  const cplx iunit(0.0, 1.0);
  switch (k) {
    case 0: return std::conj(u0) * v1 + std::conj(u1) * v0;
    case 1: return -iunit * std::conj(u0) * v1 + iunit * std::conj(u1) * v0;
    default: return std::conj(u0) * v0 - std::conj(u1) * v1;
  }
}

}  // namespace

RealField2D density(const ComplexField2D& phi) {
  RealField2D rho(phi.grid());
  for (std::size_t i = 0; i < phi.values().size(); ++i)
    rho.values()[i] = std::norm(phi.values()[i]);
  return rho;
}

RealField2D density(const PauliField2D& psi) {
  RealField2D rho(psi.grid());
  for (std::size_t i = 0; i < rho.values().size(); ++i)
    rho.values()[i] =
        std::norm(psi.values()[2 * i]) + std::norm(psi.values()[2 * i + 1]);
  return rho;
}

RealField2D density(const DiracField2D& psi) {
  RealField2D rho(psi.grid());
  for (std::size_t i = 0; i < rho.values().size(); ++i) {
    double r = 0.0;
    for (int c = 0; c < 4; ++c) r += std::norm(psi.values()[4 * i + c]);
    rho.values()[i] = r;
  }
  return rho;
}

VectorField2D schrodinger_current(const ComplexField2D& phi, double mass,
                                  DiffScheme scheme) {
  require(mass > 0.0, ErrorCode::invalid_argument, "mass must be positive");
  auto [dx, dy] = gradient(phi, scheme);
  const GridSpec& g = phi.grid();
  VectorField2D j(g, 2);
  const double im = 1.0 / mass;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const cplx c = std::conj(phi(ix, iy));
      j(ix, iy, 0) = im * std::imag(c * dx(ix, iy));
      j(ix, iy, 1) = im * std::imag(c * dy(ix, iy));
    }
  }
  return j;
}

double resolve_eps0(const RealField2D& rho, double eps0) {
  if (eps0 > 0.0) return eps0;
  return 1e-12 * rho.max();
}

VectorField2D normalized_current(const ComplexField2D& phi, double eps0,
                                 DiffScheme scheme) {
  const GridSpec& g = phi.grid();
  auto [dx, dy] = gradient(phi, scheme);
  RealField2D rho = density(phi);
  const double threshold = resolve_eps0(rho, eps0);
  VectorField2D jt(g, 2);
  jt.init_mask(true);
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const double r = rho(ix, iy);
      if (!(r >= threshold) || r <= 0.0) {
        jt.set_defined(ix, iy, false);
        continue;
      }
      const double p1 = phi(ix, iy).real();
      const double p2 = phi(ix, iy).imag();
      jt(ix, iy, 0) = (p1 * dx(ix, iy).imag() - p2 * dx(ix, iy).real()) / r;
      jt(ix, iy, 1) = (p1 * dy(ix, iy).imag() - p2 * dy(ix, iy).real()) / r;
    }
  }
  return jt;
}

UnitPairField n_field(const ComplexField2D& phi, double eps0) {
  const GridSpec& g = phi.grid();
  RealField2D rho = density(phi);
  const double threshold = resolve_eps0(rho, eps0);
  UnitPairField n;
  n.grid = g;
  n.n.assign(g.size() * 2, 0.0);
  n.defined.assign(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = rho.values()[i];
    if (!(r >= threshold) || r <= 0.0) continue;
    const double s = 1.0 / std::sqrt(r);
    n.n[2 * i] = phi.values()[i].real() * s;
    n.n[2 * i + 1] = phi.values()[i].imag() * s;
    n.defined[i] = 1;
  }
  return n;
}

VectorField2D n_field_current(const UnitPairField& n, DiffScheme scheme) {
  const GridSpec& g = n.grid;
  RealField2D n1(g), n2(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    n1.values()[i] = n.n[2 * i];
    n2.values()[i] = n.n[2 * i + 1];
  }
  auto [d1x, d1y] = gradient(n1, scheme);
  auto [d2x, d2y] = gradient(n2, scheme);
  VectorField2D jt(g, 2);
  jt.init_mask(true);
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      if (!n.is_defined(ix, iy)) {
        jt.set_defined(ix, iy, false);
        continue;
      }
      jt(ix, iy, 0) = n1(ix, iy) * d2x(ix, iy) - n2(ix, iy) * d1x(ix, iy);
      jt(ix, iy, 1) = n1(ix, iy) * d2y(ix, iy) - n2(ix, iy) * d1y(ix, iy);
    }
  }
  return jt;
}

PauliField2D small_component(const PauliField2D& psi_a, double mass,
                             const VectorField2D* a_ext, DiffScheme scheme) {
  require(mass > 0.0, ErrorCode::invalid_argument, "mass must be positive");
  const GridSpec& g = psi_a.grid();
  if (a_ext)
    require(g.same_shape(a_ext->grid()), ErrorCode::grid_mismatch,
            "external potential grid mismatch");
  auto [dx, dy] = gradient(psi_a, scheme);
  PauliField2D psi_b(g);
  const cplx minus_i(0.0, -1.0);
  const double scale = 1.0 / (2.0 * mass);
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      // W_k = (-i d_k - A_k) psi, a 2-spinor per spatial direction.
      cplx wx0 = minus_i * dx(ix, iy, 0);
      cplx wx1 = minus_i * dx(ix, iy, 1);
      cplx wy0 = minus_i * dy(ix, iy, 0);
      cplx wy1 = minus_i * dy(ix, iy, 1);
      cplx wz0 = 0.0, wz1 = 0.0;
      if (a_ext) {
        const double ax = (*a_ext)(ix, iy, 0);
        const double ay = (*a_ext)(ix, iy, 1);
        wx0 -= ax * psi_a(ix, iy, 0);
        wx1 -= ax * psi_a(ix, iy, 1);
        wy0 -= ay * psi_a(ix, iy, 0);
        wy1 -= ay * psi_a(ix, iy, 1);
        if (a_ext->components() == 3) {
          const double az = (*a_ext)(ix, iy, 2);
          wz0 = -az * psi_a(ix, iy, 0);
          wz1 = -az * psi_a(ix, iy, 1);
        }
      }
      // sigma . W on the spinor index.
      const cplx iunit(0.0, 1.0);
      psi_b(ix, iy, 0) = scale * (wx1 - iunit * wy1 + wz0);
      psi_b(ix, iy, 1) = scale * (wx0 + iunit * wy0 - wz1);
    }
  }
  return psi_b;
}

std::pair<RealField2D, VectorField2D> dirac_current(const DiracField2D& psi) {
  const GridSpec& g = psi.grid();
  RealField2D rho(g);
  VectorField2D j(g, 3);
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const cplx a0 = psi(ix, iy, 0), a1 = psi(ix, iy, 1);
      const cplx b0 = psi(ix, iy, 2), b1 = psi(ix, iy, 3);
      rho(ix, iy) = std::norm(a0) + std::norm(a1) + std::norm(b0) + std::norm(b1);
      // psi+ alpha_k psi = 2 Re(psi_a+ sigma_k psi_b); block off-diagonal.
      for (int k = 0; k < 3; ++k)
        j(ix, iy, k) = 2.0 * std::real(sigma_bilinear(k, a0, a1, b0, b1));
    }
  }
  return {std::move(rho), std::move(j)};
}

VectorField2D magnetization(const PauliField2D& psi_a) {
  const GridSpec& g = psi_a.grid();
  VectorField2D m(g, 3);
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const cplx p0 = psi_a(ix, iy, 0), p1 = psi_a(ix, iy, 1);
      const cplx cross = std::conj(p0) * p1;
      m(ix, iy, 0) = 2.0 * cross.real();
      m(ix, iy, 1) = 2.0 * cross.imag();
      m(ix, iy, 2) = std::norm(p0) - std::norm(p1);
    }
  }
  return m;
}

VectorField2D spin_current(const PauliField2D& psi_a, double mass,
                           DiffScheme scheme) {
  require(mass > 0.0, ErrorCode::invalid_argument, "mass must be positive");
  const GridSpec& g = psi_a.grid();
  VectorField2D m = magnetization(psi_a);
  RealField2D mx(g), my(g), mz(g);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      mx(ix, iy) = m(ix, iy, 0);
      my(ix, iy) = m(ix, iy, 1);
      mz(ix, iy) = m(ix, iy, 2);
    }
  auto [mx_dx, mx_dy] = gradient(mx, scheme);
  auto [my_dx, my_dy] = gradient(my, scheme);
  auto [mz_dx, mz_dy] = gradient(mz, scheme);
  VectorField2D js(g, 3);
  const double scale = 1.0 / (2.0 * mass);
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      // curl with d/dz = 0: (dMz/dy, -dMz/dx, dMy/dx - dMx/dy)
      js(ix, iy, 0) = scale * mz_dy(ix, iy);
      js(ix, iy, 1) = -scale * mz_dx(ix, iy);
      js(ix, iy, 2) = scale * (my_dx(ix, iy) - mx_dy(ix, iy));
    }
  }
  return js;
}

VectorField2D spin_current_antisym(const PauliField2D& psi_a, double mass,
                                   DiffScheme scheme) {
  require(mass > 0.0, ErrorCode::invalid_argument, "mass must be positive");
  const GridSpec& g = psi_a.grid();
  auto [dx, dy] = gradient(psi_a, scheme);
  VectorField2D js(g, 3);
  const double scale = 1.0 / (2.0 * mass);
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const cplx p0 = psi_a(ix, iy, 0), p1 = psi_a(ix, iy, 1);
      const cplx gx0 = dx(ix, iy, 0), gx1 = dx(ix, iy, 1);
      const cplx gy0 = dy(ix, iy, 0), gy1 = dy(ix, iy, 1);
      // (grad psi)+ sigma_k psi + psi+ sigma_k (grad psi), per component of
      // the cross products; reduces to d_j M_k in the continuum.
      const cplx x_term =
          sigma_bilinear(2, gy0, gy1, p0, p1) + sigma_bilinear(2, p0, p1, gy0, gy1);
      const cplx y_term =
          sigma_bilinear(2, gx0, gx1, p0, p1) + sigma_bilinear(2, p0, p1, gx0, gx1);
      const cplx z_term =
          sigma_bilinear(1, gx0, gx1, p0, p1) + sigma_bilinear(1, p0, p1, gx0, gx1) -
          sigma_bilinear(0, gy0, gy1, p0, p1) - sigma_bilinear(0, p0, p1, gy0, gy1);
      js(ix, iy, 0) = scale * x_term.real();
      js(ix, iy, 1) = -scale * y_term.real();
      js(ix, iy, 2) = scale * z_term.real();
    }
  }
  return js;
}

PauliCurrentParts pauli_current_parts(const PauliField2D& psi_a, double mass,
                                      DiffScheme scheme) {
  require(mass > 0.0, ErrorCode::invalid_argument, "mass must be positive");
  const GridSpec& g = psi_a.grid();
  auto [dx, dy] = gradient(psi_a, scheme);
  PauliCurrentParts parts{VectorField2D(g, 3), spin_current(psi_a, mass, scheme),
                          VectorField2D(g, 3)};
  const double im = 1.0 / mass;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      double jx = 0.0, jy = 0.0;
      for (int c = 0; c < 2; ++c) {
        const cplx conj_p = std::conj(psi_a(ix, iy, c));
        jx += std::imag(conj_p * dx(ix, iy, c));
        jy += std::imag(conj_p * dy(ix, iy, c));
      }
      parts.convective(ix, iy, 0) = im * jx;
      parts.convective(ix, iy, 1) = im * jy;
      for (int k = 0; k < 3; ++k)
        parts.total(ix, iy, k) =
            parts.convective(ix, iy, k) + parts.spin(ix, iy, k);
    }
  }
  return parts;
}

VectorField2D pauli_current(const PauliField2D& psi_a, double mass,
                            DiffScheme scheme) {
  return pauli_current_parts(psi_a, mass, scheme).total;
}

DiracField2D assemble_dirac(const PauliField2D& large, const PauliField2D& small) {
  require(large.grid().same_shape(small.grid()), ErrorCode::grid_mismatch,
          "spinor blocks live on different grids");
  DiracField2D psi(large.grid());
  const std::size_t n = large.grid().size();
  for (std::size_t i = 0; i < n; ++i) {
    psi.values()[4 * i] = large.values()[2 * i];
    psi.values()[4 * i + 1] = large.values()[2 * i + 1];
    psi.values()[4 * i + 2] = small.values()[2 * i];
    psi.values()[4 * i + 3] = small.values()[2 * i + 1];
  }
  return psi;
}

double reduction_residual(const PauliField2D& psi_a, double mass,
                          DiffScheme scheme) {
  const PauliField2D psi_b = small_component(psi_a, mass, nullptr, scheme);
  const DiracField2D psi = assemble_dirac(psi_a, psi_b);
  auto [rho, j_dirac] = dirac_current(psi);
  const VectorField2D j_pauli = pauli_current(psi_a, mass, scheme);
  double residual = 0.0;
  const GridSpec& g = psi_a.grid();
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix)
      for (int k = 0; k < 3; ++k)
        residual = std::max(residual,
                            std::abs(j_dirac(ix, iy, k) - j_pauli(ix, iy, k)));
  return residual;
}

double external_field_cross_term(const PauliField2D& psi_a,
                                 const VectorField2D& a_ext, double mass) {
  require(mass > 0.0, ErrorCode::invalid_argument, "mass must be positive");
  require(psi_a.grid().same_shape(a_ext.grid()), ErrorCode::grid_mismatch,
          "external potential grid mismatch");
  const RealField2D rho = density(psi_a);
  const GridSpec& g = psi_a.grid();
  double worst = 0.0;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix)
      for (int k = 0; k < a_ext.components(); ++k)
        worst = std::max(worst,
                         std::abs(a_ext(ix, iy, k)) * rho(ix, iy) / mass);
  return worst;
}

}  // namespace mwlab
