#include "mwlab.h"

#include <cstring>
#include <string>

#include "mwlab/calculus.hpp"
#include "mwlab/currents.hpp"
#include "mwlab/errors.hpp"
#include "mwlab/interference.hpp"
#include "mwlab/io.hpp"
#include "mwlab/propagator.hpp"
#include "mwlab/spin_algebra.hpp"
#include "mwlab/synth.hpp"
#include "mwlab/topology.hpp"
#include "mwlab/verify.hpp"

/* Handle definitions: thin value wrappers around the core types. */
struct mw_grid { mwlab::GridSpec g; };
struct mw_cfield { mwlab::ComplexField2D f; };
struct mw_pfield { mwlab::PauliField2D f; };
struct mw_dfield { mwlab::DiracField2D f; };
struct mw_rfield { mwlab::RealField2D f; };
struct mw_vfield { mwlab::VectorField2D f; };
struct mw_loop { mwlab::LoopPath l; };
struct mw_fringe { mwlab::FringePattern p; };
struct mw_verify_report { std::vector<mwlab::VerifyCheck> checks; };

namespace {

thread_local std::string g_last_error;

mw_status map_code(mwlab::ErrorCode code) {
  switch (code) {
    case mwlab::ErrorCode::invalid_argument: return MW_ERR_INVALID_ARGUMENT;
    case mwlab::ErrorCode::grid_mismatch: return MW_ERR_GRID_MISMATCH;
    case mwlab::ErrorCode::domain: return MW_ERR_DOMAIN;
    case mwlab::ErrorCode::numerical: return MW_ERR_NUMERICAL;
    case mwlab::ErrorCode::io: return MW_ERR_IO;
  }
  return MW_ERR_INTERNAL;
}

template <typename Fn>
mw_status wrap(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return MW_OK;
  } catch (const mwlab::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MW_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return MW_ERR_INTERNAL;
  }
}

void need(bool ok, const char* what) {
  mwlab::require(ok, mwlab::ErrorCode::invalid_argument, what);
}

template <int NComp>
void fill_complex(mwlab::detail::SpinorStorage<NComp>& f, const double* re_im) {
  if (!re_im) return;
  for (std::size_t i = 0; i < f.values().size(); ++i)
    f.values()[i] = mwlab::cplx(re_im[2 * i], re_im[2 * i + 1]);
}

mwlab::DiffScheme to_scheme(mw_scheme s) {
  return s == MW_SCHEME_CENTRAL2 ? mwlab::DiffScheme::central2
                                 : mwlab::DiffScheme::spectral;
}

mwlab::SlitGeometry to_slits(const mw_slit_geometry* s) {
  need(s != nullptr, "slit geometry is null");
  return {s->barrier_x, s->thickness, s->width, s->separation, s->v0};
}

mwlab::EvolutionConfig to_evolution(const mw_evolution_config* c) {
  need(c != nullptr, "evolution config is null");
  mwlab::EvolutionConfig cfg;
  cfg.dt = c->dt;
  cfg.n_steps = c->n_steps;
  cfg.mass = c->mass;
  cfg.absorber_cells = c->absorber_cells;
  cfg.absorber_strength = c->absorber_strength;
  cfg.screen_x = c->screen_x;
  cfg.snapshot_every = c->snapshot_every;
  if (c->snapshot_dir) cfg.snapshot_dir = c->snapshot_dir;
  return cfg;
}

void fill_fit(const mwlab::FringePattern& p, mw_fringe_fit* out) {
  out->spacing_peaks = p.spacing_peaks;
  out->spacing_fft = p.spacing_fft;
  out->visibility = p.visibility;
  out->n_peaks = p.n_peaks;
  out->spacing_reliable = p.spacing_reliable ? 1 : 0;
}

mwlab::ConventionalSetup to_setup(const mw_conventional_setup* s) {
  need(s != nullptr, "setup is null");
  return {s->wavelength, s->slit_separation, s->screen_distance};
}

}  // namespace

extern "C" {

const char* mw_status_name(mw_status s) {
  switch (s) {
    case MW_OK: return "ok";
    case MW_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MW_ERR_GRID_MISMATCH: return "grid mismatch";
    case MW_ERR_DOMAIN: return "domain error";
    case MW_ERR_NUMERICAL: return "numerical failure";
    case MW_ERR_IO: return "io failure";
    case MW_ERR_INTERNAL: return "internal failure";
  }
  return "unknown";
}

const char* mw_last_error(void) { return g_last_error.c_str(); }

const char* mw_version(void) { return "0.1.0"; }

/* ---- grid ---------------------------------------------------------- */

mw_status mw_grid_create(int nx, int ny, double lx, double ly, mw_grid** out) {
  return wrap([&] {
    need(out != nullptr, "output handle is null");
    *out = new mw_grid{mwlab::make_grid(nx, ny, lx, ly)};
  });
}

void mw_grid_free(mw_grid* g) { delete g; }

mw_status mw_grid_shape(const mw_grid* g, int* nx, int* ny, double* lx,
                        double* ly, double* hx, double* hy) {
  return wrap([&] {
    need(g != nullptr, "grid handle is null");
    if (nx) *nx = g->g.nx;
    if (ny) *ny = g->g.ny;
    if (lx) *lx = g->g.lx;
    if (ly) *ly = g->g.ly;
    if (hx) *hx = g->g.hx();
    if (hy) *hy = g->g.hy();
  });
}

/* ---- fields -------------------------------------------------------- */

mw_status mw_cfield_create(const mw_grid* g, const double* re_im,
                           mw_cfield** out) {
  return wrap([&] {
    need(g != nullptr && out != nullptr, "null argument");
    auto* h = new mw_cfield{mwlab::ComplexField2D(g->g)};
    fill_complex(h->f, re_im);
    *out = h;
  });
}

mw_status mw_cfield_clone(const mw_cfield* f, mw_cfield** out) {
  return wrap([&] {
    need(f != nullptr && out != nullptr, "null argument");
    *out = new mw_cfield{f->f};
  });
}

void mw_cfield_free(mw_cfield* f) { delete f; }

mw_status mw_cfield_data(const mw_cfield* f, double* re_im, size_t capacity) {
  return wrap([&] {
    need(f != nullptr && re_im != nullptr, "null argument");
    need(capacity >= 2 * f->f.values().size(), "buffer too small");
    for (std::size_t i = 0; i < f->f.values().size(); ++i) {
      re_im[2 * i] = f->f.values()[i].real();
      re_im[2 * i + 1] = f->f.values()[i].imag();
    }
  });
}

mw_status mw_cfield_grid(const mw_cfield* f, int* nx, int* ny, double* lx,
                         double* ly) {
  return wrap([&] {
    need(f != nullptr, "field handle is null");
    if (nx) *nx = f->f.grid().nx;
    if (ny) *ny = f->f.grid().ny;
    if (lx) *lx = f->f.grid().lx;
    if (ly) *ly = f->f.grid().ly;
  });
}

mw_status mw_pfield_create(const mw_grid* g, const double* re_im,
                           mw_pfield** out) {
  return wrap([&] {
    need(g != nullptr && out != nullptr, "null argument");
    auto* h = new mw_pfield{mwlab::PauliField2D(g->g)};
    fill_complex(h->f, re_im);
    *out = h;
  });
}

void mw_pfield_free(mw_pfield* f) { delete f; }

mw_status mw_dfield_create(const mw_grid* g, const double* re_im,
                           mw_dfield** out) {
  return wrap([&] {
    need(g != nullptr && out != nullptr, "null argument");
    auto* h = new mw_dfield{mwlab::DiracField2D(g->g)};
    fill_complex(h->f, re_im);
    *out = h;
  });
}

void mw_dfield_free(mw_dfield* f) { delete f; }

void mw_rfield_free(mw_rfield* f) { delete f; }

mw_status mw_rfield_data(const mw_rfield* f, double* values, size_t capacity) {
  return wrap([&] {
    need(f != nullptr && values != nullptr, "null argument");
    need(capacity >= f->f.values().size(), "buffer too small");
    std::memcpy(values, f->f.values().data(),
                f->f.values().size() * sizeof(double));
  });
}

mw_status mw_vfield_create(const mw_grid* g, int ncomp, const double* values,
                           mw_vfield** out) {
  return wrap([&] {
    need(g != nullptr && out != nullptr, "null argument");
    auto* h = new mw_vfield{mwlab::VectorField2D(g->g, ncomp)};
    if (values)
      std::memcpy(h->f.values().data(), values,
                  h->f.values().size() * sizeof(double));
    *out = h;
  });
}

void mw_vfield_free(mw_vfield* f) { delete f; }

mw_status mw_vfield_components(const mw_vfield* f, int* ncomp) {
  return wrap([&] {
    need(f != nullptr && ncomp != nullptr, "null argument");
    *ncomp = f->f.components();
  });
}

mw_status mw_vfield_data(const mw_vfield* f, double* values, size_t capacity) {
  return wrap([&] {
    need(f != nullptr && values != nullptr, "null argument");
    need(capacity >= f->f.values().size(), "buffer too small");
    std::memcpy(values, f->f.values().data(),
                f->f.values().size() * sizeof(double));
  });
}

mw_status mw_vfield_mask(const mw_vfield* f, uint8_t* mask, size_t capacity) {
  return wrap([&] {
    need(f != nullptr && mask != nullptr, "null argument");
    const std::size_t n = f->f.grid().size();
    need(capacity >= n, "buffer too small");
    for (int iy = 0; iy < f->f.grid().ny; ++iy)
      for (int ix = 0; ix < f->f.grid().nx; ++ix)
        mask[f->f.grid().index(ix, iy)] = f->f.defined(ix, iy) ? 1 : 0;
  });
}

mw_status mw_gaussian_packet(const mw_grid* g, double cx, double cy,
                             double width, double kx, double ky,
                             mw_cfield** out) {
  return wrap([&] {
    need(g != nullptr && out != nullptr, "null argument");
    *out = new mw_cfield{mwlab::gaussian_packet(g->g, cx, cy, width, kx, ky)};
  });
}

mw_status mw_vortex_field(const mw_grid* g, const double* centers_xy,
                          const int* charges, int n_vortices,
                          double envelope_width, mw_cfield** out) {
  return wrap([&] {
    need(g != nullptr && out != nullptr, "null argument");
    need(n_vortices >= 0, "negative vortex count");
    need(n_vortices == 0 || (centers_xy != nullptr && charges != nullptr),
         "null vortex arrays");
    std::vector<mwlab::VortexSpec> spec(n_vortices);
    for (int i = 0; i < n_vortices; ++i)
      spec[i] = {centers_xy[2 * i], centers_xy[2 * i + 1], charges[i]};
    *out = new mw_cfield{mwlab::vortex_field(g->g, spec, envelope_width)};
  });
}

mw_status mw_plane_wave(const mw_grid* g, double kx, double ky,
                        double amplitude, mw_cfield** out) {
  return wrap([&] {
    need(g != nullptr && out != nullptr, "null argument");
    *out = new mw_cfield{mwlab::plane_wave(g->g, kx, ky, amplitude)};
  });
}

mw_status mw_random_field(const mw_grid* g, uint64_t seed, int max_mode,
                          mw_cfield** out) {
  return wrap([&] {
    need(g != nullptr && out != nullptr, "null argument");
    *out = new mw_cfield{mwlab::random_band_limited(g->g, seed, max_mode)};
  });
}

mw_status mw_norm(const mw_cfield* f, double* out) {
  return wrap([&] {
    need(f != nullptr && out != nullptr, "null argument");
    *out = mwlab::norm(f->f);
  });
}

mw_status mw_pfield_norm(const mw_pfield* f, double* out) {
  return wrap([&] {
    need(f != nullptr && out != nullptr, "null argument");
    *out = mwlab::norm(f->f);
  });
}

mw_status mw_gradient(const mw_cfield* f, mw_scheme scheme, mw_cfield** out_dx,
                      mw_cfield** out_dy) {
  return wrap([&] {
    need(f != nullptr && out_dx != nullptr && out_dy != nullptr,
         "null argument");
    auto [dx, dy] = mwlab::gradient(f->f, to_scheme(scheme));
    *out_dx = new mw_cfield{std::move(dx)};
    *out_dy = new mw_cfield{std::move(dy)};
  });
}

mw_status mw_metric_tensor(const double a_mu[4], double* out_re,
                           double* out_im) {
  return wrap([&] {
    need(a_mu != nullptr && out_re != nullptr && out_im != nullptr,
         "null argument");
    const mwlab::MetricTensorValue m =
        mwlab::metric_tensor({a_mu[0], a_mu[1], a_mu[2], a_mu[3]});
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        out_re[4 * r + c] = m.matrix(r, c).real();
        out_im[4 * r + c] = m.matrix(r, c).imag();
      }
  });
}

mw_status mw_det_slash(const double a_mu[4], double* out_re, double* out_im) {
  return wrap([&] {
    need(a_mu != nullptr && out_re != nullptr && out_im != nullptr,
         "null argument");
    const auto d = mwlab::det_slash({a_mu[0], a_mu[1], a_mu[2], a_mu[3]});
    *out_re = d.real();
    *out_im = d.imag();
  });
}

mw_status mw_metric_overlap(const mw_cfield* psi, const mw_vfield* a, double dt,
                            double mass, double* out_re, double* out_im) {
  return wrap([&] {
    need(psi != nullptr && a != nullptr && out_re != nullptr &&
             out_im != nullptr,
         "null argument");
    const mwlab::cplx g = mwlab::metric_overlap(psi->f, a->f, dt, mass);
    *out_re = g.real();
    *out_im = g.imag();
  });
}

mw_status mw_metric_overlap_pauli(const mw_pfield* psi, const mw_vfield* a,
                                  double dt, double mass, double* out_re,
                                  double* out_im) {
  return wrap([&] {
    need(psi != nullptr && a != nullptr && out_re != nullptr &&
             out_im != nullptr,
         "null argument");
    const mwlab::cplx g = mwlab::metric_overlap(psi->f, a->f, dt, mass);
    *out_re = g.real();
    *out_im = g.imag();
  });
}

/* ---- currents ------------------------------------------------------ */

mw_status mw_density(const mw_cfield* phi, mw_rfield** out) {
  return wrap([&] {
    need(phi != nullptr && out != nullptr, "null argument");
    *out = new mw_rfield{mwlab::density(phi->f)};
  });
}

mw_status mw_schrodinger_current(const mw_cfield* phi, double mass,
                                 mw_scheme scheme, mw_vfield** out) {
  return wrap([&] {
    need(phi != nullptr && out != nullptr, "null argument");
    *out = new mw_vfield{
        mwlab::schrodinger_current(phi->f, mass, to_scheme(scheme))};
  });
}

mw_status mw_normalized_current(const mw_cfield* phi, double eps0,
                                mw_scheme scheme, mw_vfield** out) {
  return wrap([&] {
    need(phi != nullptr && out != nullptr, "null argument");
    *out = new mw_vfield{
        mwlab::normalized_current(phi->f, eps0, to_scheme(scheme))};
  });
}

mw_status mw_n_field(const mw_cfield* phi, double eps0, mw_vfield** out) {
  return wrap([&] {
    need(phi != nullptr && out != nullptr, "null argument");
    const mwlab::UnitPairField n = mwlab::n_field(phi->f, eps0);
    mwlab::VectorField2D v(n.grid, 2);
    v.init_mask(true);
    for (int iy = 0; iy < n.grid.ny; ++iy)
      for (int ix = 0; ix < n.grid.nx; ++ix) {
        v(ix, iy, 0) = n.n1(ix, iy);
        v(ix, iy, 1) = n.n2(ix, iy);
        if (!n.is_defined(ix, iy)) v.set_defined(ix, iy, false);
      }
    *out = new mw_vfield{std::move(v)};
  });
}

mw_status mw_small_component(const mw_pfield* psi_a, double mass,
                             const mw_vfield* a_ext, mw_scheme scheme,
                             mw_pfield** out) {
  return wrap([&] {
    need(psi_a != nullptr && out != nullptr, "null argument");
    *out = new mw_pfield{mwlab::small_component(
        psi_a->f, mass, a_ext ? &a_ext->f : nullptr, to_scheme(scheme))};
  });
}

mw_status mw_dirac_current(const mw_dfield* psi, mw_rfield** out_rho,
                           mw_vfield** out_j) {
  return wrap([&] {
    need(psi != nullptr && out_rho != nullptr && out_j != nullptr,
         "null argument");
    auto [rho, j] = mwlab::dirac_current(psi->f);
    *out_rho = new mw_rfield{std::move(rho)};
    *out_j = new mw_vfield{std::move(j)};
  });
}

mw_status mw_pauli_current(const mw_pfield* psi_a, double mass,
                           mw_scheme scheme, mw_vfield** out_total,
                           mw_vfield** out_convective, mw_vfield** out_spin) {
  return wrap([&] {
    need(psi_a != nullptr && out_total != nullptr, "null argument");
    mwlab::PauliCurrentParts parts =
        mwlab::pauli_current_parts(psi_a->f, mass, to_scheme(scheme));
    *out_total = new mw_vfield{std::move(parts.total)};
    if (out_convective)
      *out_convective = new mw_vfield{std::move(parts.convective)};
    if (out_spin) *out_spin = new mw_vfield{std::move(parts.spin)};
  });
}

mw_status mw_spin_current(const mw_pfield* psi_a, double mass, mw_scheme scheme,
                          mw_vfield** out) {
  return wrap([&] {
    need(psi_a != nullptr && out != nullptr, "null argument");
    *out =
        new mw_vfield{mwlab::spin_current(psi_a->f, mass, to_scheme(scheme))};
  });
}

mw_status mw_reduction_residual(const mw_pfield* psi_a, double mass,
                                mw_scheme scheme, double* out) {
  return wrap([&] {
    need(psi_a != nullptr && out != nullptr, "null argument");
    *out = mwlab::reduction_residual(psi_a->f, mass, to_scheme(scheme));
  });
}

/* ---- topology ------------------------------------------------------ */

mw_status mw_circle_loop(const mw_grid* g, double cx, double cy, double radius,
                         int n_points, mw_loop** out) {
  return wrap([&] {
    need(g != nullptr && out != nullptr, "null argument");
    *out = new mw_loop{mwlab::circle_loop(g->g, cx, cy, radius, n_points)};
  });
}

mw_status mw_loop_create(const double* xy, int n_points, mw_loop** out) {
  return wrap([&] {
    need(xy != nullptr && out != nullptr, "null argument");
    need(n_points > 0, "empty loop");
    std::vector<std::array<double, 2>> pts(n_points);
    for (int i = 0; i < n_points; ++i) pts[i] = {xy[2 * i], xy[2 * i + 1]};
    *out = new mw_loop{mwlab::LoopPath(std::move(pts))};
  });
}

mw_status mw_boundary_loop(const mw_grid* g, mw_loop** out) {
  return wrap([&] {
    need(g != nullptr && out != nullptr, "null argument");
    *out = new mw_loop{mwlab::boundary_loop(g->g)};
  });
}

void mw_loop_free(mw_loop* l) { delete l; }

mw_status mw_loop_points(const mw_loop* l, double* xy, size_t capacity,
                         int* n_points) {
  return wrap([&] {
    need(l != nullptr, "loop handle is null");
    if (n_points) *n_points = static_cast<int>(l->l.size());
    if (xy) {
      need(capacity >= 2 * l->l.size(), "buffer too small");
      for (std::size_t i = 0; i < l->l.size(); ++i) {
        xy[2 * i] = l->l[i][0];
        xy[2 * i + 1] = l->l[i][1];
      }
    }
  });
}

mw_status mw_loop_integral(const mw_vfield* f, const mw_loop* l, double* out) {
  return wrap([&] {
    need(f != nullptr && l != nullptr && out != nullptr, "null argument");
    *out = mwlab::loop_integral(f->f, l->l);
  });
}

mw_status mw_winding_number(const mw_cfield* phi, const mw_loop* l, double eps0,
                            mw_scheme scheme, mw_winding_result* out) {
  return wrap([&] {
    need(phi != nullptr && l != nullptr && out != nullptr, "null argument");
    const mwlab::WindingResult w =
        mwlab::winding_number(phi->f, l->l, eps0, to_scheme(scheme));
    out->integral = w.integral;
    out->k = w.k;
    out->residual = w.residual;
    out->unwrapped = w.unwrapped;
    out->estimators_agree = w.estimators_agree ? 1 : 0;
  });
}

mw_status mw_vortex_scan(const mw_cfield* phi, double eps0, mw_vortex* vortices,
                         size_t capacity, size_t* count) {
  return wrap([&] {
    need(phi != nullptr && count != nullptr, "null argument");
    const auto found = mwlab::vortex_scan(phi->f, eps0);
    *count = found.size();
    if (!vortices) return;
    need(capacity >= found.size(), "buffer too small");
    for (std::size_t i = 0; i < found.size(); ++i) {
      vortices[i].ix = found[i].ix;
      vortices[i].iy = found[i].iy;
      vortices[i].charge = found[i].charge;
      vortices[i].low_density = found[i].low_density ? 1 : 0;
      vortices[i].under_resolved = found[i].under_resolved ? 1 : 0;
    }
  });
}

/* ---- propagator ---------------------------------------------------- */

mw_status mw_build_slit_potential(const mw_grid* g,
                                  const mw_slit_geometry* slits,
                                  mw_rfield** out) {
  return wrap([&] {
    need(g != nullptr && out != nullptr, "null argument");
    *out = new mw_rfield{mwlab::build_slit_potential(g->g, to_slits(slits))};
  });
}

mw_status mw_absorbing_mask(const mw_grid* g, int width_cells, double strength,
                            mw_rfield** out) {
  return wrap([&] {
    need(g != nullptr && out != nullptr, "null argument");
    *out = new mw_rfield{mwlab::absorbing_mask(g->g, width_cells, strength)};
  });
}

mw_status mw_split_step(const mw_cfield* phi, const mw_rfield* potential,
                        const mw_evolution_config* cfg, mw_cfield** out) {
  return wrap([&] {
    need(phi != nullptr && potential != nullptr && out != nullptr,
         "null argument");
    *out = new mw_cfield{
        mwlab::split_step(phi->f, potential->f, to_evolution(cfg))};
  });
}

mw_status mw_run_double_slit(const mw_grid* g, const mw_slit_geometry* slits,
                             const mw_evolution_config* cfg,
                             const mw_packet_params* packet, mw_fringe** out) {
  return wrap([&] {
    need(g != nullptr && packet != nullptr && out != nullptr, "null argument");
    mwlab::PacketParams p{packet->x0,      packet->y0, packet->width_x,
                          packet->width_y, packet->kx, packet->ky};
    *out = new mw_fringe{
        mwlab::run_double_slit(g->g, to_slits(slits), to_evolution(cfg), p)};
  });
}

void mw_fringe_free(mw_fringe* f) { delete f; }

mw_status mw_fringe_size(const mw_fringe* f, size_t* n) {
  return wrap([&] {
    need(f != nullptr && n != nullptr, "null argument");
    *n = f->p.y.size();
  });
}

mw_status mw_fringe_samples(const mw_fringe* f, double* y, double* intensity,
                            size_t capacity) {
  return wrap([&] {
    need(f != nullptr, "fringe handle is null");
    need(capacity >= f->p.y.size(), "buffer too small");
    if (y) std::memcpy(y, f->p.y.data(), f->p.y.size() * sizeof(double));
    if (intensity)
      std::memcpy(intensity, f->p.intensity.data(),
                  f->p.intensity.size() * sizeof(double));
  });
}

mw_status mw_fringe_result(const mw_fringe* f, mw_fringe_fit* out) {
  return wrap([&] {
    need(f != nullptr && out != nullptr, "null argument");
    fill_fit(f->p, out);
  });
}

mw_status mw_fringe_from_samples(const double* y, const double* intensity,
                                 size_t n, double central_halfwidth,
                                 mw_fringe** out) {
  return wrap([&] {
    need(y != nullptr && intensity != nullptr && out != nullptr,
         "null argument");
    mwlab::FringePattern p;
    p.y.assign(y, y + n);
    p.intensity.assign(intensity, intensity + n);
    mwlab::analyze_pattern(p, central_halfwidth);
    *out = new mw_fringe{std::move(p)};
  });
}

/* ---- interference -------------------------------------------------- */

mw_status mw_self_action_phase(double q, double q_prime, int k, double* out_s) {
  return wrap([&] {
    need(out_s != nullptr, "null argument");
    *out_s = mwlab::self_action_phase({q, q_prime}, k);
  });
}

mw_status mw_merging_wave(double psi_re, double psi_im, double s,
                          double* out_re, double* out_im) {
  return wrap([&] {
    need(out_re != nullptr && out_im != nullptr, "null argument");
    const auto m = mwlab::merging_wave({psi_re, psi_im}, s);
    *out_re = m.real();
    *out_im = m.imag();
  });
}

mw_status mw_fringe_intensity(double s, double rho, double* out) {
  return wrap([&] {
    need(out != nullptr, "null argument");
    *out = mwlab::fringe_intensity(s, rho);
  });
}

mw_status mw_conventional_intensity(const mw_conventional_setup* s, double y,
                                    mw_phase_convention convention,
                                    double* out) {
  return wrap([&] {
    need(out != nullptr, "null argument");
    *out = mwlab::conventional_intensity(
        to_setup(s), y,
        convention == MW_PHASE_FULL_ANGLE ? mwlab::PhaseConvention::full_angle
                                          : mwlab::PhaseConvention::half_angle);
  });
}

mw_status mw_path_difference(const mw_conventional_setup* s, double y,
                             double* out_exact, double* out_paraxial) {
  return wrap([&] {
    need(out_exact != nullptr && out_paraxial != nullptr, "null argument");
    const auto d = mwlab::path_difference(to_setup(s), y);
    *out_exact = d.exact;
    *out_paraxial = d.paraxial;
  });
}

mw_status mw_equivalence_residual(const mw_conventional_setup* s,
                                  double a_magnitude, int loop_k, double* out) {
  return wrap([&] {
    need(out != nullptr, "null argument");
    *out = mwlab::equivalence_residual(to_setup(s), a_magnitude, loop_k);
  });
}

mw_status mw_extract_qprime(double delta_r, double lambda, int k,
                            double* out_qprime, int* out_in_range) {
  return wrap([&] {
    need(out_qprime != nullptr, "null argument");
    const auto r = mwlab::extract_qprime(delta_r, lambda, k);
    *out_qprime = r.q_prime;
    if (out_in_range) *out_in_range = r.in_unit_interval ? 1 : 0;
  });
}

mw_status mw_visibility_sweep(const double* qq_prime, size_t n, int k_min,
                              int k_max, const double* weights, double* out) {
  return wrap([&] {
    need(qq_prime != nullptr && out != nullptr, "null argument");
    std::vector<double> w;
    if (weights) w.assign(weights, weights + (k_max - k_min + 1));
    for (size_t i = 0; i < n; ++i)
      out[i] = mwlab::class_visibility(qq_prime[i], k_min, k_max, w);
  });
}

mw_status mw_virial_estimate(double e0_ev, double v_t_volt,
                             mw_coupling_estimate* out) {
  return wrap([&] {
    need(out != nullptr, "null argument");
    const auto est = mwlab::virial_estimate(e0_ev, v_t_volt);
    out->t_ev = est.t_ev;
    out->v_ev = est.v_ev;
    out->lambda_t_angstrom = est.lambda_t_angstrom;
    out->v_over_c = est.v_over_c;
    out->v_t_volt = est.v_t_volt;
    out->q_prime_ratio = est.q_prime_ratio;
    out->q_prime_quoted = est.q_prime_quoted;
  });
}

mw_status mw_demo_experiment_numbers(double accelerating_volts,
                                     mw_demo_numbers* out) {
  return wrap([&] {
    need(out != nullptr, "null argument");
    const auto demo = mwlab::demo_experiment_numbers(accelerating_volts);
    out->accelerating_volts = demo.accelerating_volts;
    out->lambda_angstrom = demo.lambda_angstrom;
    out->lambda_quoted_angstrom = demo.lambda_quoted_angstrom;
    out->transverse_lambda_quoted_angstrom =
        demo.transverse_lambda_quoted_angstrom;
    out->transverse_volt_quoted = demo.transverse_volt_quoted;
    out->lambda_13p6_angstrom = demo.lambda_13p6_angstrom;
  });
}

mw_status mw_spin_shift(const mw_fringe* pattern, double epsilon,
                        mw_fringe** out_shifted, mw_spin_shift_result* out) {
  return wrap([&] {
    need(pattern != nullptr && out != nullptr, "null argument");
    mwlab::SpinShiftResult r = mwlab::spin_shift(pattern->p, epsilon);
    out->first_peak_y = r.first_peak_y;
    out->shifted_peak_y = r.shifted_peak_y;
    out->peak_shift = r.peak_shift;
    out->relative_shift = r.relative_shift;
    out->shift_bound = r.shift_bound;
    if (out_shifted) *out_shifted = new mw_fringe{std::move(r.shifted)};
  });
}

/* ---- io ------------------------------------------------------------ */

mw_status mw_cfield_save(const mw_cfield* f, const char* path) {
  return wrap([&] {
    need(f != nullptr && path != nullptr, "null argument");
    mwlab::save_field(path, f->f);
  });
}

mw_status mw_cfield_load(const char* path, mw_cfield** out) {
  return wrap([&] {
    need(path != nullptr && out != nullptr, "null argument");
    *out = new mw_cfield{mwlab::load_complex_field(path)};
  });
}

mw_status mw_cfield_write_csv(const mw_cfield* f, const char* path) {
  return wrap([&] {
    need(f != nullptr && path != nullptr, "null argument");
    mwlab::write_csv(path, f->f);
  });
}

mw_status mw_rfield_write_csv(const mw_rfield* f, const char* path) {
  return wrap([&] {
    need(f != nullptr && path != nullptr, "null argument");
    mwlab::write_csv(path, f->f);
  });
}

mw_status mw_vfield_write_csv(const mw_vfield* f, const char* path) {
  return wrap([&] {
    need(f != nullptr && path != nullptr, "null argument");
    mwlab::write_csv(path, f->f);
  });
}

mw_status mw_fringe_write_csv(const mw_fringe* f, const char* path) {
  return wrap([&] {
    need(f != nullptr && path != nullptr, "null argument");
    mwlab::write_fringe_csv(path, f->p);
  });
}

mw_status mw_format_double(double v, char* buf, size_t capacity) {
  return wrap([&] {
    need(buf != nullptr && capacity >= 32, "buffer too small");
    const std::string s = mwlab::format_double(v);
    need(s.size() + 1 <= capacity, "buffer too small");
    std::memcpy(buf, s.c_str(), s.size() + 1);
  });
}

/* ---- verify -------------------------------------------------------- */

mw_status mw_verify_run(uint64_t seed, int perturb_gamma,
                        mw_verify_report** out) {
  return wrap([&] {
    need(out != nullptr, "null argument");
    mwlab::VerifyOptions opt;
    opt.seed = seed;
    opt.perturb_gamma = perturb_gamma != 0;
    *out = new mw_verify_report{mwlab::run_verify(opt)};
  });
}

void mw_verify_report_free(mw_verify_report* r) { delete r; }

mw_status mw_verify_report_size(const mw_verify_report* r, size_t* n) {
  return wrap([&] {
    need(r != nullptr && n != nullptr, "null argument");
    *n = r->checks.size();
  });
}

mw_status mw_verify_report_entry(const mw_verify_report* r, size_t i,
                                 const char** suite, const char** name,
                                 double* measured, double* tolerance,
                                 int* passed) {
  return wrap([&] {
    need(r != nullptr, "report handle is null");
    need(i < r->checks.size(), "entry index out of range");
    const mwlab::VerifyCheck& c = r->checks[i];
    if (suite) *suite = c.suite.c_str();
    if (name) *name = c.name.c_str();
    if (measured) *measured = c.measured;
    if (tolerance) *tolerance = c.tolerance;
    if (passed) *passed = c.passed ? 1 : 0;
  });
}

}  // extern "C"
