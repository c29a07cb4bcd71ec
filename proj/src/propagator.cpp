#include "mwlab/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>

#include "internal.hpp"
#include "mwlab/calculus.hpp"
#include "mwlab/io.hpp"

namespace mwlab {

namespace {

bool in_slit(const SlitGeometry& s, double y) {
  if (s.separation == 0.0) return std::abs(y) < 0.5 * s.width;
  return std::abs(y - 0.5 * s.separation) < 0.5 * s.width ||
         std::abs(y + 0.5 * s.separation) < 0.5 * s.width;
}

void validate_slits(const GridSpec& g, const SlitGeometry& s) {
  require(s.v0 > 0.0, ErrorCode::invalid_argument,
          "barrier height v0 must be positive");
  require(s.thickness >= g.hx(), ErrorCode::invalid_argument,
          "barrier thickness under-resolved (need thickness >= hx)");
  require(s.width > 3.0 * g.hy(), ErrorCode::invalid_argument,
          "slit width under-resolved (need width > 3 hy)");
  if (s.separation != 0.0)
    require(s.separation > s.width, ErrorCode::invalid_argument,
            "slit separation must exceed slit width (or be 0 for one slit)");
  const double x_lo = g.x(0), x_hi = g.x(g.nx - 1);
  require(s.barrier_x - 0.5 * s.thickness > x_lo &&
              s.barrier_x + 0.5 * s.thickness < x_hi,
          ErrorCode::invalid_argument, "barrier outside the grid");
  const double y_hi = g.y(g.ny - 1);
  require(0.5 * s.separation + 0.5 * s.width < y_hi,
          ErrorCode::invalid_argument, "slit openings outside the grid");
}

void validate_evolution(const EvolutionConfig& cfg, double v_max) {
  require(cfg.dt > 0.0, ErrorCode::invalid_argument, "dt must be positive");
  require(cfg.n_steps >= 0, ErrorCode::invalid_argument,
          "step count must be non-negative");
  require(cfg.mass > 0.0, ErrorCode::invalid_argument, "mass must be positive");
  require(cfg.dt * v_max < M_PI, ErrorCode::invalid_argument,
          "dt * max(V) >= pi: potential phase wraps per step");
}

}  // namespace

RealField2D build_slit_potential(const GridSpec& grid, const SlitGeometry& slits) {
  validate_slits(grid, slits);
  RealField2D v(grid);
  for (int ix = 0; ix < grid.nx; ++ix) {
    if (std::abs(grid.x(ix) - slits.barrier_x) > 0.5 * slits.thickness) continue;
    for (int iy = 0; iy < grid.ny; ++iy) {
      if (!in_slit(slits, grid.y(iy))) v(ix, iy) = slits.v0;
    }
  }
  return v;
}

RealField2D absorbing_mask(const GridSpec& grid, int width_cells,
                           double strength) {
  require(width_cells >= 8, ErrorCode::invalid_argument,
          "absorber width must be at least 8 cells");
  require(2 * width_cells < grid.nx && 2 * width_cells < grid.ny,
          ErrorCode::invalid_argument, "absorber overlaps itself");
  require(strength > 0.0, ErrorCode::invalid_argument,
          "absorber strength must be positive");
  // cos^2-shaped ramp depth: 0 at the inner boundary, 1 on the edge cells.
  // Distance is measured from the periodic seam (row 0 = row n), which keeps
  // the mask mirror-symmetric about the domain center.
  auto ramp = [&](int dist_to_edge) {
    if (dist_to_edge >= width_cells) return 1.0;
    const double t = 1.0 - static_cast<double>(dist_to_edge) / width_cells;
    const double s = std::sin(0.5 * M_PI * t);
    return std::exp(-strength * s * s);
  };
  RealField2D mask(grid);
  for (int iy = 0; iy < grid.ny; ++iy) {
    const double my = ramp(std::min(iy, grid.ny - iy));
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double mx = ramp(std::min(ix, grid.nx - ix));
      mask(ix, iy) = mx * my;
    }
  }
  return mask;
}

SplitStepper::SplitStepper(const GridSpec& grid, const RealField2D& potential,
                           double dt, double mass)
    : grid_(grid), mass_(mass) {
  require(grid.same_shape(potential.grid()), ErrorCode::grid_mismatch,
          "potential grid mismatch");
  require(dt > 0.0 && mass > 0.0, ErrorCode::invalid_argument,
          "dt and mass must be positive");
  potential_ = potential.values();
  exp_half_v_.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double phase = -0.5 * dt * potential_[i];
    exp_half_v_[i] = cplx(std::cos(phase), std::sin(phase));
  }
  kinetic_.resize(grid.size());
  exp_kinetic_.resize(grid.size());
  for (int iy = 0; iy < grid.ny; ++iy) {
    const double ky = grid.ky(iy);
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double kx = grid.kx(ix);
      const double t = 0.5 * (kx * kx + ky * ky) / mass;
      const std::size_t idx = grid.index(ix, iy);
      kinetic_[idx] = t;
      const double phase = -dt * t;
      exp_kinetic_[idx] = cplx(std::cos(phase), std::sin(phase));
    }
  }
  fft_ = detail::shared_fft(grid.nx, grid.ny);
}

void SplitStepper::step(ComplexField2D& phi) const {
  require(grid_.same_shape(phi.grid()), ErrorCode::grid_mismatch,
          "field grid mismatch");
  cplx* v = phi.values().data();
  const std::size_t n = grid_.size();
  for (std::size_t i = 0; i < n; ++i) v[i] *= exp_half_v_[i];
  fft_->forward(v);
  for (std::size_t i = 0; i < n; ++i) v[i] *= exp_kinetic_[i];
  fft_->inverse(v);
  double check = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    v[i] *= exp_half_v_[i];
    check += std::norm(v[i]);
  }
  require(std::isfinite(check), ErrorCode::numerical,
          "non-finite field after split step (dt too large or bad potential)");
}

double SplitStepper::energy(const ComplexField2D& phi) const {
  require(grid_.same_shape(phi.grid()), ErrorCode::grid_mismatch,
          "field grid mismatch");
  detail::CompensatedSum pot;
  for (std::size_t i = 0; i < grid_.size(); ++i)
    pot.add(potential_[i] * std::norm(phi.values()[i]));
  std::vector<cplx> hat(phi.values());
  fft_->forward(hat.data());
  detail::CompensatedSum kin;
  for (std::size_t i = 0; i < grid_.size(); ++i)
    kin.add(kinetic_[i] * std::norm(hat[i]));
  const double area = grid_.cell_area();
  const double ninv = 1.0 / static_cast<double>(grid_.size());
  return pot.value() * area + kin.value() * area * ninv;
}

ComplexField2D split_step(const ComplexField2D& phi, const RealField2D& potential,
                          const EvolutionConfig& cfg) {
  validate_evolution(cfg, potential.max());
  SplitStepper stepper(phi.grid(), potential, cfg.dt, cfg.mass);
  ComplexField2D out = phi;
  stepper.step(out);
  return out;
}

namespace {

// Quadratic vertex through (i-1, i, i+1); returns the refined offset in
// [-0.5, 0.5] around i.
double parabolic_offset(double ym, double y0, double yp) {
  const double denom = ym - 2.0 * y0 + yp;
  if (denom == 0.0) return 0.0;
  double d = 0.5 * (ym - yp) / denom;
  return std::clamp(d, -0.5, 0.5);
}

std::vector<double> find_peaks(const std::vector<double>& y,
                               const std::vector<double>& in) {
  std::vector<double> peaks;
  if (in.size() < 3) return peaks;
  double imax = *std::max_element(in.begin(), in.end());
  if (imax <= 0.0) return peaks;
  const double floor_level = 0.12 * imax;
  const double dy = y[1] - y[0];
  for (std::size_t i = 1; i + 1 < in.size(); ++i) {
    if (in[i] <= floor_level) continue;
    if (in[i] > in[i - 1] && in[i] >= in[i + 1]) {
      const double off = parabolic_offset(in[i - 1], in[i], in[i + 1]);
      peaks.push_back(y[i] + off * dy);
    }
  }
  return peaks;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  if (v.size() % 2 == 1) return v[mid];
  return 0.5 * (v[mid - 1] + v[mid]);
}

// Dominant discrete Fourier period of the Hann-windowed profile. Bins
// whose period exceeds a third of the span belong to the envelope, not the
// fringes, and are skipped; a fringe must repeat at least three times.
double dominant_period(const std::vector<double>& y,
                       const std::vector<double>& in) {
  const std::size_t n = in.size();
  if (n < 16) return 0.0;
  double mean = 0.0;
  for (double v : in) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> windowed(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double hann = 0.5 - 0.5 * std::cos(2.0 * M_PI * j / (n - 1));
    windowed[j] = (in[j] - mean) * hann;
  }
  std::vector<double> mag(n / 2 + 1, 0.0);
  const std::size_t m_lo = 3;
  for (std::size_t m = m_lo; m <= n / 2; ++m) {
    double re = 0.0, im = 0.0;
    const double w = 2.0 * M_PI * static_cast<double>(m) / n;
    for (std::size_t j = 0; j < n; ++j) {
      re += windowed[j] * std::cos(w * j);
      im -= windowed[j] * std::sin(w * j);
    }
    mag[m] = std::hypot(re, im);
  }
  std::size_t best = m_lo;
  for (std::size_t m = m_lo + 1; m <= n / 2; ++m)
    if (mag[m] > mag[best]) best = m;
  if (mag[best] == 0.0) return 0.0;
  double refined = static_cast<double>(best);
  if (best > m_lo && best < n / 2)
    refined += parabolic_offset(mag[best - 1], mag[best], mag[best + 1]);
  const double sample_spacing = y[1] - y[0];
  return static_cast<double>(n) * sample_spacing / refined;
}

}  // namespace

void analyze_pattern(FringePattern& pattern, double central_halfwidth,
                     double fit_halfwidth) {
  require(pattern.y.size() == pattern.intensity.size(),
          ErrorCode::invalid_argument, "pattern sample size mismatch");
  pattern.peaks.clear();
  pattern.spacing_peaks = 0.0;
  pattern.spacing_fft = 0.0;
  pattern.visibility = 0.0;
  pattern.n_peaks = 0;
  pattern.spacing_reliable = false;
  if (pattern.y.size() < 3) return;

  // Fit window: fringes are read inside it; outside, envelope tails and
  // absorber-edge remnants would pollute the estimators.
  std::vector<double> fit_y = pattern.y;
  std::vector<double> fit_i = pattern.intensity;
  if (fit_halfwidth > 0.0) {
    fit_y.clear();
    fit_i.clear();
    for (std::size_t j = 0; j < pattern.y.size(); ++j) {
      if (std::abs(pattern.y[j]) <= fit_halfwidth) {
        fit_y.push_back(pattern.y[j]);
        fit_i.push_back(pattern.intensity[j]);
      }
    }
    if (fit_y.size() < 3) {
      fit_y = pattern.y;
      fit_i = pattern.intensity;
    }
  }

  pattern.peaks = find_peaks(fit_y, fit_i);
  pattern.n_peaks = static_cast<int>(pattern.peaks.size());
  if (pattern.peaks.size() >= 2) {
    std::vector<double> gaps;
    for (std::size_t i = 1; i < pattern.peaks.size(); ++i)
      gaps.push_back(pattern.peaks[i] - pattern.peaks[i - 1]);
    pattern.spacing_peaks = median(gaps);
  }
  pattern.spacing_fft = dominant_period(fit_y, fit_i);

  double lo = pattern.y.front(), hi = pattern.y.back();
  if (central_halfwidth > 0.0) {
    lo = -central_halfwidth;
    hi = central_halfwidth;
  }
  double imax = 0.0, imin = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < pattern.y.size(); ++i) {
    if (pattern.y[i] < lo || pattern.y[i] > hi) continue;
    const double v = pattern.intensity[i];
    if (!any) {
      imax = imin = v;
      any = true;
    } else {
      imax = std::max(imax, v);
      imin = std::min(imin, v);
    }
  }
  if (any && imax + imin > 0.0)
    pattern.visibility = (imax - imin) / (imax + imin);

  if (pattern.n_peaks >= 3 && pattern.spacing_peaks > 0.0 &&
      pattern.spacing_fft > 0.0) {
    const double rel = std::abs(pattern.spacing_peaks - pattern.spacing_fft) /
                       pattern.spacing_fft;
    pattern.spacing_reliable = rel <= 0.15;
  }
}

FringePattern run_double_slit(const GridSpec& grid, const SlitGeometry& slits,
                              const EvolutionConfig& cfg,
                              const PacketParams& packet) {
  const RealField2D potential = build_slit_potential(grid, slits);
  validate_evolution(cfg, slits.v0);
  require(packet.x0 < slits.barrier_x - 0.5 * slits.thickness,
          ErrorCode::invalid_argument, "packet must start before the barrier");
  require(cfg.screen_x > slits.barrier_x + 0.5 * slits.thickness,
          ErrorCode::invalid_argument, "screen must sit beyond the barrier");
  require(packet.kx > 0.0, ErrorCode::invalid_argument,
          "packet must move toward the barrier (kx > 0)");

  const int screen_ix =
      grid.nx / 2 + static_cast<int>(std::lround(cfg.screen_x / grid.hx()));
  require(screen_ix > cfg.absorber_cells &&
              screen_ix < grid.nx - 1 - cfg.absorber_cells,
          ErrorCode::invalid_argument, "screen column inside the absorber");

  ComplexField2D phi =
      gaussian_packet_aniso(grid, packet.x0, packet.y0, packet.width_x,
                            packet.width_y, packet.kx, packet.ky);
  SplitStepper stepper(grid, potential, cfg.dt, cfg.mass);
  RealField2D mask;
  if (cfg.absorber_cells > 0)
    mask = absorbing_mask(grid, cfg.absorber_cells, cfg.absorber_strength);

  const int row_lo = cfg.absorber_cells;
  const int row_hi = grid.ny - cfg.absorber_cells;
  std::vector<double> accum(row_hi - row_lo, 0.0);

  for (int step = 0; step < cfg.n_steps; ++step) {
    stepper.step(phi);
    if (cfg.absorber_cells > 0) {
      for (std::size_t i = 0; i < grid.size(); ++i)
        phi.values()[i] *= mask.values()[i];
    }
    for (int iy = row_lo; iy < row_hi; ++iy)
      accum[iy - row_lo] += std::norm(phi(screen_ix, iy)) * cfg.dt;
    if (cfg.snapshot_every > 0 && (step + 1) % cfg.snapshot_every == 0) {
      char name[64];
      std::snprintf(name, sizeof(name), "snapshot_%06d.mwf", step + 1);
      std::filesystem::path dir(cfg.snapshot_dir.empty() ? "." : cfg.snapshot_dir);
      save_field((dir / name).string(), phi);
    }
  }

  FringePattern pattern;
  pattern.y.reserve(accum.size());
  for (int iy = row_lo; iy < row_hi; ++iy) pattern.y.push_back(grid.y(iy));
  pattern.intensity = std::move(accum);

  // Visibility window: quarter of the single-slit envelope's first zero.
  // Fit window: the envelope central lobe, kept clear of the absorber.
  const double lambda = 2.0 * M_PI / packet.kx;
  const double screen_distance = cfg.screen_x - slits.barrier_x;
  const double envelope_zero = lambda * screen_distance / slits.width;
  const double central = 0.25 * envelope_zero;
  const double interior = grid.y(row_hi - 1);
  const double fit = std::min(0.85 * envelope_zero, 0.75 * interior);
  analyze_pattern(pattern, central, fit);
  return pattern;
}

}  // namespace mwlab
