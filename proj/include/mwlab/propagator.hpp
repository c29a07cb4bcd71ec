#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mwlab/fields.hpp"
#include "mwlab/fft.hpp"

namespace mwlab {

struct SlitGeometry {
  double barrier_x = 0.0;   // barrier column center
  double thickness = 0.0;   // along x
  double width = 0.0;       // slit opening along y
  double separation = 0.0;  // center-to-center; 0 selects a single slit
  double v0 = 0.0;          // barrier height
};

struct PacketParams {
  double x0 = 0.0;
  double y0 = 0.0;
  double width_x = 1.0;
  double width_y = 1.0;
  double kx = 0.0;
  double ky = 0.0;
};

struct EvolutionConfig {
  double dt = 0.0;
  int n_steps = 0;
  double mass = 1.0;
  int absorber_cells = 0;        // 0 disables the absorber
  double absorber_strength = 0.0;
  double screen_x = 0.0;
  int snapshot_every = 0;        // 0 disables snapshot dumps
  std::string snapshot_dir;
};

struct FringePattern {
  std::vector<double> y;
  std::vector<double> intensity;
  std::vector<double> peaks;   // refined peak positions, ascending
  double spacing_peaks = 0.0;  // median peak-to-peak distance
  double spacing_fft = 0.0;    // dominant spectral period
  double visibility = 0.0;     // (Imax - Imin)/(Imax + Imin), central window
  int n_peaks = 0;
  bool spacing_reliable = false;  // >= 3 peaks and both estimators agree
};

// V = v0 on the barrier strip minus the slit openings, 0 elsewhere.
RealField2D build_slit_potential(const GridSpec& grid, const SlitGeometry& slits);

// Multiplicative cos^2-ramp mask: 1 in the interior, exp(-strength) on the
// outermost cells. width >= 8 cells.
RealField2D absorbing_mask(const GridSpec& grid, int width_cells,
                           double strength);

// One Strang step exp(-i V dt/2) exp(-i k^2 dt / 2m) exp(-i V dt/2) with
// periodic spectral kinetic part. Validates dt * max(V) < pi (phase wrap).
ComplexField2D split_step(const ComplexField2D& phi, const RealField2D& potential,
                          const EvolutionConfig& cfg);

// Plan-caching stepper for long runs; same splitting as split_step.
class SplitStepper {
public:
  SplitStepper(const GridSpec& grid, const RealField2D& potential,
               double dt, double mass);

  // Advances phi by one step in place; throws ErrorCode::numerical with a
  // diagnostic if the field stops being finite.
  void step(ComplexField2D& phi) const;

  // Kinetic + potential energy expectation (no absorber terms).
  double energy(const ComplexField2D& phi) const;

private:
  GridSpec grid_;
  double mass_;
  std::vector<cplx> exp_half_v_;
  std::vector<cplx> exp_kinetic_;
  std::vector<double> kinetic_;
  std::vector<double> potential_;
  std::shared_ptr<Fft2d> fft_;
};

// Peak/valley analysis of a screen profile. central_halfwidth limits the
// visibility window and fit_halfwidth the spacing fit (<= 0 means the full
// profile); spacing comes from the peak-to-peak median and from the
// dominant discrete Fourier frequency over the fit window.
void analyze_pattern(FringePattern& pattern, double central_halfwidth = 0.0,
                     double fit_halfwidth = 0.0);

// Full experiment: Gaussian packet from the source side, split-step
// evolution through the slit barrier with absorbing edges, time-integrated
// |psi|^2 accumulated along the screen column, fringe fit of the result.
FringePattern run_double_slit(const GridSpec& grid, const SlitGeometry& slits,
                              const EvolutionConfig& cfg,
                              const PacketParams& packet);

}  // namespace mwlab
