#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "mwlab/propagator.hpp"

namespace mwlab {

struct CouplingStrength {
  double q = 1.0;        // fermion charge, fixed to 1 by convention
  double q_prime = 0.0;  // self-action charge
  double product() const { return q * q_prime; }
};

// S = 2 pi q q' k for winding class k.
double self_action_phase(const CouplingStrength& coupling, int k);

// psi + exp(i S) psi at the merging point.
std::complex<double> merging_wave(std::complex<double> psi, double s);

// 4 cos^2(S/2) rho.
double fringe_intensity(double s, double rho);

enum class PhaseConvention {
  half_angle,  // cos^2(theta/2), the convention used throughout
  full_angle,  // cos^2(theta), exposed for comparison only
};

struct ConventionalSetup {
  double wavelength = 0.0;
  double slit_separation = 0.0;
  double screen_distance = 0.0;

  double momentum() const { return 2.0 * M_PI / wavelength; }
};

// Validates positivity and the paraxial requirement L >= 5 d.
void validate(const ConventionalSetup& setup);

// Path-difference predictor: theta = p * dr with dr = y d / L (paraxial);
// returns cos^2(theta/2), normalized peak 1.
double conventional_intensity(const ConventionalSetup& setup, double y,
                              PhaseConvention convention = PhaseConvention::half_angle);

struct PathDifference {
  double exact = 0.0;     // r1 - r2 from two-point distances
  double paraxial = 0.0;  // y d / L
};
PathDifference path_difference(const ConventionalSetup& setup, double y);

// Distance of the contour phase p dr - q A dr (dr = k lambda, q = 1) to the
// nearest multiple of 2 pi: zero when the self-action potential carries the
// full momentum.
double equivalence_residual(const ConventionalSetup& setup, double a_magnitude,
                            int loop_k);

struct QPrimeResult {
  double q_prime = 0.0;
  bool in_unit_interval = true;
};

// q' = dr/(k lambda) under q = 1, flagged when outside [0, 1].
QPrimeResult extract_qprime(double delta_r, double lambda, int k);

// Visibility of the winding-class intensity pattern I_k = 4 cos^2(pi qq' k)
// over the window, with optional per-class weights (uniform by default):
// the contrast between even and odd classes,
//   |sum_k w_k (-1)^k I_k| / sum_k w_k I_k,
// which is the alternating-component amplitude of the class pattern over its
// mean level. Constant patterns have visibility 0 by definition. Half-integer
// couplings alternate 4,0,... and give 1; equidistributed phases (irrational
// couplings, wide windows) suppress the alternation toward 0.
double class_visibility(double qq_prime, int k_min, int k_max,
                        const std::vector<double>& weights = {});

// class_visibility per coupling value.
std::vector<std::pair<double, double>> visibility_sweep(
    const std::vector<double>& qq_values, int k_min, int k_max,
    const std::vector<double>& weights = {});

struct CouplingEstimate {
  double t_ev = 0.0;              // <T>
  double v_ev = 0.0;              // <V>, equals -2<T> exactly
  double lambda_t_angstrom = 0.0; // h / sqrt(2 m_e <T>)
  double v_over_c = 0.0;          // sqrt(2<T>/m_e c^2)
  double v_t_volt = 0.0;          // transverse potential input
  double q_prime_ratio = 0.0;     // |<V>| / V_T
  double q_prime_quoted = 1.8;    // value quoted in the source analysis
  std::string notes;
};

// Virial-theorem coupling estimate from a Coulomb bound-state energy (eV)
// and a transverse potential (volt). 2<T> + <V> = 0 holds exactly.
CouplingEstimate virial_estimate(double e0_ev, double v_t_volt);

struct DemoNumbers {
  double accelerating_volts = 0.0;
  double lambda_angstrom = 0.0;         // h / sqrt(2 m_e e V), nonrelativistic
  double lambda_quoted_angstrom = 0.05; // reference experiment value
  double transverse_lambda_quoted_angstrom = 500.0;
  double transverse_volt_quoted = 10.0;
  double lambda_13p6_angstrom = 0.0;    // cross-check at 13.6 eV
};

// Reference-experiment arithmetic: de Broglie wavelength at the given
// accelerating voltage plus the quoted transverse-field numbers.
DemoNumbers demo_experiment_numbers(double accelerating_volts = 50000.0);

struct SpinShiftResult {
  FringePattern shifted;
  double first_peak_y = 0.0;       // before the shift
  double shifted_peak_y = 0.0;
  double peak_shift = 0.0;         // displacement, signed
  double relative_shift = 0.0;     // |shift| / |first_peak_y|
  double shift_bound = 0.0;        // epsilon * n_fringes * spacing
};

// Applies the phase rescale S -> S (1 + epsilon) to a model pattern (phase
// linear in y), i.e. resamples I at (1 + epsilon) y, and reports the
// first-peak displacement. epsilon must stay perturbative (< 0.01).
SpinShiftResult spin_shift(const FringePattern& pattern, double epsilon = 1e-3);

}  // namespace mwlab
