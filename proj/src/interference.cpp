#include "mwlab/interference.hpp"

#include <algorithm>
#include <cmath>

#include "mwlab/errors.hpp"

namespace mwlab {

namespace {

// CODATA values, 6 significant digits; physical units enter only here.
constexpr double kPlanck = 6.62607e-34;    // J s
constexpr double kElectronMass = 9.10938e-31;  // kg
constexpr double kLightSpeed = 2.99792e8;  // m/s
constexpr double kElectronVolt = 1.60218e-19;  // J
constexpr double kAngstrom = 1e-10;        // m

double de_broglie_angstrom(double kinetic_ev) {
  const double p = std::sqrt(2.0 * kElectronMass * kinetic_ev * kElectronVolt);
  return kPlanck / p / kAngstrom;
}

}  // namespace

double self_action_phase(const CouplingStrength& coupling, int k) {
  return 2.0 * M_PI * coupling.product() * k;
}

std::complex<double> merging_wave(std::complex<double> psi, double s) {
  return psi + std::polar(1.0, s) * psi;
}

double fringe_intensity(double s, double rho) {
  require(rho >= 0.0, ErrorCode::invalid_argument,
          "density must be non-negative");
  const double c = std::cos(0.5 * s);
  return 4.0 * c * c * rho;
}

void validate(const ConventionalSetup& setup) {
  require(setup.wavelength > 0.0 && setup.slit_separation > 0.0 &&
              setup.screen_distance > 0.0,
          ErrorCode::invalid_argument, "setup lengths must be positive");
  require(setup.screen_distance >= 5.0 * setup.slit_separation,
          ErrorCode::invalid_argument,
          "paraxial setup requires screen distance >= 5 slit separations");
}

double conventional_intensity(const ConventionalSetup& setup, double y,
                              PhaseConvention convention) {
  validate(setup);
  const double dr = y * setup.slit_separation / setup.screen_distance;
  const double theta = setup.momentum() * dr;
  const double arg = convention == PhaseConvention::half_angle ? 0.5 * theta
                                                               : theta;
  const double c = std::cos(arg);
  return c * c;
}

PathDifference path_difference(const ConventionalSetup& setup, double y) {
  const double l = setup.screen_distance;
  const double half_d = 0.5 * setup.slit_separation;
  PathDifference out;
  out.exact = std::hypot(l, y + half_d) - std::hypot(l, y - half_d);
  out.paraxial = y * setup.slit_separation / setup.screen_distance;
  return out;
}

double equivalence_residual(const ConventionalSetup& setup, double a_magnitude,
                            int loop_k) {
  validate(setup);
  require(loop_k >= 1, ErrorCode::invalid_argument,
          "contour index must be at least 1");
  // Contour through the k-th maximum: dr = k lambda, phase (p - A) dr.
  const double dr = loop_k * setup.wavelength;
  const double phase = (setup.momentum() - a_magnitude) * dr;
  return std::abs(std::remainder(phase, 2.0 * M_PI));
}

QPrimeResult extract_qprime(double delta_r, double lambda, int k) {
  require(lambda > 0.0, ErrorCode::invalid_argument,
          "wavelength must be positive");
  require(k >= 1, ErrorCode::invalid_argument,
          "winding class must be at least 1");
  QPrimeResult out;
  out.q_prime = delta_r / (k * lambda);
  out.in_unit_interval = out.q_prime >= 0.0 && out.q_prime <= 1.0;
  return out;
}

double class_visibility(double qq_prime, int k_min, int k_max,
                        const std::vector<double>& weights) {
  require(k_max >= k_min, ErrorCode::invalid_argument,
          "winding window is empty");
  const std::size_t n = static_cast<std::size_t>(k_max - k_min) + 1;
  if (!weights.empty())
    require(weights.size() == n, ErrorCode::invalid_argument,
            "weight count must match the winding window");

  double alternating = 0.0;
  double total = 0.0;
  double i_min = 0.0, i_max = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    const int k = k_min + static_cast<int>(i);
    const double w = weights.empty() ? 1.0 : weights[i];
    require(w >= 0.0, ErrorCode::invalid_argument,
            "class weights must be non-negative");
    if (w == 0.0) continue;  // unpopulated classes carry no pattern
    const double c = std::cos(M_PI * qq_prime * k);
    const double intensity = 4.0 * c * c;
    if (!any) {
      i_min = i_max = intensity;
      any = true;
    } else {
      i_min = std::min(i_min, intensity);
      i_max = std::max(i_max, intensity);
    }
    alternating += w * ((k % 2 == 0) ? intensity : -intensity);
    total += w * intensity;
  }
  // A constant class pattern carries no fringes: visibility 0 by definition.
  if (!any || i_max - i_min <= 1e-12 * std::max(1.0, i_max)) return 0.0;
  if (total <= 0.0) return 0.0;
  return std::min(1.0, std::abs(alternating) / total);
}

std::vector<std::pair<double, double>> visibility_sweep(
    const std::vector<double>& qq_values, int k_min, int k_max,
    const std::vector<double>& weights) {
  std::vector<std::pair<double, double>> out;
  out.reserve(qq_values.size());
  for (double qq : qq_values)
    out.emplace_back(qq, class_visibility(qq, k_min, k_max, weights));
  return out;
}

CouplingEstimate virial_estimate(double e0_ev, double v_t_volt) {
  require(e0_ev < 0.0, ErrorCode::invalid_argument,
          "bound-state energy must be negative");
  require(v_t_volt > 0.0, ErrorCode::invalid_argument,
          "transverse potential must be positive");
  CouplingEstimate est;
  est.t_ev = -e0_ev;        // <T> = -E0
  est.v_ev = 2.0 * e0_ev;   // <V> = 2 E0, so 2<T> + <V> = 0 exactly
  est.lambda_t_angstrom = de_broglie_angstrom(est.t_ev);
  est.v_over_c = std::sqrt(2.0 * est.t_ev * kElectronVolt / kElectronMass) /
                 kLightSpeed;
  est.v_t_volt = v_t_volt;
  est.q_prime_ratio = std::abs(est.v_ev) / v_t_volt;
  est.notes =
      "q'_ratio = |<V>|/V_T; the quoted estimate takes q' ~ 1.8 against "
      "V_T ~ 20 V as an order-of-magnitude statement (27.2/20 = 1.36); "
      "both values reported.";
  return est;
}

DemoNumbers demo_experiment_numbers(double accelerating_volts) {
  require(accelerating_volts > 0.0, ErrorCode::invalid_argument,
          "accelerating voltage must be positive");
  DemoNumbers out;
  out.accelerating_volts = accelerating_volts;
  out.lambda_angstrom = de_broglie_angstrom(accelerating_volts);
  out.lambda_13p6_angstrom = de_broglie_angstrom(13.6);
  return out;
}

namespace {

double interpolate_profile(const FringePattern& p, double y) {
  const std::size_t n = p.y.size();
  if (y <= p.y.front()) return p.intensity.front();
  if (y >= p.y.back()) return p.intensity.back();
  const double dy = (p.y.back() - p.y.front()) / (n - 1);
  const double u = (y - p.y.front()) / dy;
  const std::size_t i0 = std::min(static_cast<std::size_t>(u), n - 2);
  const double f = u - i0;
  return (1.0 - f) * p.intensity[i0] + f * p.intensity[i0 + 1];
}

double first_positive_peak(const FringePattern& p) {
  for (double pk : p.peaks)
    if (pk > 1e-9) return pk;
  require(false, ErrorCode::numerical, "pattern has no positive-side peak");
  return 0.0;
}

}  // namespace

SpinShiftResult spin_shift(const FringePattern& pattern, double epsilon) {
  require(epsilon >= 0.0 && epsilon < 0.01, ErrorCode::invalid_argument,
          "spin shift must stay perturbative (0 <= epsilon < 0.01)");
  require(pattern.y.size() >= 3, ErrorCode::invalid_argument,
          "pattern too short");

  FringePattern base = pattern;
  analyze_pattern(base);

  SpinShiftResult out;
  out.shifted.y = base.y;
  out.shifted.intensity.resize(base.y.size());
  // S -> S (1 + eps) on a phase-linear pattern is a coordinate rescale:
  // the shifted profile samples the original at (1 + eps) y.
  if (epsilon == 0.0) {
    out.shifted.intensity = base.intensity;
  } else {
    for (std::size_t i = 0; i < base.y.size(); ++i)
      out.shifted.intensity[i] =
          interpolate_profile(base, (1.0 + epsilon) * base.y[i]);
  }
  analyze_pattern(out.shifted);

  out.first_peak_y = first_positive_peak(base);
  out.shifted_peak_y = first_positive_peak(out.shifted);
  out.peak_shift = out.shifted_peak_y - out.first_peak_y;
  out.relative_shift = std::abs(out.peak_shift) / std::abs(out.first_peak_y);
  const double spacing =
      base.spacing_peaks > 0.0 ? base.spacing_peaks : out.first_peak_y;
  out.shift_bound = epsilon * std::max(1, base.n_peaks) * spacing;
  return out;
}

}  // namespace mwlab
