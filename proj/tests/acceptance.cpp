// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 9 drives the CLI binary (first argument).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "mwlab/calculus.hpp"
#include "mwlab/currents.hpp"
#include "mwlab/interference.hpp"
#include "mwlab/propagator.hpp"
#include "mwlab/spin_algebra.hpp"
#include "mwlab/synth.hpp"
#include "mwlab/topology.hpp"
#include "mwlab/verify.hpp"

namespace fs = std::filesystem;
using namespace mwlab;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool passed,
            const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", passed ? "PASS" : "FAIL", number,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!passed) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

// 1. Winding quantization on a 512^2 grid, 512-point loops.
void criterion_winding() {
  const GridSpec g = make_grid(512, 512, 8.0, 8.0);
  double worst_residual = 0.0;
  double worst_case_seconds = 0.0;
  bool all_match = true, all_agree = true;
  for (int m = -3; m <= 3; ++m) {
    if (m == 0) continue;
    const auto t0 = Clock::now();
    const ComplexField2D phi = vortex_field(g, {{0.0, 0.0, m}}, 0.0);
    const WindingResult w = winding_number(phi, circle_loop(g, 0, 0, 1.0, 512));
    worst_case_seconds = std::max(worst_case_seconds, seconds_since(t0));
    worst_residual = std::max(worst_residual, w.residual);
    all_match = all_match && (w.k == m);
    all_agree = all_agree && w.estimators_agree;
  }
  report(1, "winding quantization m in {-3..3}",
         all_match && all_agree && worst_residual < 1e-3 &&
             worst_case_seconds < 1.0,
         fmt("max residual %.2e (tol 1e-3), slowest case %.2f s", worst_residual,
             worst_case_seconds));
}

// 2. Double-slit fringe law on a >= 512^2 grid against lambda L / d.
void criterion_fringe_law() {
  const auto t0 = Clock::now();
  const GridSpec g = make_grid(512, 512, 56.0, 28.0);
  const SlitGeometry slits{-10.0, 0.4, 0.8, 3.2, 640.0};
  const PacketParams packet{-15.5, 0.0, 1.2, 2.6, 16.0, 0.0};
  const EvolutionConfig evo{1.05e-3, 2900, 1.0, 48, 0.35, 22.0, 0, ""};
  const FringePattern p = run_double_slit(g, slits, evo, packet);
  const double predicted = (2.0 * M_PI / packet.kx) *
                           (evo.screen_x - slits.barrier_x) / slits.separation;
  const double deviation = std::abs(p.spacing_peaks - predicted) / predicted;
  const double elapsed = seconds_since(t0);
  report(2, "double-slit spacing within 5% of lambda L / d",
         p.spacing_reliable && deviation < 0.05 && p.visibility > 0.6 &&
             elapsed < 300.0,
         fmt("deviation %.2f%%, visibility %.3f, %.0f s", 100.0 * deviation,
             p.visibility, elapsed));
}

// 3. Dirac -> Pauli reduction: spectral residual and central2 order.
void criterion_reduction() {
  const GridSpec g = make_grid(64, 64, 8.0, 8.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const PauliField2D psi = random_band_limited_pauli(g, 1000 + trial, 6);
    worst = std::max(worst, reduction_residual(psi, 1.0));
  }

  auto sampled = [](const GridSpec& gg) {
    PauliField2D psi(gg);
    for (int iy = 0; iy < gg.ny; ++iy)
      for (int ix = 0; ix < gg.nx; ++ix) {
        const double x = 2.0 * M_PI * gg.x(ix) / gg.lx;
        const double y = 2.0 * M_PI * gg.y(iy) / gg.ly;
        psi(ix, iy, 0) = cplx(std::cos(x) + 0.2 * std::sin(2 * y),
                              0.3 * std::sin(x + 2 * y));
        psi(ix, iy, 1) = cplx(0.4 * std::cos(2 * x - y), 0.5 * std::sin(y));
      }
    return psi;
  };
  const double r1 = reduction_residual(sampled(make_grid(64, 64, 8.0, 8.0)),
                                       1.0, DiffScheme::central2);
  const double r2 = reduction_residual(sampled(make_grid(128, 128, 8.0, 8.0)),
                                       1.0, DiffScheme::central2);
  const double r3 = reduction_residual(sampled(make_grid(256, 256, 8.0, 8.0)),
                                       1.0, DiffScheme::central2);
  const double order_a = std::log2(r1 / r2);
  const double order_b = std::log2(r2 / r3);
  report(3, "Dirac-Pauli reduction residual",
         worst < 1e-8 && std::abs(order_a - 2.0) <= 0.2 &&
             std::abs(order_b - 2.0) <= 0.2,
         fmt("spectral max %.2e (tol 1e-8), central2 orders %.2f, %.2f", worst,
             order_a, order_b));
}

// 4. Spin-curl identity: antisymmetrized-gradient vs curl(M)/2m routes.
void criterion_spin_curl() {
  auto sampled = [](const GridSpec& gg) {
    PauliField2D psi(gg);
    for (int iy = 0; iy < gg.ny; ++iy)
      for (int ix = 0; ix < gg.nx; ++ix) {
        const double x = 2.0 * M_PI * gg.x(ix) / gg.lx;
        const double y = 2.0 * M_PI * gg.y(iy) / gg.ly;
        psi(ix, iy, 0) =
            cplx(std::cos(2 * x) + 0.3 * std::sin(y), 0.4 * std::sin(x + y));
        psi(ix, iy, 1) =
            cplx(0.5 * std::cos(x - 2 * y), 0.2 + 0.6 * std::sin(2 * y));
      }
    return psi;
  };
  auto max_diff = [](const PauliField2D& psi) {
    const VectorField2D a = spin_current(psi, 1.0, DiffScheme::central2);
    const VectorField2D b = spin_current_antisym(psi, 1.0, DiffScheme::central2);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i)
      worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
    return worst;
  };
  const double d1 = max_diff(sampled(make_grid(64, 64, 8.0, 8.0)));
  const double d2 = max_diff(sampled(make_grid(128, 128, 8.0, 8.0)));
  const double d3 = max_diff(sampled(make_grid(256, 256, 8.0, 8.0)));
  const double order_a = std::log2(d1 / d2);
  const double order_b = std::log2(d2 / d3);
  report(4, "spin-curl identity second-order agreement",
         std::abs(order_a - 2.0) <= 0.3 && std::abs(order_b - 2.0) <= 0.3,
         fmt("errors %.2e -> %.2e -> %.2e", d1, d2, d3) +
             fmt(", orders %.2f, %.2f", order_a, order_b));
}

// 5. Bound-state arithmetic and reference numbers.
void criterion_virial() {
  const CouplingEstimate est = virial_estimate(-13.6, 20.0);
  const DemoNumbers demo = demo_experiment_numbers(50000.0);
  const bool exact = est.t_ev == 13.6 && est.v_ev == -27.2;
  const bool lambda_ok = std::abs(est.lambda_t_angstrom - 3.32) <= 0.02;
  const bool v_ok = std::abs(est.v_over_c - 7.3e-3) / 7.3e-3 <= 0.05;
  const bool demo_ok = std::abs(demo.lambda_angstrom - 0.05) / 0.05 <= 0.15;
  report(5, "virial estimate and reference wavelengths",
         exact && lambda_ok && v_ok && demo_ok,
         fmt("T=%.1f eV, lambda_T=%.4f A, ", est.t_ev, est.lambda_t_angstrom) +
             fmt("v/c=%.2e, 50kV->%.4f A", est.v_over_c, demo.lambda_angstrom));
}

// 6. Coupling extraction and the contour-phase equivalence.
void criterion_coupling_extraction() {
  const ConventionalSetup setup{0.05, 1.0, 20.0};
  const double q = extract_qprime(setup.wavelength, setup.wavelength, 1).q_prime;
  const double residual = equivalence_residual(setup, setup.momentum(), 1);
  report(6, "q' extraction and contour equivalence",
         q == 1.0 && residual <= 1e-12,
         fmt("q'=%.17g, residual %.2e (tol 1e-12)", q, residual));
}

// 7. Nonperturbative limit: visibility anchors and det slash criterion.
void criterion_nonperturbative() {
  const double v0 = class_visibility(0.0, 0, 200);
  const double v_half = class_visibility(0.5, 0, 1);
  const double golden = 0.5 * (1.0 + std::sqrt(5.0));
  const double v_strong = class_visibility(10.0 * golden, 0, 200);
  const double det = std::abs(det_slash({1.0, 1.0, 0.0, 0.0}));
  report(7, "no-interference limit and det criterion",
         v0 == 0.0 && std::abs(v_half - 1.0) <= 1e-12 && v_strong < 0.05 &&
             det <= 1e-12,
         fmt("vis(0)=%.1f, vis(1/2)=%.3f, vis(10 phi)=%.4f, ", v0, v_half,
             v_strong) +
             fmt("|det|=%.2e", det));
}

// 8. Propagator integrity: unitarity and free drift.
void criterion_propagator() {
  const GridSpec g = make_grid(256, 256, 32.0, 32.0);
  const RealField2D v(g);
  ComplexField2D phi = gaussian_packet(g, -6.0, 0.0, 2.0, 1.5, 0.0);
  SplitStepper stepper(g, v, 5e-3, 1.0);
  for (int s = 0; s < 1000; ++s) stepper.step(phi);
  const double drift = std::abs(norm(phi) - 1.0);

  const RealField2D rho = density(phi);
  double cx = 0.0;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) cx += g.x(ix) * rho(ix, iy);
  cx *= g.cell_area();
  const double traveled = cx - (-6.0);
  const double expected = 1.5 * 5e-3 * 1000;
  const double vel_err = std::abs(traveled - expected) / expected;
  report(8, "unitarity and free-packet drift",
         drift < 1e-10 && vel_err < 0.01,
         fmt("norm drift %.2e over 1000 steps (tol 1e-10), velocity error "
             "%.2e (tol 1e-2)",
             drift, vel_err));
}

// 9. Determinism: identical simulate runs emit byte-identical CSV.
void criterion_determinism(const std::string& cli) {
  const fs::path work = fs::temp_directory_path() / "mwlab_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);
  const fs::path cfg = work / "sim.ini";
  {
    std::ofstream out(cfg);
    out << "[grid]\nnx = 256\nny = 96\nlx = 28.0\nly = 16.8\n\n"
           "[packet]\nx0 = -8.5\nwidth_x = 1.0\nwidth_y = 2.2\nkx = 16.0\n\n"
           "[slits]\nbarrier_x = -5.0\nthickness = 0.4\nwidth = 0.66\n"
           "separation = 2.3\nv0 = 640.0\n\n"
           "[evolution]\ndt = 1.05e-3\nsteps = 1350\nabsorber_cells = 10\n"
           "absorber_strength = 0.35\nscreen_x = 11.0\n";
  }
  auto run_once = [&](const std::string& out_dir) {
    const std::string cmd = cli + " simulate --config " + cfg.string() +
                            " --out " + out_dir + " --seed 7 > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  const int rc_a = run_once((work / "a").string());
  const int rc_b = run_once((work / "b").string());
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::string csv_a = slurp(work / "a" / "screen.csv");
  const std::string csv_b = slurp(work / "b" / "screen.csv");
  report(9, "simulate re-runs are byte identical",
         rc_a == 0 && rc_b == 0 && !csv_a.empty() && csv_a == csv_b,
         fmt("%.0f bytes compared", static_cast<double>(csv_a.size())));
  fs::remove_all(work);
}

// 10. The full verify suite runs green inside its time budget.
void criterion_verify() {
  const auto t0 = Clock::now();
  const std::vector<VerifyCheck> checks = run_verify({});
  const double elapsed = seconds_since(t0);
  std::size_t failures = 0;
  for (const VerifyCheck& c : checks)
    if (!c.passed) ++failures;
  report(10, "verify suite green under 10 minutes",
         failures == 0 && elapsed < 600.0,
         fmt("%.0f checks, %.0f failures, %.1f s", static_cast<double>(checks.size()),
             static_cast<double>(failures), elapsed));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <mwlab-binary>\n");
    return 2;
  }
  criterion_winding();
  criterion_fringe_law();
  criterion_reduction();
  criterion_spin_curl();
  criterion_virial();
  criterion_coupling_extraction();
  criterion_nonperturbative();
  criterion_propagator();
  criterion_determinism(argv[1]);
  criterion_verify();
  if (g_failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
