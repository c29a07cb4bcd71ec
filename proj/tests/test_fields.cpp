#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <random>

#include "mwlab/calculus.hpp"
#include "mwlab/currents.hpp"
#include "mwlab/errors.hpp"
#include "mwlab/spin_algebra.hpp"
#include "mwlab/synth.hpp"
#include "oracles.hpp"

using namespace mwlab;

TEST_CASE("make_grid computes spacings and rejects bad shapes") {
  const GridSpec g = make_grid(256, 256, 40.0, 40.0);
  CHECK(g.hx() == doctest::Approx(0.15625).epsilon(1e-15));
  CHECK(g.hy() == doctest::Approx(0.15625).epsilon(1e-15));

  CHECK_NOTHROW(make_grid(8, 8, 1.0, 1.0));
  CHECK_THROWS_AS(make_grid(4, 8, 1.0, 1.0), Error);
  CHECK_THROWS_AS(make_grid(8, 8, -1.0, 1.0), Error);
  CHECK_THROWS_AS(make_grid(8, 8, 0.0, 1.0), Error);
}

TEST_CASE("grid coordinates are mirror-symmetric to the bit") {
  const GridSpec g = make_grid(64, 48, 7.3, 5.1);
  for (int i = 1; i < g.nx; ++i) CHECK(g.x(g.nx - i) == -g.x(i));
  CHECK(g.x(g.nx / 2) == 0.0);
}

TEST_CASE("gaussian packet is normalized") {
  const GridSpec g = make_grid(128, 128, 20.0, 20.0);
  const ComplexField2D phi = gaussian_packet(g, 1.0, -2.0, 1.5, 3.0, -1.0);
  CHECK(norm(phi) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero-momentum packet is real and positive") {
  const GridSpec g = make_grid(64, 64, 10.0, 10.0);
  const ComplexField2D phi = gaussian_packet(g, 0.0, 0.0, 1.0, 0.0, 0.0);
  for (const cplx& v : phi.values()) {
    CHECK(v.imag() == 0.0);
    CHECK(v.real() > 0.0);
  }
}

TEST_CASE("packet spectral mean momentum matches the imprint") {
  const GridSpec g = make_grid(256, 256, 40.0, 40.0);
  const ComplexField2D phi = gaussian_packet(g, 0.0, 0.0, 2.0, 2.0, 0.0);
  const auto mean = oracles::spectral_mean_momentum(phi.values(), g.nx, g.ny,
                                                    g.lx, g.ly);
  CHECK(mean[0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(std::abs(mean[1]) < 1e-6);
}

TEST_CASE("under-resolved packet width is rejected") {
  const GridSpec g = make_grid(8, 8, 10.0, 10.0);  // h = 1.25
  CHECK_THROWS_AS(gaussian_packet(g, 0, 0, 2.0, 0, 0), Error);
}

TEST_CASE("norm of zero and constant fields") {
  const GridSpec g = make_grid(32, 48, 3.0, 5.0);
  CHECK(norm(ComplexField2D(g)) == 0.0);

  const cplx c(0.7, -0.3);
  ComplexField2D f(g);
  for (cplx& v : f.values()) v = c;
  // Closed form: |c|^2 lx ly.
  CHECK(norm(f) == doctest::Approx(std::norm(c) * g.lx * g.ly).epsilon(1e-13));
}

TEST_CASE("spectral gradient is exact on commensurate plane waves") {
  const GridSpec g = make_grid(64, 64, 8.0, 8.0);
  const double kx = 2.0 * M_PI * 3 / g.lx;
  const double ky = 2.0 * M_PI * (-5) / g.ly;
  const ComplexField2D phi = plane_wave(g, kx, ky);
  const auto [dx, dy] = gradient(phi, DiffScheme::spectral);
  const cplx iunit(0, 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    worst = std::max(worst,
                     std::abs(dx.values()[i] - iunit * kx * phi.values()[i]));
    worst = std::max(worst,
                     std::abs(dy.values()[i] - iunit * ky * phi.values()[i]));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("gradient of a constant field vanishes") {
  const GridSpec g = make_grid(32, 32, 4.0, 4.0);
  ComplexField2D f(g);
  for (cplx& v : f.values()) v = cplx(2.0, 1.0);
  for (auto scheme : {DiffScheme::spectral, DiffScheme::central2}) {
    const auto [dx, dy] = gradient(f, scheme);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(std::abs(dx.values()[i]) < 1e-13);
      CHECK(std::abs(dy.values()[i]) < 1e-13);
    }
  }
}

TEST_CASE("central2 converges at second order") {
  // phi = sin(2 pi x / lx), analytic derivative known; Richardson slope.
  auto max_error = [](int n) {
    const GridSpec g = make_grid(n, 8, 4.0, 1.0);
    ComplexField2D f(g);
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix)
        f(ix, iy) = std::sin(2.0 * M_PI * g.x(ix) / g.lx);
    const auto [dx, dy] = gradient(f, DiffScheme::central2);
    double worst = 0.0;
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        const double exact =
            2.0 * M_PI / g.lx * std::cos(2.0 * M_PI * g.x(ix) / g.lx);
        worst = std::max(worst, std::abs(dx(ix, iy).real() - exact));
      }
    return worst;
  };
  const double order = oracles::richardson_order(max_error(64), max_error(128));
  CHECK(order == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("spin matrices match the written-out reference") {
  const SpinMatrixSet& s = SpinMatrixSet::standard();
  for (int k = 0; k < 3; ++k) {
    const auto ref = oracles::sigma(k);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) CHECK(s.sigma[k](r, c) == ref[r][c]);
  }
  for (int mu = 0; mu < 4; ++mu) {
    const auto ref = oracles::gamma(mu);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) CHECK(s.gamma[mu](r, c) == ref[r][c]);
  }
  for (int k = 0; k < 3; ++k) {
    const auto ref = oracles::alpha(k);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) CHECK(s.alpha[k](r, c) == ref[r][c]);
  }
}

TEST_CASE("pauli algebra holds exactly") {
  const SpinMatrixSet& s = SpinMatrixSet::standard();
  const cplx iunit(0, 1);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      // sigma_j sigma_k = delta_jk I + i eps_jkl sigma_l
      Mat2c expected = Mat2c::Zero();
      if (j == k) expected = Mat2c::Identity();
      const int l = 3 - j - k;
      if (j != k) {
        const double eps = ((j + 1) % 3 == k) ? 1.0 : -1.0;
        expected += iunit * eps * s.sigma[l];
      }
      const Mat2c got = s.sigma[j] * s.sigma[k];
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) CHECK(got(r, c) == expected(r, c));
    }
  }
}

TEST_CASE("dirac algebra holds exactly") {
  const SpinMatrixSet& s = SpinMatrixSet::standard();
  const double metric[4] = {1.0, -1.0, -1.0, -1.0};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const Mat4c anti =
          s.gamma[mu] * s.gamma[nu] + s.gamma[nu] * s.gamma[mu];
      const Mat4c expected =
          (mu == nu) ? Mat4c(2.0 * metric[mu] * Mat4c::Identity())
                     : Mat4c(Mat4c::Zero());
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) CHECK(anti(r, c) == expected(r, c));
    }
  CHECK((s.beta * s.beta - Mat4c::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("metric tensor at zero potential is exactly gamma0") {
  const MetricTensorValue m = metric_tensor({0, 0, 0, 0});
  const auto g0 = oracles::gamma0();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(m.matrix(r, c) == g0[r][c]);
}

TEST_CASE("metric tensor against the direct multiplication oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const FourVector a{uni(rng), uni(rng), uni(rng), uni(rng)};
    const MetricTensorValue m = metric_tensor(a);
    // Oracle: gamma0 + sum_mu gamma0 gamma^mu A_mu with longhand matrices.
    oracles::Mat4 expected = oracles::gamma0();
    for (int mu = 0; mu < 4; ++mu)
      expected = oracles::add(
          expected,
          oracles::scale(oracles::multiply(oracles::gamma0(), oracles::gamma(mu)),
                         a[mu]));
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        CHECK(std::abs(m.matrix(r, c) - expected[r][c]) < 1e-14);
  }
}

TEST_CASE("metric tensor timelike special case gives gamma0 + a I") {
  const double a = 0.37;
  const MetricTensorValue m = metric_tensor({a, 0, 0, 0});
  const auto g0 = oracles::gamma0();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const cplx expected = g0[r][c] + (r == c ? cplx(a) : cplx(0));
      CHECK(std::abs(m.matrix(r, c) - expected) < 1e-15);
    }
}

TEST_CASE("metric tensor trace identity tr(M - gamma0) = 4 A0") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const FourVector a{uni(rng), uni(rng), uni(rng), uni(rng)};
    const MetricTensorValue m = metric_tensor(a);
    cplx trace = 0.0;
    const auto g0 = oracles::gamma0();
    for (int r = 0; r < 4; ++r) trace += m.matrix(r, r) - g0[r][r];
    CHECK(std::abs(trace - cplx(4.0 * a[0])) < 1e-12);
  }
}

TEST_CASE("det_slash special values") {
  const double a = 1.7;
  CHECK(std::abs(det_slash({a, 0, 0, 0}) - cplx(a * a * a * a)) < 1e-12);
  CHECK(std::abs(det_slash({1, 1, 0, 0})) < 1e-12);  // lightlike
  CHECK(std::abs(det_slash({0, 0, 0, 0})) == 0.0);
}

TEST_CASE("det_slash equals the Minkowski-square identity and the cofactor oracle") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> uni(-1.5, 1.5);
  for (int trial = 0; trial < 1000; ++trial) {
    const FourVector a{uni(rng), uni(rng), uni(rng), uni(rng)};
    const cplx det = det_slash(a);
    const double mink = minkowski_square(a);
    const double euclid = a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3];
    const double scale = std::max(euclid * euclid, 1e-30);
    CHECK(std::abs(det - cplx(mink * mink)) / scale < 1e-12);
    if (trial < 25) {
      // Independent cofactor-expansion determinant of the assembled matrix.
      oracles::Mat4 slash{};
      for (int mu = 0; mu < 4; ++mu)
        slash = oracles::add(slash, oracles::scale(oracles::gamma(mu), a[mu]));
      CHECK(std::abs(det - oracles::det4(slash)) / scale < 1e-12);
    }
  }
}

TEST_CASE("metric overlap of an unperturbed unit field is one") {
  const GridSpec g = make_grid(64, 64, 8.0, 8.0);
  const ComplexField2D psi = gaussian_packet(g, 0, 0, 1.0, 1.0, 0.0);
  const VectorField2D a(g, 2);  // zero potential
  const cplx overlap = metric_overlap(psi, a, 0.1, 1.0);
  CHECK(std::abs(overlap - cplx(1.0)) < 1e-12);
}

TEST_CASE("metric overlap imaginary part matches the plane-wave action") {
  // Unit-norm plane wave k = (1, 0): J = rho k / m, so
  // S = dt int J.A = dt a / m for constant A = (a, 0).
  const GridSpec g = make_grid(64, 64, 2.0 * M_PI * 4, 2.0 * M_PI * 4);
  const double kx = 1.0;  // commensurate: lx = 8 pi -> mode 4
  ComplexField2D psi = plane_wave(g, kx, 0.0);
  const double scale = 1.0 / std::sqrt(norm(psi));
  for (cplx& v : psi.values()) v *= scale;

  const double mass = 2.0, dt = 1e-3, a = 0.4;
  VectorField2D pot(g, 2);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) pot(ix, iy, 0) = a;

  const cplx overlap = metric_overlap(psi, pot, dt, mass);
  const double expected_s = dt * a * kx / mass;  // 2e-4 <= 1e-3
  CHECK(overlap.imag() == doctest::Approx(expected_s).epsilon(1e-9));
  CHECK(overlap.real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("metric overlap obeys the triangle bound") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const GridSpec g = make_grid(32, 32, 6.0, 6.0);
  for (int trial = 0; trial < 20; ++trial) {
    ComplexField2D psi = random_band_limited(g, rng(), 5);
    VectorField2D a(g, 2);
    for (double& v : a.values()) v = uni(rng);
    const cplx overlap = metric_overlap(psi, a, 0.05, 1.0);
    CHECK(std::abs(overlap) <=
          norm(psi) + std::abs(overlap.imag()) + 1e-12);
  }
}

TEST_CASE("metric overlap of a spin-up plane wave matches the scalar case") {
  // For a spinor with a constant spin direction and plane-wave factor the
  // spin part of the current is curl of a constant density: zero. The
  // overlap must reduce to the scalar expression.
  const GridSpec g = make_grid(64, 64, 2.0 * M_PI * 4, 2.0 * M_PI * 4);
  const double kx = 1.0;
  ComplexField2D scalar = plane_wave(g, kx, 0.0);
  const double scale = 1.0 / std::sqrt(norm(scalar));
  for (cplx& v : scalar.values()) v *= scale;
  PauliField2D psi(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    psi.values()[2 * i] = scalar.values()[i];

  VectorField2D pot(g, 2);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) pot(ix, iy, 0) = 0.4;

  const double dt = 1e-3, mass = 2.0;
  const cplx a = metric_overlap(scalar, pot, dt, mass);
  const cplx b = metric_overlap(psi, pot, dt, mass);
  CHECK(std::abs(a - b) < 1e-12);
}

TEST_CASE("metric overlap rejects mismatched grids") {
  const GridSpec g1 = make_grid(32, 32, 4.0, 4.0);
  const GridSpec g2 = make_grid(32, 32, 5.0, 4.0);
  const ComplexField2D psi = gaussian_packet(g1, 0, 0, 0.7, 0, 0);
  const VectorField2D a(g2, 2);
  CHECK_THROWS_AS(metric_overlap(psi, a, 0.1, 1.0), Error);
}

TEST_CASE("reductions are deterministic across repeated evaluation") {
  const GridSpec g = make_grid(96, 96, 11.0, 9.0);
  const ComplexField2D psi = random_band_limited(g, 42, 8);
  const double n1 = norm(psi);
  const double n2 = norm(psi);
  CHECK(n1 == n2);
}
