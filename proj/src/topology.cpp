#include "mwlab/topology.hpp"

#include <algorithm>
#include <cmath>

#include "internal.hpp"
#include "mwlab/currents.hpp"

namespace mwlab {

namespace {

constexpr double kClosureTol = 1e-12;

struct Interp {
  const GridSpec* g;

  // Fractional index coordinates; throws if outside the grid interior.
  void locate(double x, double y, int& i0, int& j0, double& fx,
              double& fy) const {
    const double u = (x - g->x(0)) / g->hx();
    const double v = (y - g->y(0)) / g->hy();
    require(u >= 0.0 && u <= g->nx - 1 && v >= 0.0 && v <= g->ny - 1,
            ErrorCode::domain, "loop leaves the grid interior");
    i0 = std::min(static_cast<int>(u), g->nx - 2);
    j0 = std::min(static_cast<int>(v), g->ny - 2);
    fx = u - i0;
    fy = v - j0;
  }

  double vector_component(const VectorField2D& f, double x, double y,
                          int c) const {
    int i0, j0;
    double fx, fy;
    locate(x, y, i0, j0, fx, fy);
    require(f.defined(i0, j0) && f.defined(i0 + 1, j0) &&
                f.defined(i0, j0 + 1) && f.defined(i0 + 1, j0 + 1),
            ErrorCode::domain, "loop touches undefined field samples");
    return (1 - fx) * (1 - fy) * f(i0, j0, c) + fx * (1 - fy) * f(i0 + 1, j0, c) +
           (1 - fx) * fy * f(i0, j0 + 1, c) + fx * fy * f(i0 + 1, j0 + 1, c);
  }

  cplx complex_value(const ComplexField2D& f, double x, double y) const {
    int i0, j0;
    double fx, fy;
    locate(x, y, i0, j0, fx, fy);
    return (1 - fx) * (1 - fy) * f(i0, j0) + fx * (1 - fy) * f(i0 + 1, j0) +
           (1 - fx) * fy * f(i0, j0 + 1) + fx * fy * f(i0 + 1, j0 + 1);
  }
};

}  // namespace

LoopPath::LoopPath(std::vector<std::array<double, 2>> points)
    : points_(std::move(points)) {
  require(points_.size() >= 9, ErrorCode::invalid_argument,
          "loop needs at least 8 distinct points plus closure");
  const auto& first = points_.front();
  const auto& last = points_.back();
  require(std::abs(first[0] - last[0]) <= kClosureTol &&
              std::abs(first[1] - last[1]) <= kClosureTol,
          ErrorCode::invalid_argument, "loop is not closed");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    require(points_[i][0] != points_[i - 1][0] ||
                points_[i][1] != points_[i - 1][1],
            ErrorCode::invalid_argument, "consecutive loop points coincide");
  }
}

LoopPath LoopPath::reversed() const {
  std::vector<std::array<double, 2>> pts(points_.rbegin(), points_.rend());
  return LoopPath(std::move(pts));
}

LoopPath circle_loop(const GridSpec& grid, double cx, double cy, double radius,
                     int n_points) {
  require(n_points >= 16, ErrorCode::invalid_argument,
          "circle loop needs at least 16 points");
  require(radius > 2.0 * std::max(grid.hx(), grid.hy()),
          ErrorCode::invalid_argument,
          "circle radius under-resolved (need radius > 2 max spacing)");
  require(cx - radius > grid.x(0) && cx + radius < grid.x(grid.nx - 1) &&
              cy - radius > grid.y(0) && cy + radius < grid.y(grid.ny - 1),
          ErrorCode::invalid_argument, "circle leaves the grid interior");
  std::vector<std::array<double, 2>> pts;
  pts.reserve(n_points + 1);
  for (int i = 0; i < n_points; ++i) {
    const double a = 2.0 * M_PI * i / n_points;
    pts.push_back({cx + radius * std::cos(a), cy + radius * std::sin(a)});
  }
  pts.push_back(pts.front());
  return LoopPath(std::move(pts));
}

LoopPath boundary_loop(const GridSpec& grid) {
  std::vector<std::array<double, 2>> pts;
  const int nx = grid.nx, ny = grid.ny;
  for (int i = 0; i < nx - 1; ++i) pts.push_back({grid.x(i), grid.y(0)});
  for (int j = 0; j < ny - 1; ++j) pts.push_back({grid.x(nx - 1), grid.y(j)});
  for (int i = nx - 1; i > 0; --i) pts.push_back({grid.x(i), grid.y(ny - 1)});
  for (int j = ny - 1; j > 0; --j) pts.push_back({grid.x(0), grid.y(j)});
  pts.push_back(pts.front());
  return LoopPath(std::move(pts));
}

double loop_integral(const VectorField2D& field, const LoopPath& loop) {
  const Interp interp{&field.grid()};
  detail::CompensatedSum sum;
  for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
    const auto& p0 = loop[i];
    const auto& p1 = loop[i + 1];
    const double mx = 0.5 * (p0[0] + p1[0]);
    const double my = 0.5 * (p0[1] + p1[1]);
    const double dx = p1[0] - p0[0];
    const double dy = p1[1] - p0[1];
    sum.add(interp.vector_component(field, mx, my, 0) * dx +
            interp.vector_component(field, mx, my, 1) * dy);
  }
  return sum.value();
}

WindingResult winding_number(const ComplexField2D& phi, const LoopPath& loop,
                             double eps0, DiffScheme scheme) {
  const RealField2D rho = density(phi);
  const double threshold = resolve_eps0(rho, eps0);
  const Interp interp{&phi.grid()};

  // Phase unwrapping along the sampled loop: principal-branch increments of
  // the interpolated field.
  detail::CompensatedSum total_dtheta;
  cplx prev = interp.complex_value(phi, loop[0][0], loop[0][1]);
  require(std::norm(prev) >= threshold, ErrorCode::domain,
          "field node on the loop");
  for (std::size_t i = 1; i < loop.size(); ++i) {
    const cplx cur = interp.complex_value(phi, loop[i][0], loop[i][1]);
    require(std::norm(cur) >= threshold, ErrorCode::domain,
            "field node on the loop");
    total_dtheta.add(std::arg(cur * std::conj(prev)));
    prev = cur;
  }

  const VectorField2D jt = normalized_current(phi, eps0, scheme);
  WindingResult result;
  result.integral = loop_integral(jt, loop);
  const double turns = result.integral / (2.0 * M_PI);
  result.k = static_cast<int>(std::lround(turns));
  result.residual = std::abs(turns - result.k);
  result.unwrapped = total_dtheta.value() / (2.0 * M_PI);
  result.estimators_agree = std::abs(turns - result.unwrapped) <= 0.25;
  return result;
}

std::vector<VortexCharge> vortex_scan(const ComplexField2D& phi, double eps0) {
  const GridSpec& g = phi.grid();
  const RealField2D rho = density(phi);
  const double threshold = resolve_eps0(rho, eps0);
  std::vector<VortexCharge> out;
  for (int iy = 0; iy + 1 < g.ny; ++iy) {
    for (int ix = 0; ix + 1 < g.nx; ++ix) {
      const cplx c00 = phi(ix, iy);
      const cplx c10 = phi(ix + 1, iy);
      const cplx c11 = phi(ix + 1, iy + 1);
      const cplx c01 = phi(ix, iy + 1);
      const double sum =
          std::arg(c10 * std::conj(c00)) + std::arg(c11 * std::conj(c10)) +
          std::arg(c01 * std::conj(c11)) + std::arg(c00 * std::conj(c01));
      const int charge = static_cast<int>(std::lround(sum / (2.0 * M_PI)));
      if (charge == 0) continue;
      VortexCharge v;
      v.ix = ix;
      v.iy = iy;
      v.charge = charge;
      v.low_density =
          std::norm(c00) < threshold || std::norm(c10) < threshold ||
          std::norm(c11) < threshold || std::norm(c01) < threshold;
      v.under_resolved = std::abs(charge) > 1;
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace mwlab
