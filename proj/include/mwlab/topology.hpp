#pragma once

#include <array>
#include <vector>

#include "mwlab/calculus.hpp"
#include "mwlab/fields.hpp"

namespace mwlab {

// Closed, ordered polyline in physical coordinates. The first point equals
// the last (closure within 1e-12); at least 8 distinct vertices.
class LoopPath {
public:
  explicit LoopPath(std::vector<std::array<double, 2>> points);

  std::size_t size() const { return points_.size(); }
  const std::array<double, 2>& operator[](std::size_t i) const {
    return points_[i];
  }
  const std::vector<std::array<double, 2>>& points() const { return points_; }

  LoopPath reversed() const;

private:
  std::vector<std::array<double, 2>> points_;
};

// Regular closed polygon approximating a circle; n_points >= 16 and the
// radius must span at least two grid cells. Stays inside the grid interior.
LoopPath circle_loop(const GridSpec& grid, double cx, double cy, double radius,
                     int n_points);

// Axis-aligned rectangle through the outermost grid nodes, used for the
// discrete Stokes cross-check of vortex_scan.
LoopPath boundary_loop(const GridSpec& grid);

// Contour integral of F.dx: bilinear interpolation of F, midpoint rule per
// segment, compensated summation. Errors if the loop leaves the grid
// interior or touches undefined samples.
double loop_integral(const VectorField2D& field, const LoopPath& loop);

struct WindingResult {
  double integral = 0.0;     // raw loop integral of the normalized current
  int k = 0;                 // nearest integer to integral / 2 pi
  double residual = 0.0;     // |integral / 2 pi - k|
  double unwrapped = 0.0;    // phase-unwrapping estimate of integral / 2 pi
  bool estimators_agree = false;
};

// Winding number along the loop via two independent estimators: the line
// integral of the normalized current, and accumulated principal-branch
// phase differences along the sampled loop. Disagreement beyond 0.25 is
// reported as unreliable (estimators_agree = false).
WindingResult winding_number(const ComplexField2D& phi, const LoopPath& loop,
                             double eps0 = -1.0,
                             DiffScheme scheme = DiffScheme::central2);

struct VortexCharge {
  int ix = 0;                 // plaquette lower-left cell index
  int iy = 0;
  int charge = 0;             // +-1 normally; |charge| > 1 is under-resolved
  bool low_density = false;   // some corner below eps0
  bool under_resolved = false;
};

// Per-plaquette sum of the four principal-branch phase differences divided
// by 2 pi, rounded; nonzero plaquettes returned in row-major order.
std::vector<VortexCharge> vortex_scan(const ComplexField2D& phi,
                                      double eps0 = -1.0);

}  // namespace mwlab
