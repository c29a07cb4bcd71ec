#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mwlab/fields.hpp"

namespace mwlab {

// Plane wave amplitude * exp(i k.x).
ComplexField2D plane_wave(const GridSpec& grid, double kx, double ky,
                          double amplitude = 1.0);

// Random band-limited field: Gaussian spectrum on modes |n| <= max_mode,
// unit norm. Deterministic for a given seed.
ComplexField2D random_band_limited(const GridSpec& grid, std::uint64_t seed,
                                   int max_mode);
PauliField2D random_band_limited_pauli(const GridSpec& grid, std::uint64_t seed,
                                       int max_mode);

// Nodeless random field exp(g) with g band-limited; |phi| > 0 everywhere.
ComplexField2D random_nodeless(const GridSpec& grid, std::uint64_t seed,
                               int max_mode);

struct VortexSpec {
  double x = 0.0;
  double y = 0.0;
  int charge = 1;
};

// Product of vortex factors ((x-xi) + i (y-yi))^(charge, conjugated for
// negative charges), optionally under a centered Gaussian envelope
// (envelope_width <= 0 disables it); normalized to unit norm.
ComplexField2D vortex_field(const GridSpec& grid,
                            const std::vector<VortexSpec>& vortices,
                            double envelope_width = 0.0);

}  // namespace mwlab
