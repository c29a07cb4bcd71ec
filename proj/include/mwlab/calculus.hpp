#pragma once

#include <utility>

#include "mwlab/fields.hpp"

namespace mwlab {

enum class DiffScheme {
  spectral,  // exact for band-limited periodic fields
  central2,  // second-order centered differences, periodic wrap
};

// Normalized Gaussian wavepacket exp(-r^2/(2 w^2)) exp(i k.x), unit L2 norm.
// Rejects widths the grid cannot resolve (w <= 2 max(hx, hy)).
ComplexField2D gaussian_packet(const GridSpec& grid, double cx, double cy,
                               double width, double kx, double ky);

// Anisotropic variant used for slit illumination (wide across the slits,
// short along the propagation axis).
ComplexField2D gaussian_packet_aniso(const GridSpec& grid, double cx, double cy,
                                     double width_x, double width_y, double kx,
                                     double ky);

// Integral of |phi|^2 over the domain (sum |phi|^2 hx hy).
double norm(const ComplexField2D& phi);
double norm(const PauliField2D& psi);
double norm(const DiracField2D& psi);

// (d/dx, d/dy) per component.
std::pair<ComplexField2D, ComplexField2D> gradient(const ComplexField2D& phi,
                                                   DiffScheme scheme);
std::pair<PauliField2D, PauliField2D> gradient(const PauliField2D& psi,
                                               DiffScheme scheme);
std::pair<RealField2D, RealField2D> gradient(const RealField2D& f,
                                             DiffScheme scheme);

// Metric overlap int psi+ psi d2x + i dt int J.A d2x, with J the probability
// current matching the field type (mass enters through the current). For a
// unit-norm field and a small second term this approximates exp(i S) with
// S = dt int J.A d2x.
cplx metric_overlap(const ComplexField2D& psi, const VectorField2D& a,
                    double dt, double mass);
cplx metric_overlap(const PauliField2D& psi, const VectorField2D& a, double dt,
                    double mass);

}  // namespace mwlab
