#pragma once

#include <utility>

#include "mwlab/calculus.hpp"
#include "mwlab/fields.hpp"

namespace mwlab {

// rho = phi* phi.
RealField2D density(const ComplexField2D& phi);
RealField2D density(const PauliField2D& psi);
RealField2D density(const DiracField2D& psi);

// J = -(i/2m) [phi* grad phi - (grad phi*) phi]; real by construction.
VectorField2D schrodinger_current(const ComplexField2D& phi, double mass,
                                  DiffScheme scheme = DiffScheme::spectral);

// Node threshold used to flag undefined points of the phase-gradient
// quantities; eps0 <= 0 selects the default 1e-12 * max(rho).
double resolve_eps0(const RealField2D& rho, double eps0);

// Jt = (phi1 d phi2 - phi2 d phi1) / (phi1^2 + phi2^2). Mask marks points
// with rho < eps0 undefined: nodes are data, not failures.
VectorField2D normalized_current(const ComplexField2D& phi, double eps0 = -1.0,
                                 DiffScheme scheme = DiffScheme::spectral);

// (n1, n2) = (phi1, phi2)/sqrt(rho).
UnitPairField n_field(const ComplexField2D& phi, double eps0 = -1.0);

// eps_ab n^a d_mu n^b, the unit-pair route to the normalized current.
VectorField2D n_field_current(const UnitPairField& n,
                              DiffScheme scheme = DiffScheme::spectral);

// psi_b = sigma.(-i grad - A_ext) / (2m) psi_a, with coupling e = 1.
// a_ext may be null (free case).
PauliField2D small_component(const PauliField2D& psi_a, double mass,
                             const VectorField2D* a_ext = nullptr,
                             DiffScheme scheme = DiffScheme::spectral);

// rho = psi+ psi and J^k = psi+ alpha_k psi (3 components).
std::pair<RealField2D, VectorField2D> dirac_current(const DiracField2D& psi);

// M = psi+ sigma psi (3 components).
VectorField2D magnetization(const PauliField2D& psi_a);

struct PauliCurrentParts {
  VectorField2D convective;  // Schroedinger-shaped part, z component zero
  VectorField2D spin;        // curl(M)/2m
  VectorField2D total;
};

// Convective part -(i/2m)[psi+ grad psi - (grad psi+) psi] plus the spin
// part (1/2m) curl(psi+ sigma psi).
PauliCurrentParts pauli_current_parts(const PauliField2D& psi_a, double mass,
                                      DiffScheme scheme = DiffScheme::spectral);
VectorField2D pauli_current(const PauliField2D& psi_a, double mass,
                            DiffScheme scheme = DiffScheme::spectral);

// (1/2m) curl(psi+ sigma psi).
VectorField2D spin_current(const PauliField2D& psi_a, double mass,
                           DiffScheme scheme = DiffScheme::spectral);

// Antisymmetrized-gradient form (1/2m)[(grad psi+) x sigma psi
// - psi+ sigma x (grad psi)]. Same continuum object as spin_current but a
// different discrete route, used for the curl-identity cross-check.
VectorField2D spin_current_antisym(const PauliField2D& psi_a, double mass,
                                   DiffScheme scheme = DiffScheme::spectral);

// Assemble a 4-spinor from large and small 2-spinor blocks.
DiracField2D assemble_dirac(const PauliField2D& large, const PauliField2D& small);

// Max-norm of (Dirac spatial current of (psi_a, small_component(psi_a)))
// minus pauli_current(psi_a): the two routes agree up to discretization.
double reduction_residual(const PauliField2D& psi_a, double mass,
                          DiffScheme scheme = DiffScheme::spectral);

// Magnitude of the external-field cross term (1/m) A_k psi+ psi that the
// Pauli anticommutator produces; reported as a diagnostic, never folded
// into pauli_current (which takes no external field).
double external_field_cross_term(const PauliField2D& psi_a,
                                 const VectorField2D& a_ext, double mass);

}  // namespace mwlab
