#pragma once

#include <string>

#include "mwlab/fields.hpp"
#include "mwlab/propagator.hpp"

namespace mwlab {

// Shortest round-trip decimal representation of a double; the single float
// formatting rule for every CSV writer, so identical runs emit identical
// bytes.
std::string format_double(double v);

// Field snapshot container "MWFLD001": fixed little-endian header
// (kind, component count, nx, ny, lx, ly) followed by row-major float64
// samples; complex kinds store re,im pairs per component. Layout documented
// in the README.
void save_field(const std::string& path, const ComplexField2D& f);
void save_field(const std::string& path, const PauliField2D& f);
void save_field(const std::string& path, const DiracField2D& f);
void save_field(const std::string& path, const RealField2D& f);
void save_field(const std::string& path, const VectorField2D& f);

ComplexField2D load_complex_field(const std::string& path);
PauliField2D load_pauli_field(const std::string& path);
DiracField2D load_dirac_field(const std::string& path);
RealField2D load_real_field(const std::string& path);
VectorField2D load_vector_field(const std::string& path);

// CSV exports: one row per grid point, x,y then re,im per complex component
// or one value per real component.
void write_csv(const std::string& path, const ComplexField2D& f);
void write_csv(const std::string& path, const PauliField2D& f);
void write_csv(const std::string& path, const RealField2D& f);
void write_csv(const std::string& path, const VectorField2D& f);

// Screen profile: header y,intensity.
void write_fringe_csv(const std::string& path, const FringePattern& pattern);

}  // namespace mwlab
