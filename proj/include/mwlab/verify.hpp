#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mwlab {

struct VerifyCheck {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  std::uint64_t seed = 12345;
  bool perturb_gamma = false;  // fault injection: breaks the algebra suite only
};

// Runs the numerical invariant suites of every module and reports one
// measured-vs-tolerance entry per check:
//   algebra        Pauli/Dirac anticommutators, metric tensor, det identity
//   currents       plane-wave law, triple-form equality, reduction residual,
//                  spin-curl identity
//   topology       winding quantization, estimator agreement
//   propagator     unitarity, free-packet drift
//   interference   merging-wave identity, equivalence residual, coupling
//                  extraction, visibility anchors, virial numbers
std::vector<VerifyCheck> run_verify(const VerifyOptions& options);

}  // namespace mwlab
