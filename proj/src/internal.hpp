#pragma once

#include <cmath>
#include <memory>

#include "mwlab/fft.hpp"

namespace mwlab::detail {

// Per-shape FFT plan cache shared by gradients and the propagator.
std::shared_ptr<Fft2d> shared_fft(int nx, int ny);

// Neumaier-compensated accumulator; keeps reductions deterministic and
// tight (loop reversal negates integrals to within ~1 ulp).
class CompensatedSum {
public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace mwlab::detail
