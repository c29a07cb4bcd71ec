#pragma once

#include <complex>
#include <memory>

namespace mwlab {

// Thin RAII wrapper over FFTW c2c 2-D transforms. Plans are created once
// per shape (FFTW_ESTIMATE, unaligned) so repeated transforms are cheap and
// bit-reproducible across runs.
class Fft2d {
public:
  Fft2d(int nx, int ny);
  ~Fft2d();

  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;

  // In-place transforms on nx*ny arrays, row-major with x fastest.
  void forward(std::complex<double>* data) const;
  // Inverse includes the 1/(nx*ny) normalization.
  void inverse(std::complex<double>* data) const;

  int nx() const { return nx_; }
  int ny() const { return ny_; }

private:
  int nx_, ny_;
  void* plan_fwd_;
  void* plan_bwd_;
};

}  // namespace mwlab
