#include "mwlab/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "mwlab/errors.hpp"

namespace mwlab {

namespace {
// The FFTW planner is not thread-safe; plan creation/destruction is locked.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft2d::Fft2d(int nx, int ny) : nx_(nx), ny_(ny) {
  require(nx >= 2 && ny >= 2, ErrorCode::invalid_argument,
          "fft shape must be at least 2x2");
  std::vector<std::complex<double>> scratch(static_cast<std::size_t>(nx) * ny);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  std::lock_guard<std::mutex> lock(planner_mutex());
  // FFTW_UNALIGNED lets the plans execute on any caller array; FFTW_ESTIMATE
  // keeps planning deterministic.
  plan_fwd_ = fftw_plan_dft_2d(ny, nx, buf, buf, FFTW_FORWARD,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_bwd_ = fftw_plan_dft_2d(ny, nx, buf, buf, FFTW_BACKWARD,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  require(plan_fwd_ != nullptr && plan_bwd_ != nullptr, ErrorCode::numerical,
          "fftw plan creation failed");
}

Fft2d::~Fft2d() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void Fft2d::forward(std::complex<double>* data) const {
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), buf, buf);
}

void Fft2d::inverse(std::complex<double>* data) const {
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), buf, buf);
  const double scale = 1.0 / (static_cast<double>(nx_) * ny_);
  const std::size_t n = static_cast<std::size_t>(nx_) * ny_;
  for (std::size_t i = 0; i < n; ++i) data[i] *= scale;
}

}  // namespace mwlab
