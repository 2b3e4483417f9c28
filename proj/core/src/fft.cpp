#include "fft.hpp"

#include <mutex>
#include <new>
#include <stdexcept>

namespace ctxseg::detail {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(std::size_t length) : length_(length) {
  if (length == 0) throw std::invalid_argument("RealFft: zero length");
  in_ = fftw_alloc_real(length_);
  out_ = fftw_alloc_complex(bins());
  if (in_ == nullptr || out_ == nullptr) {
    fftw_free(in_);
    fftw_free(out_);
    throw std::bad_alloc();
  }
  // FFTW_ESTIMATE keeps the chosen algorithm, and therefore the rounding,
  // independent of timing measurements.
  std::lock_guard lock(planner_mutex());
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(length_), in_, out_, FFTW_ESTIMATE);
  if (plan_ == nullptr) {
    fftw_free(in_);
    fftw_free(out_);
    throw std::runtime_error("RealFft: planning failed");
  }
}

RealFft::~RealFft() {
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  fftw_free(in_);
  fftw_free(out_);
}

std::span<const std::complex<double>> RealFft::execute() {
  fftw_execute(plan_);
  return {reinterpret_cast<const std::complex<double>*>(out_), bins()};
}

}  // namespace ctxseg::detail
