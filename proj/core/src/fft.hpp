#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include <fftw3.h>

namespace ctxseg::detail {

// Real-to-complex FFT of a fixed length backed by FFTW. Planning is serialized
// behind a global mutex (FFTW's planner is not re-entrant); execution is
// thread-safe as long as each thread owns its RealFft.
class RealFft {
 public:
  explicit RealFft(std::size_t length);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  [[nodiscard]] std::size_t length() const noexcept { return length_; }
  [[nodiscard]] std::size_t bins() const noexcept { return length_ / 2 + 1; }

  std::span<double> input() noexcept { return {in_, length_}; }

  // Transforms the current contents of input().
  std::span<const std::complex<double>> execute();

 private:
  std::size_t length_;
  double* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

}  // namespace ctxseg::detail
