#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctxseg {

/// Uniformly sampled real-valued signal.
///
/// Construction validates the sample rate and rejects non-finite samples, so
/// every TimeSeries in flight is usable by the segmenters without re-checking.
class TimeSeries {
 public:
  TimeSeries() = default;
  TimeSeries(std::vector<double> samples, double sample_rate_hz);

  [[nodiscard]] std::span<const double> samples() const noexcept { return samples_; }
  [[nodiscard]] double sample_rate_hz() const noexcept { return sample_rate_hz_; }
  [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
  [[nodiscard]] bool empty() const noexcept { return samples_.empty(); }
  [[nodiscard]] double duration_s() const noexcept {
    return sample_rate_hz_ > 0.0 ? static_cast<double>(samples_.size()) / sample_rate_hz_ : 0.0;
  }
  [[nodiscard]] double operator[](std::size_t i) const { return samples_[i]; }

  std::vector<double> release() && { return std::move(samples_); }

 private:
  std::vector<double> samples_;
  double sample_rate_hz_ = 0.0;
};

/// Channels of equal length and sample rate.
class MultiChannelSeries {
 public:
  MultiChannelSeries() = default;
  MultiChannelSeries(std::vector<TimeSeries> channels, std::vector<std::string> labels);

  [[nodiscard]] const std::vector<TimeSeries>& channels() const noexcept { return channels_; }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] std::size_t channel_count() const noexcept { return channels_.size(); }
  [[nodiscard]] std::size_t length() const noexcept {
    return channels_.empty() ? 0 : channels_.front().size();
  }
  [[nodiscard]] double sample_rate_hz() const noexcept {
    return channels_.empty() ? 0.0 : channels_.front().sample_rate_hz();
  }

 private:
  std::vector<TimeSeries> channels_;
  std::vector<std::string> labels_;
};

/// A fixed-length window over a signal: samples [start, start + length).
struct WindowView {
  std::size_t start = 0;
  std::size_t length = 0;

  [[nodiscard]] std::size_t end() const noexcept { return start + length; }
  /// Throws std::out_of_range when the window does not fit in `signal`.
  [[nodiscard]] std::span<const double> over(std::span<const double> signal) const;
};

enum class TaperKind { hamming, hann, rectangular };

TaperKind parse_taper_kind(std::string_view name);
std::string_view to_string(TaperKind kind) noexcept;

/// Symmetric taper coefficients of length `length` (a single-sample taper is 1).
std::vector<double> taper_coefficients(std::size_t length, TaperKind kind);

/// Element-wise product of `window` with the taper. Throws on empty input.
std::vector<double> taper(std::span<const double> window, TaperKind kind);

struct SpectrumOptions {
  TaperKind taper = TaperKind::rectangular;
  bool include_dc = true;
};

/// Natural-log magnitude of the one-sided spectrum.
struct LogSpectrum {
  std::vector<double> bins;
  double bin_resolution_hz = 0.0;
};

inline constexpr double kMagnitudeFloor = 1e-12;

/// FFT of the (optionally tapered) window, magnitude floored at kMagnitudeFloor,
/// then natural log. Bin count is floor(L/2)+1, or one fewer without DC.
LogSpectrum log_magnitude_spectrum(std::span<const double> window, double sample_rate_hz,
                                   const SpectrumOptions& options = {});

/// Reusable log-spectrum evaluator for a fixed window length. Holds the taper
/// and FFT scratch buffers so sliding-window loops do not allocate.
/// Not thread-safe; use one instance per thread.
class LogSpectrumEvaluator {
 public:
  LogSpectrumEvaluator(std::size_t window_length, const SpectrumOptions& options);
  ~LogSpectrumEvaluator();
  LogSpectrumEvaluator(LogSpectrumEvaluator&&) noexcept;
  LogSpectrumEvaluator& operator=(LogSpectrumEvaluator&&) noexcept;
  LogSpectrumEvaluator(const LogSpectrumEvaluator&) = delete;
  LogSpectrumEvaluator& operator=(const LogSpectrumEvaluator&) = delete;

  [[nodiscard]] std::size_t window_length() const noexcept;
  [[nodiscard]] std::size_t bin_count() const noexcept;

  /// Writes bin_count() log magnitudes into `out`.
  void evaluate(std::span<const double> window, std::span<double> out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ctxseg
