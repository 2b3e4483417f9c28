#include "ctxseg/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace ctxseg {

TimeSeries::TimeSeries(std::vector<double> samples, double sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
  if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_)) {
    throw std::invalid_argument("TimeSeries: sample rate must be positive");
  }
  const auto bad = std::find_if(samples_.begin(), samples_.end(),
                                [](double v) { return !std::isfinite(v); });
  if (bad != samples_.end()) {
    throw std::invalid_argument("TimeSeries: non-finite sample at index " +
                                std::to_string(bad - samples_.begin()));
  }
}

MultiChannelSeries::MultiChannelSeries(std::vector<TimeSeries> channels,
                                       std::vector<std::string> labels)
    : channels_(std::move(channels)), labels_(std::move(labels)) {
  if (labels_.empty()) {
    for (std::size_t i = 0; i < channels_.size(); ++i) labels_.push_back("ch" + std::to_string(i));
  }
  if (labels_.size() != channels_.size()) {
    throw std::invalid_argument("MultiChannelSeries: label count does not match channel count");
  }
  for (const auto& ch : channels_) {
    if (ch.size() != channels_.front().size() ||
        ch.sample_rate_hz() != channels_.front().sample_rate_hz()) {
      throw std::invalid_argument("MultiChannelSeries: channels differ in length or sample rate");
    }
  }
}

std::span<const double> WindowView::over(std::span<const double> signal) const {
  if (start > signal.size() || length > signal.size() - start) {
    throw std::out_of_range("WindowView: window exceeds signal");
  }
  return signal.subspan(start, length);
}

TaperKind parse_taper_kind(std::string_view name) {
  if (name == "hamming") return TaperKind::hamming;
  if (name == "hann" || name == "hanning") return TaperKind::hann;
  if (name == "rectangular" || name == "boxcar" || name == "none") return TaperKind::rectangular;
  throw std::invalid_argument("unknown taper '" + std::string(name) +
                              "' (expected hamming, hann or rectangular)");
}

std::string_view to_string(TaperKind kind) noexcept {
  switch (kind) {
    case TaperKind::hamming: return "hamming";
    case TaperKind::hann: return "hann";
    case TaperKind::rectangular: return "rectangular";
  }
  return "unknown";
}

std::vector<double> taper_coefficients(std::size_t length, TaperKind kind) {
  std::vector<double> c(length, 1.0);
  if (length < 2 || kind == TaperKind::rectangular) return c;
  const double a0 = kind == TaperKind::hamming ? 0.54 : 0.5;
  const double denom = static_cast<double>(length - 1);
  for (std::size_t k = 0; k < length; ++k) {
    c[k] = a0 - (1.0 - a0) * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / denom);
  }
  return c;
}

std::vector<double> taper(std::span<const double> window, TaperKind kind) {
  if (window.empty()) throw std::invalid_argument("empty input");
  const auto c = taper_coefficients(window.size(), kind);
  std::vector<double> out(window.size());
  std::transform(window.begin(), window.end(), c.begin(), out.begin(), std::multiplies<>());
  return out;
}

struct LogSpectrumEvaluator::Impl {
  Impl(std::size_t length, const SpectrumOptions& opts)
      : fft(length), coefficients(taper_coefficients(length, opts.taper)), options(opts) {}

  detail::RealFft fft;
  std::vector<double> coefficients;
  SpectrumOptions options;
};

LogSpectrumEvaluator::LogSpectrumEvaluator(std::size_t window_length,
                                           const SpectrumOptions& options) {
  if (window_length < 2) throw std::invalid_argument("window too short");
  impl_ = std::make_unique<Impl>(window_length, options);
}

LogSpectrumEvaluator::~LogSpectrumEvaluator() = default;
LogSpectrumEvaluator::LogSpectrumEvaluator(LogSpectrumEvaluator&&) noexcept = default;
LogSpectrumEvaluator& LogSpectrumEvaluator::operator=(LogSpectrumEvaluator&&) noexcept = default;

std::size_t LogSpectrumEvaluator::window_length() const noexcept { return impl_->fft.length(); }

std::size_t LogSpectrumEvaluator::bin_count() const noexcept {
  return impl_->fft.bins() - (impl_->options.include_dc ? 0 : 1);
}

void LogSpectrumEvaluator::evaluate(std::span<const double> window, std::span<double> out) {
  if (window.size() != impl_->fft.length()) {
    throw std::invalid_argument("LogSpectrumEvaluator: window length mismatch");
  }
  if (out.size() != bin_count()) {
    throw std::invalid_argument("LogSpectrumEvaluator: output size mismatch");
  }
  auto in = impl_->fft.input();
  std::transform(window.begin(), window.end(), impl_->coefficients.begin(), in.begin(),
                 std::multiplies<>());
  const auto spectrum = impl_->fft.execute();
  const std::size_t first = impl_->options.include_dc ? 0 : 1;
  for (std::size_t k = first; k < spectrum.size(); ++k) {
    out[k - first] = std::log(std::max(std::abs(spectrum[k]), kMagnitudeFloor));
  }
}

LogSpectrum log_magnitude_spectrum(std::span<const double> window, double sample_rate_hz,
                                   const SpectrumOptions& options) {
  if (window.size() < 2) throw std::invalid_argument("window too short");
  LogSpectrumEvaluator evaluator(window.size(), options);
  LogSpectrum result;
  result.bins.resize(evaluator.bin_count());
  result.bin_resolution_hz = sample_rate_hz / static_cast<double>(window.size());
  evaluator.evaluate(window, result.bins);
  return result;
}

}  // namespace ctxseg
