#include "ctxseg/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "ctxseg/stats.hpp"
#include "fft.hpp"

namespace ctxseg {

SpsBands default_sps_bands() noexcept {
  return {{{0.5, 2.0},
           {2.0, 4.0},
           {4.0, 6.0},
           {6.0, 8.0},
           {8.0, 10.0},
           {10.0, 13.0},
           {13.0, 20.0},
           {20.0, 30.0},
           {30.0, 45.0}}};
}

std::vector<double> varri_distance(std::span<const double> x, std::size_t w, double k_a,
                                   double k_f) {
  if (w < 2) throw std::invalid_argument("varri_distance: window must be at least 2 samples");
  if (x.size() < 2 * w) throw std::invalid_argument("varri_distance: signal shorter than two windows");
  const std::size_t n = x.size();

  // amp[i] = sum_{k<i} |x_k|; fd[i] = sum_{1<=k<i} |x_k - x_{k-1}|
  std::vector<double> amp(n + 1, 0.0);
  std::vector<double> fd(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    amp[i + 1] = amp[i] + std::abs(x[i]);
    fd[i + 1] = fd[i] + (i > 0 ? std::abs(x[i] - x[i - 1]) : 0.0);
  }
  auto adif = [&](std::size_t start) { return amp[start + w] - amp[start]; };
  // Differences strictly inside [start, start + w): pairs (start, start+1) .. (start+w-2, start+w-1).
  auto fdif = [&](std::size_t start) { return fd[start + w] - fd[start + 1]; };

  std::vector<double> g(n, 0.0);
  for (std::size_t split = w; split + w <= n; ++split) {
    const std::size_t left = split - w;
    g[split] = k_a * std::abs(adif(left) - adif(split)) + k_f * std::abs(fdif(left) - fdif(split));
  }
  return g;
}

std::vector<double> varri_threshold(std::span<const double> x, std::size_t block, double k_a,
                                    double k_f) {
  if (block == 0) throw std::invalid_argument("varri_threshold: block must be positive");
  std::vector<double> thr(x.size(), 0.0);
  for (std::size_t start = 0; start < x.size(); start += block) {
    const std::size_t end = std::min(start + block, x.size());
    double adif = 0.0;
    double fdif = 0.0;
    for (std::size_t i = start; i < end; ++i) {
      adif += std::abs(x[i]);
      if (i > start) fdif += std::abs(x[i] - x[i - 1]);
    }
    const double value = (k_a * adif + k_f * fdif) / static_cast<double>(end - start);
    std::fill(thr.begin() + static_cast<std::ptrdiff_t>(start),
              thr.begin() + static_cast<std::ptrdiff_t>(end), value);
  }
  return thr;
}

std::vector<std::size_t> local_maxima(std::span<const double> g, std::size_t half_width,
                                      std::span<const double> threshold) {
  if (!threshold.empty() && threshold.size() != g.size()) {
    throw std::invalid_argument("local_maxima: threshold length mismatch");
  }
  std::vector<std::size_t> peaks;
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double floor = threshold.empty() ? 0.0 : threshold[i];
    if (!(g[i] > floor)) continue;
    const std::size_t lo = i >= half_width ? i - half_width : 0;
    const std::size_t hi = std::min(n - 1, i + half_width);
    bool is_peak = true;
    for (std::size_t k = lo; k <= hi && is_peak; ++k) {
      if (k < i ? g[k] >= g[i] : g[k] > g[i]) is_peak = false;
    }
    if (is_peak) peaks.push_back(i);
  }
  return peaks;
}

std::size_t extrema_half_width(double window_s, double sample_rate_hz) noexcept {
  const auto full = static_cast<std::size_t>(std::llround(window_s * sample_rate_hz));
  return std::max<std::size_t>(1, full / 2);
}

namespace {

BoundarySet to_boundaries(const std::vector<std::size_t>& peaks, std::size_t n) {
  BoundarySet out(n);
  for (std::size_t p : peaks) {
    if (p > 0 && p < n) out.push_back(p);
  }
  return out;
}

}  // namespace

BoundarySet varri_segment(const TimeSeries& signal, const VarriConfig& config) {
  if (!(config.k_a > 0 && config.k_f > 0 && config.threshold_window_s > 0 && config.extrema_window_s >= 0)) {
    throw std::invalid_argument("varri: parameters must be positive");
  }
  const auto x = signal.samples();
  const auto g = varri_distance(x, config.window_samples, config.k_a, config.k_f);
  const auto block = static_cast<std::size_t>(
      std::max<long long>(1, std::llround(config.threshold_window_s * signal.sample_rate_hz())));
  const auto thr = varri_threshold(x, block, config.k_a, config.k_f);
  const auto peaks =
      local_maxima(g, extrema_half_width(config.extrema_window_s, signal.sample_rate_hz()), thr);
  return to_boundaries(peaks, signal.size());
}

std::vector<double> nleo_energy(std::span<const double> x) {
  std::vector<double> q(x.size(), 0.0);
  for (std::size_t n = 3; n < x.size(); ++n) q[n] = x[n - 1] * x[n - 2] - x[n] * x[n - 3];
  return q;
}

std::vector<double> nleo_distance(std::span<const double> x, std::size_t w) {
  if (w < 1) throw std::invalid_argument("nleo_distance: window must be positive");
  if (x.size() < 2 * w + 3) throw std::invalid_argument("nleo_distance: signal too short");
  const auto q = nleo_energy(x);
  const std::size_t n = x.size();
  std::vector<double> cum(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) cum[i + 1] = cum[i] + q[i];
  std::vector<double> g(n, 0.0);
  // Left window [m-w+1, m] must start at or after 3 (first defined Q); right window ends at m+w <= n-1.
  for (std::size_t m = w + 2; m + w < n; ++m) {
    const double left = cum[m + 1] - cum[m + 1 - w];
    const double right = cum[m + w + 1] - cum[m + 1];
    g[m] = std::abs(left - right);
  }
  return g;
}

BoundarySet nleo_segment(const TimeSeries& signal, const NleoConfig& config) {
  if (!(config.extrema_window_s >= 0)) throw std::invalid_argument("nleo: extrema window must be non-negative");
  const auto g = nleo_distance(signal.samples(), config.window_samples);
  auto peaks = local_maxima(g, extrema_half_width(config.extrema_window_s, signal.sample_rate_hz()));
  for (auto& p : peaks) ++p;  // last sample of the left window -> split point
  return to_boundaries(peaks, signal.size());
}

namespace {

class BandPowerEvaluator {
 public:
  BandPowerEvaluator(std::size_t w, double fs, const SpsBands& bands, TaperKind taper)
      : fft_(w), coefficients_(taper_coefficients(w, taper)) {
    const double resolution = fs / static_cast<double>(w);
    for (std::size_t b = 0; b < bands.size(); ++b) {
      if (!(bands[b].high_hz > bands[b].low_hz) || bands[b].low_hz < 0.0) {
        throw std::invalid_argument("sps: each band needs 0 <= low < high");
      }
      if (b > 0 && bands[b].low_hz < bands[b - 1].high_hz) {
        throw std::invalid_argument("sps: bands must be ascending and non-overlapping");
      }
      if (bands[b].high_hz > fs / 2.0 + 1e-9) throw std::invalid_argument("sps: band above Nyquist");
      // Bins with low < f <= high.
      const double lo = bands[b].low_hz / resolution;
      const double hi = bands[b].high_hz / resolution;
      first_[b] = static_cast<std::size_t>(std::floor(lo + 1e-9)) + 1;
      last_[b] = static_cast<std::size_t>(std::floor(hi + 1e-9));
      last_[b] = std::min(last_[b], fft_.bins() - 1);
    }
  }

  std::array<double, 9> operator()(std::span<const double> window) {
    auto in = fft_.input();
    std::transform(window.begin(), window.end(), coefficients_.begin(), in.begin(),
                   std::multiplies<>());
    const auto spectrum = fft_.execute();
    std::array<double, 9> out{};
    for (std::size_t b = 0; b < out.size(); ++b) {
      double sum = 0.0;
      for (std::size_t k = first_[b]; k <= last_[b]; ++k) sum += std::norm(spectrum[k]);
      out[b] = sum;
    }
    return out;
  }

 private:
  detail::RealFft fft_;
  std::vector<double> coefficients_;
  std::array<std::size_t, 9> first_{};
  std::array<std::size_t, 9> last_{};
};

}  // namespace

std::array<double, 9> band_powers(std::span<const double> window, double sample_rate_hz,
                                  const SpsBands& bands, TaperKind taper) {
  if (window.size() < 2) throw std::invalid_argument("band_powers: window too short");
  BandPowerEvaluator eval(window.size(), sample_rate_hz, bands, taper);
  return eval(window);
}

SpsResult sps_segment(const TimeSeries& signal, const SpsConfig& config) {
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw std::invalid_argument("sps: alpha must be in (0, 1)");
  const std::size_t w = config.window_samples;
  const std::size_t n = signal.size();
  if (w < 2) throw std::invalid_argument("sps: window must be at least 2 samples");
  if (n < 2 * w) throw std::invalid_argument("sps: signal shorter than two windows");

  BandPowerEvaluator eval(w, signal.sample_rate_hz(), config.bands, config.taper);
  const auto x = signal.samples();

  SpsResult result;
  result.boundaries = BoundarySet(n);
  // Band powers of the window starting at s, kept for the w most recent starts
  // so the left window reuses what was the right window w steps earlier.
  std::deque<std::array<double, 9>> history;
  for (std::size_t s = 0; s < w; ++s) history.push_back(eval(x.subspan(s, w)));

  std::size_t split = w;
  while (split + w <= n) {
    const auto right = eval(x.subspan(split, w));
    const auto& left = history.front();
    const auto ad = anderson_darling_2sample(left, right);
    ++result.comparisons;
    bool jumped = false;
    if (ad.p_value < config.alpha) {
      result.boundaries.push_back(split);
      result.p_values.push_back(ad.p_value);
      if (config.jump_after_boundary) {
        split += w;
        jumped = true;
        history.clear();
        for (std::size_t s = split - w; s < split && s + w <= n; ++s) {
          history.push_back(eval(x.subspan(s, w)));
        }
      }
    }
    if (!jumped) {
      history.pop_front();
      history.push_back(right);
      ++split;
    }
  }
  return result;
}

}  // namespace ctxseg
