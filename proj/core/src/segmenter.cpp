#include "ctxseg/segmenter.hpp"

#include <stdexcept>

#include "ctxseg/log.hpp"
#include "ctxseg/stats.hpp"

namespace ctxseg {

void CtxsegConfig::validate() const {
  if (window_samples < 2) throw std::invalid_argument("ctxseg: window must be at least 2 samples");
  if (stride_samples < 1) throw std::invalid_argument("ctxseg: stride must be at least 1 sample");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("ctxseg: alpha must be in (0, 1)");
}

CtxsegResult ctxseg_segment(const TimeSeries& signal, const CtxsegConfig& config) {
  config.validate();
  const std::size_t n = signal.size();
  const std::size_t w = config.window_samples;
  const std::size_t s = config.stride_samples;

  CtxsegResult result;
  result.boundaries = BoundarySet(n);
  if (n < w + s) {
    result.short_signal = true;
    log::warn("ctxseg: signal of {} samples shorter than window + stride ({}); no boundaries",
              n, w + s);
    return result;
  }

  LogSpectrumEvaluator spectra(w, SpectrumOptions{config.taper, config.include_dc});
  std::vector<double> reference(spectra.bin_count());
  std::vector<double> test(spectra.bin_count());
  const auto x = signal.samples();

  std::size_t r = 0;
  std::size_t t = s;
  std::size_t cached_r = n;  // reference spectrum is recomputed only after re-anchoring
  while (t < n - w) {
    if (cached_r != r) {
      spectra.evaluate(x.subspan(r, w), reference);
      cached_r = r;
    }
    spectra.evaluate(x.subspan(t, w), test);
    const double p = paired_t_test(reference, test);
    ++result.comparisons;
    if (p < config.alpha) {
      const std::size_t b = t + w;
      if (b >= n) break;
      result.boundaries.push_back(b);
      result.p_values.push_back(p);
      r = b + 1;
      t = r + s;
    } else {
      t += config.slide_by_stride ? s : 1;
    }
  }
  return result;
}

}  // namespace ctxseg
