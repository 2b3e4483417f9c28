#pragma once

#include <cstddef>
#include <vector>

#include "ctxseg/boundary.hpp"
#include "ctxseg/signal.hpp"

namespace ctxseg {

struct CtxsegConfig {
  std::size_t window_samples = 128;
  std::size_t stride_samples = 1;
  double alpha = 0.05;
  TaperKind taper = TaperKind::hamming;
  // false: the test window slides one sample at a time and the stride is only
  // the offset after re-anchoring. true: it always advances by the stride.
  bool slide_by_stride = false;
  bool include_dc = true;

  void validate() const;
};

struct CtxsegResult {
  BoundarySet boundaries;
  std::vector<double> p_values;  // p-value of the comparison that emitted each boundary
  std::size_t comparisons = 0;
  bool short_signal = false;     // signal shorter than window + stride; no boundaries searched
};

/// Context segmentation: a fixed reference window is compared against a
/// forward-sliding test window by a paired t-test on their log-magnitude
/// spectra. When p < alpha a boundary is placed at the end of the test window
/// (b = t + w), the reference re-anchors at b + 1 and the test window restarts
/// `stride` samples after it. Consecutive boundaries are at least w + 1 apart.
CtxsegResult ctxseg_segment(const TimeSeries& signal, const CtxsegConfig& config);

}  // namespace ctxseg
