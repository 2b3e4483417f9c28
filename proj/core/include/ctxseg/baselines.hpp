#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "ctxseg/boundary.hpp"
#include "ctxseg/signal.hpp"

namespace ctxseg {

// Two-contiguous-window baselines. In every distance sequence below, index n
// refers to the split point: the left window ends at sample n - 1 and the
// right window starts at sample n, which is also where a boundary is placed.

struct VarriConfig {
  std::size_t window_samples = 128;
  double k_a = 1.0;
  double k_f = 7.0;
  double threshold_window_s = 8.0;
  // Width of the neighborhood a peak must dominate. 0 compares each position
  // with its immediate neighbors only.
  double extrema_window_s = 0.0;
};

struct NleoConfig {
  std::size_t window_samples = 128;
  double extrema_window_s = 0.0;
};

struct FrequencyBand {
  double low_hz = 0.0;
  double high_hz = 0.0;
};

using SpsBands = std::array<FrequencyBand, 9>;

/// 0.5-2, 2-4, 4-6, 6-8, 8-10, 10-13, 13-20, 20-30, 30-45 Hz.
SpsBands default_sps_bands() noexcept;

struct SpsConfig {
  std::size_t window_samples = 128;
  double alpha = 0.05;
  SpsBands bands = default_sps_bands();
  TaperKind taper = TaperKind::rectangular;
  // After a boundary, move both windows a full window past it. Off by default:
  // every split point with p < alpha is reported.
  bool jump_after_boundary = false;
};

/// Varri distance G(n) = k_a |ADIF_L - ADIF_R| + k_f |FDIF_L - FDIF_R| with
/// ADIF = sum |x_i| and FDIF = sum |x_i - x_{i-1}| over each w-sample window.
/// Positions without two full windows carry 0. Throws if size < 2w.
std::vector<double> varri_distance(std::span<const double> x, std::size_t w, double k_a, double k_f);

/// Block-adaptive threshold THR = (k_a ADIF + k_f FDIF) / BL evaluated over
/// consecutive blocks of `block` samples (the last block may be shorter).
std::vector<double> varri_threshold(std::span<const double> x, std::size_t block, double k_a,
                                    double k_f);

/// Indices n where g[n] > threshold[n] (threshold may be empty: > 0) and g[n]
/// is the maximum of g over [n - half_width, n + half_width]; on plateaus the
/// leftmost index wins.
std::vector<std::size_t> local_maxima(std::span<const double> g, std::size_t half_width,
                                      std::span<const double> threshold = {});

/// Half-width in samples of an extrema neighborhood spanning `window_s`
/// seconds; never less than one sample.
std::size_t extrema_half_width(double window_s, double sample_rate_hz) noexcept;

BoundarySet varri_segment(const TimeSeries& signal, const VarriConfig& config);

/// Q(n) = x[n-1] x[n-2] - x[n] x[n-3]; zero for n < 3.
std::vector<double> nleo_energy(std::span<const double> x);

/// G(n) = |sum_{i=n-w+1}^{n} Q(i) - sum_{i=n+1}^{n+w} Q(i)|, zero where either
/// window is incomplete. Here n is the last sample of the left window, so the
/// corresponding split point is n + 1. Throws if size < 2w + 3.
std::vector<double> nleo_distance(std::span<const double> x, std::size_t w);

BoundarySet nleo_segment(const TimeSeries& signal, const NleoConfig& config);

/// Power summed over the DFT bins whose frequency lies in each band.
std::array<double, 9> band_powers(std::span<const double> window, double sample_rate_hz,
                                  const SpsBands& bands, TaperKind taper = TaperKind::rectangular);

struct SpsResult {
  BoundarySet boundaries;
  std::vector<double> p_values;
  std::size_t comparisons = 0;
};

/// Spectral power statistics: two contiguous windows slide together by one
/// sample; their nine band powers are compared with the two-sample
/// Anderson-Darling test and a boundary is reported where p < alpha.
SpsResult sps_segment(const TimeSeries& signal, const SpsConfig& config);

}  // namespace ctxseg
