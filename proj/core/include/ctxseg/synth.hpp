#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ctxseg/ctxgen.hpp"
#include "ctxseg/signal.hpp"

namespace ctxseg {

/// amplitude * cos(angular_multiplier * pi * t), t in seconds.
struct CosineTerm {
  double amplitude = 0.0;
  double angular_multiplier = 0.0;
};

struct HarmonicsSpec {
  std::vector<std::vector<CosineTerm>> segments;
  double segment_duration_s = 5.0;
  double sample_rate_hz = 256.0;
  // false: t runs continuously over the whole signal. true: t restarts at 0
  // at the start of every segment.
  bool reset_time_per_segment = false;

  /// The seven-segment pattern used for the Harmonics benchmark signal.
  static HarmonicsSpec preset();
};

GeneratedSignal generate_harmonics(const HarmonicsSpec& spec);

/// x_t = sum_i coefficients[i] x_{t-1-i} + e_t, e_t ~ N(0, noise_std^2).
struct ArModel {
  std::vector<double> coefficients;
  double noise_std = 1.0;

  [[nodiscard]] std::size_t order() const noexcept { return coefficients.size(); }
  /// All roots of z^p - a1 z^{p-1} - ... - ap strictly inside the unit circle.
  [[nodiscard]] bool is_stable() const;
};

/// Yule-Walker fit (biased autocovariance of the de-meaned exemplar, solved by
/// Levinson-Durbin). noise_std is the square root of the final prediction
/// error variance. Throws on a zero-variance exemplar, an exemplar not longer
/// than the order, or an unstable result.
ArModel fit_ar(const TimeSeries& exemplar, std::size_t order);

inline constexpr std::size_t kDefaultArOrder = 8;

/// Concatenates one AR realization per state; each segment starts from zero
/// history and discards a burn-in of 10 * order samples. Ground truth sits at
/// every segment join.
GeneratedSignal generate_ar_sequence(const std::map<std::string, ArModel>& models,
                                     const std::vector<std::string>& states,
                                     double segment_duration_s, double sample_rate_hz,
                                     std::uint64_t seed);

}  // namespace ctxseg
