#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ctxseg/boundary.hpp"

namespace ctxseg {

struct FixedSlicing {
  std::size_t window_samples = 512;
  double overlap_fraction = 0.5;

  /// window * (1 - overlap), rounded; throws if it is below one sample.
  [[nodiscard]] std::size_t stride() const;
};

/// Full windows starting at 0 and advancing by the slicing stride. Returns an
/// empty list (with a warning) when the window is longer than the signal.
std::vector<SampleRange> fixed_slices(std::size_t signal_length, const FixedSlicing& slicing);

enum class ExtractionKind { variable_first, variable_random };

/// Accepts "vf"/"variable_first" and "vr"/"variable_random".
ExtractionKind parse_extraction_kind(std::string_view name);

struct ExtractionStrategy {
  ExtractionKind kind = ExtractionKind::variable_first;
  std::uint64_t seed = 0;
};

struct Extraction {
  std::vector<SampleRange> windows;
  std::size_t dropped = 0;  // segments shorter than the window
};

/// One w-sample window per segment: the first one (variable_first) or one at a
/// uniformly random start in [start, end - w] (variable_random, seeded).
Extraction extract_representative(std::span<const SampleRange> segments, std::size_t w,
                                  const ExtractionStrategy& strategy);

struct VoteConfig {
  std::size_t min_channels = 2;
  std::size_t tolerance_samples = 2;
  std::size_t min_segment = 0;
};

/// Multi-channel boundary voting. Scanning pooled positions left to right, a
/// position p opens a group with every boundary in [p, p + tolerance]; if the
/// group spans at least min_channels distinct channels, p is emitted and the
/// group consumed. Afterwards any boundary closer than min_segment to the
/// previously kept one is dropped (left to right).
BoundarySet multichannel_vote(std::span<const BoundarySet> per_channel, const VoteConfig& config);

}  // namespace ctxseg
