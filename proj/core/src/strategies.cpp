#include "ctxseg/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/random/uniform_int_distribution.hpp>

#include "ctxseg/log.hpp"
#include "ctxseg/rng.hpp"

namespace ctxseg {

std::size_t FixedSlicing::stride() const {
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) {
    throw std::invalid_argument("fixed slicing: overlap must be in [0, 1)");
  }
  const double s = static_cast<double>(window_samples) * (1.0 - overlap_fraction);
  const auto stride = static_cast<long long>(std::llround(s));
  if (stride < 1) throw std::invalid_argument("fixed slicing: stride below one sample");
  return static_cast<std::size_t>(stride);
}

std::vector<SampleRange> fixed_slices(std::size_t signal_length, const FixedSlicing& slicing) {
  if (slicing.window_samples == 0) throw std::invalid_argument("fixed slicing: empty window");
  const std::size_t stride = slicing.stride();
  std::vector<SampleRange> out;
  if (slicing.window_samples > signal_length) {
    log::warn("fixed slicing: window of {} samples exceeds signal of {}", slicing.window_samples,
              signal_length);
    return out;
  }
  for (std::size_t start = 0; start + slicing.window_samples <= signal_length; start += stride) {
    out.push_back({start, start + slicing.window_samples});
  }
  return out;
}

ExtractionKind parse_extraction_kind(std::string_view name) {
  if (name == "vf" || name == "variable_first") return ExtractionKind::variable_first;
  if (name == "vr" || name == "variable_random") return ExtractionKind::variable_random;
  throw std::invalid_argument("unknown extraction strategy '" + std::string(name) +
                              "' (expected vf or vr)");
}

Extraction extract_representative(std::span<const SampleRange> segments, std::size_t w,
                                  const ExtractionStrategy& strategy) {
  if (w == 0) throw std::invalid_argument("extract_representative: empty window");
  Extraction out;
  Rng rng(strategy.seed);
  for (const auto& seg : segments) {
    if (seg.end < seg.start || seg.length() < w) {
      ++out.dropped;
      continue;
    }
    std::size_t start = seg.start;
    if (strategy.kind == ExtractionKind::variable_random) {
      boost::random::uniform_int_distribution<std::size_t> pick(seg.start, seg.end - w);
      start = pick(rng);
    }
    out.windows.push_back({start, start + w});
  }
  if (out.dropped > 0) {
    log::warn("extract_representative: dropped {} segment(s) shorter than {} samples", out.dropped, w);
  }
  return out;
}

BoundarySet multichannel_vote(std::span<const BoundarySet> per_channel, const VoteConfig& config) {
  if (per_channel.empty()) throw std::invalid_argument("multichannel_vote: no channels");
  const std::size_t length = per_channel.front().signal_length();
  std::vector<std::pair<std::size_t, std::size_t>> pooled;  // (position, channel)
  for (std::size_t c = 0; c < per_channel.size(); ++c) {
    if (per_channel[c].signal_length() != length) {
      throw std::invalid_argument("multichannel_vote: channels differ in signal length");
    }
    for (std::size_t p : per_channel[c].positions()) pooled.emplace_back(p, c);
  }
  std::sort(pooled.begin(), pooled.end());

  std::vector<std::size_t> voted;
  std::vector<std::size_t> channels;
  std::size_t i = 0;
  while (i < pooled.size()) {
    const std::size_t anchor = pooled[i].first;
    std::size_t j = i;
    channels.clear();
    while (j < pooled.size() && pooled[j].first - anchor <= config.tolerance_samples) {
      channels.push_back(pooled[j].second);
      ++j;
    }
    std::sort(channels.begin(), channels.end());
    const auto distinct = static_cast<std::size_t>(
        std::unique(channels.begin(), channels.end()) - channels.begin());
    if (distinct >= config.min_channels) {
      voted.push_back(anchor);
      i = j;
    } else {
      ++i;
    }
  }

  BoundarySet out(length);
  for (std::size_t p : voted) {
    if (!out.empty() && p - out.positions().back() < config.min_segment) continue;
    out.push_back(p);
  }
  return out;
}

}  // namespace ctxseg
