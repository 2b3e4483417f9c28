#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ctxseg {

/// Half-open sample range [start, end).
struct SampleRange {
  std::size_t start = 0;
  std::size_t end = 0;

  [[nodiscard]] std::size_t length() const noexcept { return end - start; }
  friend bool operator==(const SampleRange&, const SampleRange&) = default;
};

/// Strictly increasing boundary positions inside (0, signal_length).
/// A boundary at position b means a new segment starts at sample b.
class BoundarySet {
 public:
  BoundarySet() = default;
  explicit BoundarySet(std::size_t signal_length) : signal_length_(signal_length) {}
  /// Throws std::invalid_argument if the positions violate the invariants.
  BoundarySet(std::vector<std::size_t> positions, std::size_t signal_length);

  [[nodiscard]] std::span<const std::size_t> positions() const noexcept { return positions_; }
  [[nodiscard]] std::size_t signal_length() const noexcept { return signal_length_; }
  [[nodiscard]] std::size_t size() const noexcept { return positions_.size(); }
  [[nodiscard]] bool empty() const noexcept { return positions_.empty(); }

  /// Appends a position; it must be greater than the current last one.
  void push_back(std::size_t position);

  friend bool operator==(const BoundarySet&, const BoundarySet&) = default;

 private:
  std::vector<std::size_t> positions_;
  std::size_t signal_length_ = 0;
};

/// Ground truth uses the same representation as detected boundaries.
using GroundTruth = BoundarySet;

/// Contiguous, non-overlapping partition of [0, signal_length) at the boundaries.
std::vector<SampleRange> segments_from_boundaries(const BoundarySet& boundaries);

}  // namespace ctxseg
