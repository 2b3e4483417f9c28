#include "ctxseg/boundary.hpp"

#include <stdexcept>
#include <string>

namespace ctxseg {

BoundarySet::BoundarySet(std::vector<std::size_t> positions, std::size_t signal_length)
    : signal_length_(signal_length) {
  positions_.reserve(positions.size());
  for (std::size_t p : positions) push_back(p);
}

void BoundarySet::push_back(std::size_t position) {
  if (position == 0 || position >= signal_length_) {
    throw std::invalid_argument("BoundarySet: position " + std::to_string(position) +
                                " outside (0, " + std::to_string(signal_length_) + ")");
  }
  if (!positions_.empty() && position <= positions_.back()) {
    throw std::invalid_argument("BoundarySet: positions must be strictly increasing");
  }
  positions_.push_back(position);
}

std::vector<SampleRange> segments_from_boundaries(const BoundarySet& boundaries) {
  std::vector<SampleRange> segments;
  if (boundaries.signal_length() == 0) return segments;
  segments.reserve(boundaries.size() + 1);
  std::size_t start = 0;
  for (std::size_t b : boundaries.positions()) {
    segments.push_back({start, b});
    start = b;
  }
  segments.push_back({start, boundaries.signal_length()});
  return segments;
}

}  // namespace ctxseg
