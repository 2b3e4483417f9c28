#pragma once

#include <cstdint>
#include <random>

namespace ctxseg {

/// Engine used everywhere randomness is needed. mt19937_64 output is fully
/// specified by the standard; distributions on top of it come from
/// Boost.Random so results do not depend on the standard library vendor.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Counter-based child seed: stream `index` of `master`. Child k can be
/// recreated without generating children 0..k-1.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Standard normal draw.
double standard_normal(Rng& rng);

/// Uniform draw in [0, 1).
double uniform01(Rng& rng);

}  // namespace ctxseg
