#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ctxseg/boundary.hpp"
#include "ctxseg/rng.hpp"

namespace ctxseg::testing {

/// Source of random test inputs. Every case of a property gets its own Gen
/// seeded from (property seed, case index), so a failure names the seed that
/// reproduces it.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : seed_(seed), rng_(seed) {}

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  Rng& rng() noexcept { return rng_; }

  std::size_t index(std::size_t lo, std::size_t hi);  // inclusive range
  double real(double lo, double hi);
  double normal(double mean = 0.0, double std = 1.0);
  bool coin(double p = 0.5);
  std::uint64_t bits() { return rng_(); }

  std::vector<double> reals(std::size_t n, double lo, double hi);
  std::vector<double> normals(std::size_t n, double std = 1.0);

  /// Concatenated noise pieces, each with its own scale and tone, so that
  /// spectra change at the joins.
  std::vector<double> piecewise_signal(std::size_t n, std::size_t pieces);

  /// Valid boundary set with up to `max_count` positions in (0, length).
  BoundarySet boundaries(std::size_t length, std::size_t max_count);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(0, i - 1)]);
  }

 private:
  std::uint64_t seed_;
  Rng rng_;
};

struct PropertyReport {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  [[nodiscard]] bool ok() const noexcept { return failures == 0 && cases > 0; }
};

/// A property body returns nullopt when the case holds and a description of
/// the counterexample otherwise. Exceptions count as failures.
using Property = std::function<std::optional<std::string>(Gen&)>;

PropertyReport check_property(const std::string& name, std::size_t cases, std::uint64_t seed,
                              const Property& property);

}  // namespace ctxseg::testing
