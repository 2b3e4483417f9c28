#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "ctxseg/baselines.hpp"
#include "ctxseg/rng.hpp"
#include "ctxseg/synth.hpp"
#include "oracles.hpp"

namespace ctxseg {
namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = standard_normal(rng);
  return x;
}

TEST(Varri, HandWorkedDistance) {
  const std::vector<double> x{1, -1, 1, -1, 0, 0, 0, 0};
  const auto g = varri_distance(x, 4, 1.0, 7.0);
  EXPECT_DOUBLE_EQ(g[4], 46.0);
}

TEST(Varri, ConstantSignalHasZeroDistance) {
  const std::vector<double> x(100, 2.5);
  for (double v : varri_distance(x, 10, 1.0, 7.0)) EXPECT_EQ(v, 0.0);
  EXPECT_TRUE(varri_segment(TimeSeries(x, 100.0), VarriConfig{.window_samples = 10}).empty());
}

TEST(Varri, MatchesDirectSums) {
  const auto x = noise(300, 8);
  for (std::size_t w : {2u, 7u, 32u}) {
    const auto g = varri_distance(x, w, 1.0, 7.0);
    const auto ref = oracle::varri_distance(x, w, 1.0, 7.0);
    ASSERT_EQ(g.size(), ref.size());
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g[i], ref[i], 1e-9 * (1 + ref[i])) << w << " " << i;
  }
}

TEST(Varri, TooShort) {
  EXPECT_THROW(varri_distance(std::vector<double>(7, 1.0), 4, 1.0, 7.0), std::invalid_argument);
}

TEST(LocalMaxima, IsolatedSpikeAboveThreshold) {
  std::vector<double> g(50, 0.0);
  g[20] = 5.0;
  const std::vector<double> thr(50, 1.0);
  EXPECT_EQ(local_maxima(g, 3, thr), std::vector<std::size_t>{20});
}

TEST(LocalMaxima, PlateauKeepsLeftmost) {
  const std::vector<double> g{0, 2, 2, 2, 0, 1, 0};
  EXPECT_EQ(local_maxima(g, 1), (std::vector<std::size_t>{1, 5}));
}

TEST(LocalMaxima, HalfWidthSuppressesNeighbors) {
  const std::vector<double> g{0, 3, 0, 4, 0, 0, 0, 0, 2, 0};
  EXPECT_EQ(local_maxima(g, 1), (std::vector<std::size_t>{1, 3, 8}));
  EXPECT_EQ(local_maxima(g, 2), (std::vector<std::size_t>{3, 8}));
}

TEST(LocalMaxima, ExtremaHalfWidth) {
  EXPECT_EQ(extrema_half_width(0.0, 256.0), 1u);
  EXPECT_EQ(extrema_half_width(0.1, 256.0), 13u);
}

TEST(Nleo, EnergyOfShortSequence) {
  const auto q = nleo_energy(std::vector<double>{1, 2, 3, 4});
  ASSERT_EQ(q.size(), 4u);
  EXPECT_DOUBLE_EQ(q[3], 2.0);
}

TEST(Nleo, ConstantSignalHasZeroDistance) {
  const std::vector<double> x(80, -1.5);
  for (double v : nleo_distance(x, 8)) EXPECT_EQ(v, 0.0);
}

TEST(Nleo, MatchesDirectSums) {
  const auto x = noise(250, 9);
  for (std::size_t w : {1u, 5u, 40u}) {
    const auto g = nleo_distance(x, w);
    const auto ref = oracle::nleo_distance(x, w);
    ASSERT_EQ(g.size(), ref.size());
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g[i], ref[i], 1e-9 * (1 + ref[i])) << w << " " << i;
  }
}

TEST(Nleo, TooShort) { EXPECT_THROW(nleo_distance(std::vector<double>(10, 1.0), 4), std::invalid_argument); }

TEST(Sps, PeriodicSignalHasNoBoundary) {
  // Period 32 divides the 64-sample window, so every pair of contiguous
  // windows sees identical band powers.
  std::vector<double> x(1024);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::sin(2.0 * std::numbers::pi * i / 32.0) + 0.5 * std::cos(2.0 * std::numbers::pi * i / 8.0);
  }
  SpsConfig c;
  c.window_samples = 64;
  EXPECT_TRUE(sps_segment(TimeSeries(x, 128.0), c).boundaries.empty());
}

TEST(Sps, NullFalsePositiveRate) {
  SpsConfig c;
  c.alpha = 0.001;
  const double seconds = 60.0;
  const auto x = noise(static_cast<std::size_t>(seconds * 256), 31);
  const auto r = sps_segment(TimeSeries(x, 256.0), c);
  EXPECT_LT(static_cast<double>(r.boundaries.size()), seconds / 10.0);
}

TEST(Sps, BandPowersOfTone) {
  constexpr std::size_t n = 256;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::cos(2.0 * std::numbers::pi * 11.0 * i / n);
  const auto p = band_powers(x, 256.0, default_sps_bands());
  // 11 Hz falls in the 10-13 Hz band only.
  for (std::size_t b = 0; b < p.size(); ++b) {
    if (b == 5) EXPECT_GT(p[b], 1.0);
    else EXPECT_LT(p[b], 1e-12);
  }
}

TEST(Sps, BandValidation) {
  SpsConfig c;
  c.bands[3] = {9.0, 7.0};
  EXPECT_THROW(sps_segment(TimeSeries(noise(512, 1), 256.0), c), std::invalid_argument);
  c = {};
  c.bands[8] = {30.0, 200.0};
  EXPECT_THROW(sps_segment(TimeSeries(noise(512, 1), 256.0), c), std::invalid_argument);
}

TEST(Baselines, HarmonicsSensitivity) {
  const auto h = generate_harmonics(HarmonicsSpec::preset());
  const auto varri = varri_segment(h.series, VarriConfig{});
  const auto nleo = nleo_segment(h.series, NleoConfig{});
  EXPECT_GT(varri.size(), h.ground_truth.size());
  EXPECT_GT(nleo.size(), h.ground_truth.size());
}

}  // namespace
}  // namespace ctxseg
