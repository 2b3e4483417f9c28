#include <vector>

#include <gtest/gtest.h>

#include "ctxseg/boundary.hpp"
#include "ctxseg/ctxgen.hpp"
#include "ctxseg/rng.hpp"
#include "ctxseg/segmenter.hpp"
#include "ctxseg/synth.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace ctxseg {
namespace {

std::vector<std::size_t> positions(const BoundarySet& b) { return {b.positions().begin(), b.positions().end()}; }

TEST(BoundarySet, Validation) {
  EXPECT_NO_THROW(BoundarySet({1, 5, 9}, 10));
  EXPECT_THROW(BoundarySet({0, 5}, 10), std::invalid_argument);
  EXPECT_THROW(BoundarySet({5, 10}, 10), std::invalid_argument);
  EXPECT_THROW(BoundarySet({5, 5}, 10), std::invalid_argument);
  EXPECT_THROW(BoundarySet({6, 5}, 10), std::invalid_argument);
  BoundarySet b(10);
  b.push_back(3);
  EXPECT_THROW(b.push_back(3), std::invalid_argument);
  EXPECT_THROW(b.push_back(10), std::invalid_argument);
}

TEST(Segments, SingleBoundary) {
  const auto s = segments_from_boundaries(BoundarySet({100}, 300));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], (SampleRange{0, 100}));
  EXPECT_EQ(s[1], (SampleRange{100, 300}));
}

TEST(Segments, NoBoundaries) {
  const auto s = segments_from_boundaries(BoundarySet(300));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], (SampleRange{0, 300}));
}

TEST(Ctxseg, ConstantSignalHasNoBoundaries) {
  const TimeSeries x(std::vector<double>(2000, 3.25), 256.0);
  for (double alpha : {0.5, 0.05, 0.001}) {
    CtxsegConfig c;
    c.alpha = alpha;
    EXPECT_TRUE(ctxseg_segment(x, c).boundaries.empty());
  }
}

TEST(Ctxseg, ShortSignalIsFlagged) {
  const TimeSeries x(std::vector<double>(128, 1.0), 256.0);
  const auto r = ctxseg_segment(x, CtxsegConfig{});
  EXPECT_TRUE(r.short_signal);
  EXPECT_TRUE(r.boundaries.empty());
  EXPECT_EQ(r.boundaries.signal_length(), 128u);
}

TEST(Ctxseg, ConfigValidation) {
  const TimeSeries x(std::vector<double>(500, 1.0), 256.0);
  CtxsegConfig c;
  c.window_samples = 1;
  EXPECT_THROW(ctxseg_segment(x, c), std::invalid_argument);
  c = {};
  c.stride_samples = 0;
  EXPECT_THROW(ctxseg_segment(x, c), std::invalid_argument);
  c = {};
  c.alpha = 1.0;
  EXPECT_THROW(ctxseg_segment(x, c), std::invalid_argument);
}

TEST(Ctxseg, MatchesStraightTranscription) {
  testing::Gen gen(2718);
  for (int round = 0; round < 25; ++round) {
    const std::size_t w = gen.index(8, 40);
    const std::size_t s = gen.index(1, 4);
    const std::size_t n = gen.index(w + s, 500);
    const auto samples = gen.piecewise_signal(n, gen.index(1, 5));
    CtxsegConfig c;
    c.window_samples = w;
    c.stride_samples = s;
    c.alpha = 0.05;
    const auto r = ctxseg_segment(TimeSeries(samples, 128.0), c);
    std::vector<double> ref_p;
    const auto ref = oracle::ctxseg(samples, w, s, c.alpha, &ref_p);
    ASSERT_EQ(positions(r.boundaries), ref) << "round " << round;
    ASSERT_EQ(r.p_values.size(), ref_p.size());
    for (std::size_t i = 0; i < ref_p.size(); ++i) EXPECT_NEAR(r.p_values[i], ref_p[i], 1e-7);
  }
}

TEST(Ctxseg, HarmonicsSegmentsStayLongerThanWindow) {
  const auto h = generate_harmonics(HarmonicsSpec::preset());
  const auto r = ctxseg_segment(h.series, CtxsegConfig{});
  const auto segs = segments_from_boundaries(r.boundaries);
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) EXPECT_GE(segs[i].length(), 128u);
}

TEST(Ctxseg, SlideByStrideVisitsFewerPositions) {
  const auto h = generate_harmonics(HarmonicsSpec::preset());
  CtxsegConfig c;
  c.stride_samples = 4;
  const auto step_one = ctxseg_segment(h.series, c);
  c.slide_by_stride = true;
  const auto step_four = ctxseg_segment(h.series, c);
  EXPECT_LT(step_four.comparisons, step_one.comparisons);
}

TEST(Ctxseg, DetectsRateStep) {
  // 20 Hz -> 40 Hz at 1 s: the first boundary should follow within a second
  // for most seeds.
  const ContextSchedule schedule({{20.0, 1.0}, {40.0, 5.0}});
  int found_quickly = 0;
  const int seeds = 100;
  for (int k = 0; k < seeds; ++k) {
    GeneratorConfig g;
    g.seed = derive_seed(99, k);
    const auto sig = generate(schedule, g);
    const auto r = ctxseg_segment(sig.series, CtxsegConfig{});
    for (std::size_t b : r.boundaries.positions()) {
      if (b >= 256) {
        if (b < 512) ++found_quickly;
        break;
      }
    }
  }
  EXPECT_GE(found_quickly, seeds * 6 / 10);
}

}  // namespace
}  // namespace ctxseg
