#include <vector>

#include <benchmark/benchmark.h>

#include "ctxseg/baselines.hpp"
#include "ctxseg/ctxgen.hpp"
#include "ctxseg/experiment.hpp"
#include "ctxseg/metrics.hpp"
#include "ctxseg/rng.hpp"
#include "ctxseg/segmenter.hpp"
#include "ctxseg/signal.hpp"
#include "ctxseg/stats.hpp"
#include "ctxseg/synth.hpp"

namespace ctxseg {
namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = standard_normal(rng);
  return x;
}

void BM_LogSpectrum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = noise(n, 1);
  LogSpectrumEvaluator eval(n, {TaperKind::hamming, true});
  std::vector<double> out(eval.bin_count());
  for (auto _ : state) {
    eval.evaluate(x, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_LogSpectrum)->Arg(128)->Arg(256)->Arg(1024);

void BM_PairedT(benchmark::State& state) {
  const auto a = noise(65, 2);
  const auto b = noise(65, 3);
  for (auto _ : state) benchmark::DoNotOptimize(paired_t_test(a, b));
}
BENCHMARK(BM_PairedT);

void BM_AndersonDarling(benchmark::State& state) {
  const auto a = noise(9, 4);
  const auto b = noise(9, 5);
  for (auto _ : state) benchmark::DoNotOptimize(anderson_darling_2sample(a, b));
}
BENCHMARK(BM_AndersonDarling);

void BM_CtxsegHarmonics(benchmark::State& state) {
  const auto h = generate_harmonics(HarmonicsSpec::preset());
  CtxsegConfig c;
  c.window_samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ctxseg_segment(h.series, c).boundaries.size());
}
BENCHMARK(BM_CtxsegHarmonics)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Baselines(benchmark::State& state) {
  const auto h = generate_harmonics(HarmonicsSpec::preset());
  for (auto _ : state) {
    benchmark::DoNotOptimize(varri_segment(h.series, VarriConfig{}).size());
    benchmark::DoNotOptimize(nleo_segment(h.series, NleoConfig{}).size());
  }
}
BENCHMARK(BM_Baselines)->Unit(benchmark::kMillisecond);

void BM_Sps(benchmark::State& state) {
  const auto h = generate_harmonics(HarmonicsSpec::preset());
  for (auto _ : state) benchmark::DoNotOptimize(sps_segment(h.series, SpsConfig{}).boundaries.size());
}
BENCHMARK(BM_Sps)->Unit(benchmark::kMillisecond);

void BM_Generate(benchmark::State& state) {
  GeneratorConfig config;
  config.neuron_count = static_cast<std::size_t>(state.range(0));
  const auto schedule = benchmark_schedule();
  for (auto _ : state) {
    ++config.seed;
    benchmark::DoNotOptimize(generate(schedule, config).series.size());
  }
}
BENCHMARK(BM_Generate)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_Similarity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  BoundarySet a(100000);
  BoundarySet b(100000);
  for (std::size_t i = 1; i <= n; ++i) {
    a.push_back(i * 90);
    b.push_back(i * 90 + (i % 7));
  }
  for (auto _ : state) benchmark::DoNotOptimize(boundary_similarity(a, b, 5));
}
BENCHMARK(BM_Similarity)->Arg(10)->Arg(100);

}  // namespace
}  // namespace ctxseg

BENCHMARK_MAIN();
