#include "ctxseg/ctxgen.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

namespace ctxseg {

namespace {

constexpr std::uint64_t kWeightStream = 0;
constexpr std::uint64_t kOutputNoiseStream = 1;
constexpr std::uint64_t kFirstNeuronStream = 2;

// Neurons are summed in fixed-size chunks and the chunk sums are combined in
// chunk order, so the floating-point result is identical for any thread count.
constexpr std::size_t kNeuronChunk = 50;

double spike_probability(double rate_hz, double dt) {
  const double p = rate_hz * dt;
  if (p > 1.0) throw std::invalid_argument("firing rate exceeds sample rate");
  return p;
}

}  // namespace

void LifParams::validate() const {
  if (!(v_thresh > 0.0)) throw std::invalid_argument("LifParams: v_thresh must be positive");
  if (!(leak_tau > 0.0)) throw std::invalid_argument("LifParams: leak_tau must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("LifParams: dt must be positive");
}

ContextSchedule::ContextSchedule(std::vector<ScheduleStep> steps) : steps_(std::move(steps)) {
  for (const auto& s : steps_) {
    if (!(s.firing_rate_hz >= 0.0) || !std::isfinite(s.firing_rate_hz)) {
      throw std::invalid_argument("ContextSchedule: firing rate must be finite and >= 0");
    }
    if (!(s.duration_s > 0.0) || !std::isfinite(s.duration_s)) {
      throw std::invalid_argument("ContextSchedule: step duration must be positive");
    }
  }
}

double ContextSchedule::total_duration_s() const noexcept {
  double total = 0.0;
  for (const auto& s : steps_) total += s.duration_s;
  return total;
}

std::vector<std::size_t> ContextSchedule::step_samples(double sample_rate_hz) const {
  std::vector<std::size_t> out;
  out.reserve(steps_.size());
  for (const auto& s : steps_) {
    out.push_back(static_cast<std::size_t>(std::llround(s.duration_s * sample_rate_hz)));
  }
  return out;
}

BoundarySet ContextSchedule::ground_truth(double sample_rate_hz) const {
  const auto lengths = step_samples(sample_rate_hz);
  const std::size_t total = std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});
  BoundarySet gt(total);
  std::size_t pos = 0;
  for (std::size_t i = 0; i + 1 < lengths.size(); ++i) {
    pos += lengths[i];
    if (pos > 0 && pos < total && (gt.empty() || pos > gt.positions().back())) gt.push_back(pos);
  }
  return gt;
}

void ContextSchedule::validate(double sample_rate_hz) const {
  if (steps_.empty()) throw std::invalid_argument("ContextSchedule: empty schedule");
  if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("ContextSchedule: bad sample rate");
  const double dt = 1.0 / sample_rate_hz;
  for (const auto& s : steps_) {
    spike_probability(s.firing_rate_hz, dt);
    if (std::llround(s.duration_s * sample_rate_hz) < 1) {
      throw std::invalid_argument("ContextSchedule: step shorter than one sample");
    }
  }
}

ContextSchedule ContextSchedule::oscillating(double rate_a_hz, double rate_b_hz,
                                             double state_duration_s, double total_duration_s) {
  if (!(state_duration_s > 0.0)) throw std::invalid_argument("oscillating: state duration must be positive");
  std::vector<ScheduleStep> steps;
  double covered = 0.0;
  bool first = true;
  while (covered + 1e-9 < total_duration_s) {
    steps.push_back({first ? rate_a_hz : rate_b_hz, state_duration_s});
    covered += state_duration_s;
    first = !first;
  }
  return ContextSchedule(std::move(steps));
}

void GeneratorConfig::validate() const {
  if (neuron_count < 1) throw std::invalid_argument("GeneratorConfig: neuron_count must be >= 1");
  if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("GeneratorConfig: sample rate must be positive");
  if (spike_noise_std < 0.0 || output_noise_std < 0.0) {
    throw std::invalid_argument("GeneratorConfig: noise levels must be >= 0");
  }
  LifParams p = lif;
  p.dt = 1.0 / sample_rate_hz;
  p.validate();
}

std::vector<std::uint8_t> sample_spike_train(double firing_rate_hz, std::size_t n_samples,
                                             double dt, Rng& rng) {
  if (firing_rate_hz < 0.0) throw std::invalid_argument("firing rate must be >= 0");
  const double p = spike_probability(firing_rate_hz, dt);
  boost::random::bernoulli_distribution<double> spike(p);
  std::vector<std::uint8_t> out(n_samples);
  for (auto& s : out) s = spike(rng) ? 1 : 0;
  return out;
}

std::vector<double> simulate_lif_lfp(const LifParams& params, std::span<const double> increments) {
  params.validate();
  if (increments.empty()) throw std::invalid_argument("simulate_lif_lfp: empty spike train");
  std::vector<double> v(increments.size());
  const double leak = params.dt / params.leak_tau;
  double state = 0.0;
  for (std::size_t n = 0; n < increments.size(); ++n) {
    state += leak * (params.drive - state);
    state += increments[n];
    if (state >= params.v_thresh) state = 0.0;
    v[n] = state;
  }
  return v;
}

std::vector<double> simulate_lif_lfp(const LifParams& params, std::span<const std::uint8_t> spikes,
                                     double amplitude) {
  std::vector<double> inc(spikes.size());
  std::transform(spikes.begin(), spikes.end(), inc.begin(),
                 [amplitude](std::uint8_t s) { return s ? amplitude : 0.0; });
  return simulate_lif_lfp(params, inc);
}

std::vector<double> assemble_signal(std::span<const std::vector<double>> lfps,
                                    std::span<const double> weights, double noise_std, Rng& rng) {
  if (lfps.empty()) throw std::invalid_argument("assemble_signal: no LFPs");
  if (weights.size() != lfps.size()) throw std::invalid_argument("assemble_signal: weight count mismatch");
  const std::size_t n = lfps.front().size();
  for (const auto& l : lfps) {
    if (l.size() != n) throw std::invalid_argument("assemble_signal: ragged LFPs");
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < lfps.size(); ++i) {
    for (std::size_t k = 0; k < n; ++k) x[k] += weights[i] * lfps[i][k];
  }
  if (noise_std > 0.0) {
    boost::random::normal_distribution<double> noise(0.0, noise_std);
    for (auto& v : x) v += noise(rng);
  }
  return x;
}

std::vector<double> assemble_signal(std::span<const std::vector<double>> lfps, double noise_std,
                                    Rng& rng) {
  std::vector<double> w(lfps.size());
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  for (auto& v : w) v = normal(rng);
  return assemble_signal(lfps, w, noise_std, rng);
}

GeneratedSignal generate(const ContextSchedule& schedule, const GeneratorConfig& config,
                         unsigned jobs) {
  config.validate();
  schedule.validate(config.sample_rate_hz);

  LifParams lif = config.lif;
  lif.dt = 1.0 / config.sample_rate_hz;
  const double leak = lif.dt / lif.leak_tau;

  const auto lengths = schedule.step_samples(config.sample_rate_hz);
  const std::size_t total = std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});

  std::vector<double> probability;
  probability.reserve(schedule.steps().size());
  for (const auto& s : schedule.steps()) probability.push_back(s.firing_rate_hz * lif.dt);

  std::vector<double> weights(config.neuron_count);
  {
    Rng rng(derive_seed(config.seed, kWeightStream));
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    for (auto& w : weights) w = normal(rng);
  }

  const std::size_t chunks = (config.neuron_count + kNeuronChunk - 1) / kNeuronChunk;
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(total, 0.0));

  auto simulate_chunk = [&](std::size_t chunk) {
    auto& acc = partial[chunk];
    const std::size_t first = chunk * kNeuronChunk;
    const std::size_t last = std::min(first + kNeuronChunk, config.neuron_count);
    for (std::size_t i = first; i < last; ++i) {
      Rng rng(derive_seed(config.seed, kFirstNeuronStream + i));
      boost::random::normal_distribution<double> amp_noise(0.0, 1.0);
      const double w = weights[i];
      double v = 0.0;
      std::size_t n = 0;
      for (std::size_t step = 0; step < lengths.size(); ++step) {
        boost::random::bernoulli_distribution<double> spike(probability[step]);
        for (std::size_t k = 0; k < lengths[step]; ++k, ++n) {
          v += leak * (lif.drive - v);
          if (spike(rng)) {
            double a = config.spike_amplitude;
            if (config.spike_noise_std > 0.0) a += config.spike_noise_std * amp_noise(rng);
            v += a;
          }
          if (v >= lif.v_thresh) v = 0.0;
          acc[n] += w * v;
        }
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(chunks)));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) simulate_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) simulate_chunk(c);
      });
    }
  }

  std::vector<double> x(total, 0.0);
  for (const auto& acc : partial) {
    for (std::size_t k = 0; k < total; ++k) x[k] += acc[k];
  }

  if (config.output_noise_std > 0.0 && total > 0) {
    double sigma = config.output_noise_std;
    if (config.output_noise_relative) {
      const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(total);
      double ss = 0.0;
      for (double v : x) ss += (v - mean) * (v - mean);
      sigma *= std::sqrt(ss / static_cast<double>(total));
    }
    if (sigma > 0.0) {
      Rng rng(derive_seed(config.seed, kOutputNoiseStream));
      boost::random::normal_distribution<double> noise(0.0, sigma);
      for (auto& v : x) v += noise(rng);
    }
  }

  GeneratedSignal out;
  out.series = TimeSeries(std::move(x), config.sample_rate_hz);
  out.ground_truth = schedule.ground_truth(config.sample_rate_hz);
  out.schedule = schedule;
  return out;
}

}  // namespace ctxseg
