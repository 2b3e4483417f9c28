#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ctxseg/boundary.hpp"
#include "ctxseg/rng.hpp"
#include "ctxseg/signal.hpp"

namespace ctxseg {

/// Leaky integrate-and-fire membrane parameters.
struct LifParams {
  double v_thresh = 20.0;
  double leak_tau = 0.05;  // seconds
  double drive = 0.0;      // constant I*R product
  double dt = 1.0 / 256.0; // seconds per sample

  void validate() const;
};

struct ScheduleStep {
  double firing_rate_hz = 0.0;
  double duration_s = 0.0;
};

/// Piecewise-constant firing-rate schedule. Each step is one context state.
class ContextSchedule {
 public:
  ContextSchedule() = default;
  explicit ContextSchedule(std::vector<ScheduleStep> steps);

  [[nodiscard]] std::span<const ScheduleStep> steps() const noexcept { return steps_; }
  [[nodiscard]] bool empty() const noexcept { return steps_.empty(); }
  [[nodiscard]] double total_duration_s() const noexcept;

  /// Samples per step, each step rounded to whole samples.
  [[nodiscard]] std::vector<std::size_t> step_samples(double sample_rate_hz) const;

  /// Boundaries at the cumulative step lengths (excluding 0 and the end).
  [[nodiscard]] BoundarySet ground_truth(double sample_rate_hz) const;

  /// Throws if any step has f_r * dt > 1, a negative rate or a non-positive duration.
  void validate(double sample_rate_hz) const;

  /// Steps alternating between two rates, each lasting `state_duration_s`,
  /// until at least `total_duration_s` is covered.
  static ContextSchedule oscillating(double rate_a_hz, double rate_b_hz, double state_duration_s,
                                     double total_duration_s);

 private:
  std::vector<ScheduleStep> steps_;
};

struct GeneratorConfig {
  std::size_t neuron_count = 500;
  LifParams lif;  // lif.dt is overwritten with 1 / sample_rate_hz by generate()
  double sample_rate_hz = 256.0;
  double spike_amplitude = 1.0;
  double spike_noise_std = 0.1;
  // When output_noise_relative is set, the additive output noise has standard
  // deviation output_noise_std times the standard deviation of the clean sum.
  double output_noise_std = 0.01;
  bool output_noise_relative = true;
  std::uint64_t seed = 0;

  void validate() const;
};

struct GeneratedSignal {
  TimeSeries series;
  BoundarySet ground_truth;
  ContextSchedule schedule;  // empty for non-CTXGEN sources
};

/// Independent Bernoulli(f_r * dt) indicators.
/// Throws std::invalid_argument("firing rate exceeds sample rate") if f_r * dt > 1.
std::vector<std::uint8_t> sample_spike_train(double firing_rate_hz, std::size_t n_samples,
                                             double dt, Rng& rng);

/// Explicit-Euler LIF trace. `increments[n]` is the spike contribution added at
/// sample n (zero when no spike). Per sample: leak toward `drive`, add the
/// increment, reset to 0 if the threshold is reached. Starts from v = 0.
std::vector<double> simulate_lif_lfp(const LifParams& params, std::span<const double> increments);

/// Same, with every spike contributing `amplitude`.
std::vector<double> simulate_lif_lfp(const LifParams& params, std::span<const std::uint8_t> spikes,
                                     double amplitude = 1.0);

/// Weighted sum sum_i weights[i] * lfps[i][n] plus N(0, noise_std^2) noise.
std::vector<double> assemble_signal(std::span<const std::vector<double>> lfps,
                                    std::span<const double> weights, double noise_std, Rng& rng);

/// As above with weights drawn once from N(0, 1) using `rng`.
std::vector<double> assemble_signal(std::span<const std::vector<double>> lfps, double noise_std,
                                    Rng& rng);

/// Full CTXGEN pipeline. Deterministic in (schedule, config); the result does
/// not depend on `jobs`, which only sets how many threads simulate neurons.
GeneratedSignal generate(const ContextSchedule& schedule, const GeneratorConfig& config,
                         unsigned jobs = 1);

}  // namespace ctxseg
