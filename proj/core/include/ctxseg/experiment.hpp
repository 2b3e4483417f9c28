#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxseg/baselines.hpp"
#include "ctxseg/boundary.hpp"
#include "ctxseg/ctxgen.hpp"
#include "ctxseg/metrics.hpp"
#include "ctxseg/segmenter.hpp"
#include "ctxseg/strategies.hpp"
#include "ctxseg/synth.hpp"

namespace ctxseg {

// ---------------------------------------------------------------------------
// Segmenter dispatch

enum class Method { ctxseg, varri, nleo, sps, fixed };

/// Throws std::invalid_argument naming the valid methods.
Method parse_method(std::string_view name);
std::string_view to_string(Method method) noexcept;
inline constexpr std::string_view kValidMethods = "ctxseg, varri, nleo, sps, fixed";

/// Method plus the configuration of every method. The window is given in
/// seconds and resolved against the signal's sample rate when run, unless
/// window_samples is set explicitly.
struct SegmenterSpec {
  Method method = Method::ctxseg;
  double window_s = 0.5;
  std::optional<std::size_t> window_samples;
  CtxsegConfig ctxseg;
  VarriConfig varri;
  NleoConfig nleo;
  SpsConfig sps;
  double fixed_overlap = 0.5;

  [[nodiscard]] std::size_t resolve_window(double sample_rate_hz) const;
  /// Significance level used by ctxseg and sps; absent for the other methods.
  [[nodiscard]] std::optional<double> alpha() const;
  void set_alpha(double alpha);
};

struct Segmentation {
  BoundarySet boundaries;
  std::vector<double> p_values;  // filled by ctxseg and sps only
  bool short_signal = false;     // too short for the method; boundaries are empty
};

/// Runs the configured method on one channel. A signal too short for the
/// window yields empty boundaries with short_signal set instead of an error.
Segmentation run_segmenter(const SegmenterSpec& spec, const TimeSeries& signal);

/// Boundaries at the start of every fixed slice after the first.
BoundarySet fixed_boundaries(std::size_t signal_length, const FixedSlicing& slicing);

/// Reads method, window_s / window_samples, stride_samples, alpha, taper,
/// slide_by_stride, include_dc, k_a, k_f, threshold_window_s,
/// extrema_window_s, bands, jump_after_boundary and overlap.
SegmenterSpec segmenter_from_json(const nlohmann::json& doc);

// ---------------------------------------------------------------------------
// Signal sources

enum class SourceKind { ctxgen, harmonics, ar, file };

struct ArSource {
  std::vector<std::string> states;
  // Candidate exemplar files per state; each trial fits its models on one
  // exemplar per state chosen uniformly at random.
  std::map<std::string, std::vector<std::filesystem::path>> exemplars;
  std::size_t order = kDefaultArOrder;
  double segment_duration_s = 5.0;
  double sample_rate_hz = 256.0;
  std::optional<double> exemplar_sample_rate_hz;  // needed for CSV exemplars
};

struct FileSource {
  std::filesystem::path path;
  std::optional<double> sample_rate_hz;
  std::size_t channel = 0;
  std::filesystem::path ground_truth;
};

struct SignalSource {
  SourceKind kind = SourceKind::ctxgen;
  ContextSchedule schedule;
  GeneratorConfig generator;
  HarmonicsSpec harmonics = HarmonicsSpec::preset();
  ArSource ar;
  FileSource file;
};

/// The seven-step 5 s CTXGEN schedule {2, 40, 20, 10, 40, 6, 20} Hz.
ContextSchedule benchmark_schedule();

/// Produces the signal for one trial. The seed only matters for stochastic
/// sources.
GeneratedSignal make_signal(const SignalSource& source, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Experiments

enum class SweepKind { none, window, rate_pairs, oscillation, segment_sizes };

struct SweepSpec {
  SweepKind kind = SweepKind::none;
  std::vector<double> windows_s = {0.5, 1.0, 2.0, 2.5, 3.0, 4.0};
  std::vector<double> rates_hz = {2.0, 6.0, 10.0, 20.0, 40.0};
  double onset_s = 1.0;             // rate pairs: time of the single change
  double pair_duration_s = 6.0;     // rate pairs: total signal length
  std::vector<double> state_durations_s = {1, 2, 3, 4, 5, 6};
  double oscillation_total_s = 36.0;
};

struct ExperimentSpec {
  std::string name = "experiment";
  SignalSource source;
  SegmenterSpec segmenter;
  std::vector<double> alphas;  // empty: the segmenter's own alpha only
  std::optional<std::size_t> tolerance_samples;  // default: 2 * window
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  SweepSpec sweep;
  std::filesystem::path report_path;
  std::filesystem::path plot_path;

  void validate() const;
};

/// Relative file paths in `doc` are resolved against `base_dir`.
ExperimentSpec experiment_from_json(const nlohmann::json& doc,
                                    const std::filesystem::path& base_dir = {});

/// Everything measured on one signal under one segmenter configuration.
struct TrialOutcome {
  EvaluationReport report;
  std::vector<std::optional<double>> delays;  // per ground-truth boundary
  std::vector<double> segment_sizes_s;
};

/// One sweep point and significance level.
struct Condition {
  std::string series;  // "alpha=0.05", or the method name when it has no alpha
  std::string x;       // sweep coordinate, empty without a sweep
  std::optional<double> alpha;
  std::vector<TrialOutcome> trials;  // in trial-index order
  EnsembleReport ensemble;
};

struct ExperimentResult {
  std::vector<Condition> conditions;
};

class TrialFailure : public std::runtime_error {
 public:
  TrialFailure(std::size_t index, std::uint64_t seed, const std::string& what);
  [[nodiscard]] std::size_t index() const noexcept { return index_; }
  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::size_t index_;
  std::uint64_t seed_;
};

/// Calls task(i) for i in [0, count) on up to `jobs` threads. If tasks throw,
/// the exception of the lowest failing index is rethrown after all threads
/// have stopped.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task);

/// Trial k uses seed derive_seed(spec.seed, k); sweep point j of that trial
/// generates its signal from derive_seed(trial seed, j). Results are identical
/// for every value of `jobs`.
ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned jobs = 1);

/// label,x,alpha,trials,<means>,<variances>: one row per condition.
std::string experiment_report_csv(const ExperimentSpec& spec, const ExperimentResult& result);
nlohmann::json experiment_report_json(const ExperimentSpec& spec, const ExperimentResult& result);

/// Long-format plot data with columns series,x,variable,value. Which
/// variables appear depends on the sweep kind.
std::string experiment_plot_csv(const ExperimentSpec& spec, const ExperimentResult& result);

/// Median and population variance; both NaN for an empty input.
struct Spread {
  double median = 0.0;
  double variance = 0.0;
};
Spread spread(std::vector<double> values);

}  // namespace ctxseg
