#include "ctxseg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>
#include <utility>

#include <boost/random/uniform_int_distribution.hpp>
#include <fmt/format.h>

#include "ctxseg/io.hpp"
#include "ctxseg/log.hpp"
#include "ctxseg/rng.hpp"

namespace ctxseg {

namespace fs = std::filesystem;
using nlohmann::json;

Method parse_method(std::string_view name) {
  if (name == "ctxseg") return Method::ctxseg;
  if (name == "varri") return Method::varri;
  if (name == "nleo") return Method::nleo;
  if (name == "sps") return Method::sps;
  if (name == "fixed") return Method::fixed;
  throw std::invalid_argument(fmt::format("unknown method '{}' (valid methods: {})", name, kValidMethods));
}

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::ctxseg: return "ctxseg";
    case Method::varri: return "varri";
    case Method::nleo: return "nleo";
    case Method::sps: return "sps";
    case Method::fixed: return "fixed";
  }
  return "?";
}

std::size_t SegmenterSpec::resolve_window(double sample_rate_hz) const {
  if (window_samples) {
    if (*window_samples == 0) throw std::invalid_argument("window must be at least one sample");
    return *window_samples;
  }
  if (!(window_s > 0.0)) throw std::invalid_argument("window_s must be positive");
  const auto n = std::llround(window_s * sample_rate_hz);
  if (n < 1) throw std::invalid_argument("window shorter than one sample");
  return static_cast<std::size_t>(n);
}

std::optional<double> SegmenterSpec::alpha() const {
  switch (method) {
    case Method::ctxseg: return ctxseg.alpha;
    case Method::sps: return sps.alpha;
    default: return std::nullopt;
  }
}

void SegmenterSpec::set_alpha(double alpha) {
  ctxseg.alpha = alpha;
  sps.alpha = alpha;
}

BoundarySet fixed_boundaries(std::size_t signal_length, const FixedSlicing& slicing) {
  BoundarySet out(signal_length);
  for (const auto& slice : fixed_slices(signal_length, slicing)) {
    if (slice.start > 0) out.push_back(slice.start);
  }
  return out;
}

namespace {

Segmentation too_short(const TimeSeries& signal, std::string_view method, std::size_t needed) {
  log::warn("{}: signal of {} samples is shorter than the {} samples needed; no boundaries", method,
            signal.size(), needed);
  Segmentation out;
  out.boundaries = BoundarySet(signal.size());
  out.short_signal = true;
  return out;
}

}  // namespace

Segmentation run_segmenter(const SegmenterSpec& spec, const TimeSeries& signal) {
  const std::size_t w = spec.resolve_window(signal.sample_rate_hz());
  Segmentation out;
  switch (spec.method) {
    case Method::ctxseg: {
      CtxsegConfig c = spec.ctxseg;
      c.window_samples = w;
      auto r = ctxseg_segment(signal, c);
      out.boundaries = std::move(r.boundaries);
      out.p_values = std::move(r.p_values);
      out.short_signal = r.short_signal;
      return out;
    }
    case Method::varri: {
      if (signal.size() < 2 * w) return too_short(signal, "varri", 2 * w);
      VarriConfig c = spec.varri;
      c.window_samples = w;
      out.boundaries = varri_segment(signal, c);
      return out;
    }
    case Method::nleo: {
      if (signal.size() < 2 * w + 3) return too_short(signal, "nleo", 2 * w + 3);
      NleoConfig c = spec.nleo;
      c.window_samples = w;
      out.boundaries = nleo_segment(signal, c);
      return out;
    }
    case Method::sps: {
      if (signal.size() < 2 * w) return too_short(signal, "sps", 2 * w);
      SpsConfig c = spec.sps;
      c.window_samples = w;
      auto r = sps_segment(signal, c);
      out.boundaries = std::move(r.boundaries);
      out.p_values = std::move(r.p_values);
      return out;
    }
    case Method::fixed: {
      if (signal.size() < w) return too_short(signal, "fixed", w);
      out.boundaries = fixed_boundaries(signal.size(), FixedSlicing{w, spec.fixed_overlap});
      return out;
    }
  }
  throw std::logic_error("unhandled method");
}

SegmenterSpec segmenter_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("segmenter settings must be an object");
  SegmenterSpec s;
  s.method = parse_method(doc.value("method", std::string(to_string(s.method))));
  s.window_s = doc.value("window_s", s.window_s);
  if (doc.contains("window_samples")) s.window_samples = doc.at("window_samples").get<std::size_t>();
  if (doc.contains("alpha")) s.set_alpha(doc.at("alpha").get<double>());
  if (doc.contains("taper")) {
    const auto kind = parse_taper_kind(doc.at("taper").get<std::string>());
    s.ctxseg.taper = kind;
    s.sps.taper = kind;
  }
  s.ctxseg.stride_samples = doc.value("stride_samples", s.ctxseg.stride_samples);
  s.ctxseg.slide_by_stride = doc.value("slide_by_stride", s.ctxseg.slide_by_stride);
  s.ctxseg.include_dc = doc.value("include_dc", s.ctxseg.include_dc);
  s.varri.k_a = doc.value("k_a", s.varri.k_a);
  s.varri.k_f = doc.value("k_f", s.varri.k_f);
  s.varri.threshold_window_s = doc.value("threshold_window_s", s.varri.threshold_window_s);
  s.varri.extrema_window_s = doc.value("extrema_window_s", s.varri.extrema_window_s);
  s.nleo.extrema_window_s = s.varri.extrema_window_s;
  if (doc.contains("bands")) {
    const auto& bands = doc.at("bands");
    if (!bands.is_array() || bands.size() != 9) throw std::invalid_argument("bands must list nine [low, high] pairs");
    for (std::size_t i = 0; i < 9; ++i) {
      s.sps.bands[i] = {bands[i].at(0).get<double>(), bands[i].at(1).get<double>()};
    }
  }
  s.sps.jump_after_boundary = doc.value("jump_after_boundary", s.sps.jump_after_boundary);
  s.fixed_overlap = doc.value("overlap", s.fixed_overlap);
  return s;
}

ContextSchedule benchmark_schedule() {
  std::vector<ScheduleStep> steps;
  for (double rate : {2.0, 40.0, 20.0, 10.0, 40.0, 6.0, 20.0}) steps.push_back({rate, 5.0});
  return ContextSchedule(std::move(steps));
}

namespace {

TimeSeries read_exemplar(const fs::path& path, std::optional<double> sample_rate_hz) {
  auto series = io::read_signal(path, sample_rate_hz);
  if (series.channel_count() == 0) throw std::invalid_argument("exemplar '" + path.string() + "' has no channels");
  return series.channels().front();
}

GeneratedSignal make_ar_signal(const ArSource& ar, std::uint64_t seed) {
  Rng rng(seed);
  std::map<std::string, ArModel> models;
  for (const auto& state : ar.states) {
    if (models.count(state)) continue;
    const auto it = ar.exemplars.find(state);
    if (it == ar.exemplars.end() || it->second.empty()) {
      throw std::invalid_argument("ar: no exemplar for state '" + state + "'");
    }
    boost::random::uniform_int_distribution<std::size_t> pick(0, it->second.size() - 1);
    const auto& path = it->second[pick(rng)];
    models.emplace(state, fit_ar(read_exemplar(path, ar.exemplar_sample_rate_hz), ar.order));
  }
  return generate_ar_sequence(models, ar.states, ar.segment_duration_s, ar.sample_rate_hz,
                              derive_seed(seed, 1));
}

GeneratedSignal read_file_signal(const FileSource& file) {
  auto series = io::read_signal(file.path, file.sample_rate_hz);
  if (file.sample_rate_hz && series.sample_rate_hz() != *file.sample_rate_hz) {
    throw std::invalid_argument(fmt::format("'{}' has sample rate {} Hz, expected {} Hz", file.path.string(),
                                            series.sample_rate_hz(), *file.sample_rate_hz));
  }
  if (file.channel >= series.channel_count()) {
    throw std::invalid_argument(fmt::format("'{}' has no channel {}", file.path.string(), file.channel));
  }
  GeneratedSignal out;
  out.series = series.channels()[file.channel];
  out.ground_truth = io::boundaries_from_json(json::parse(io::read_file(file.ground_truth)));
  if (out.ground_truth.signal_length() != out.series.size()) {
    throw std::invalid_argument(fmt::format("ground truth length {} does not match signal length {}",
                                            out.ground_truth.signal_length(), out.series.size()));
  }
  return out;
}

}  // namespace

GeneratedSignal make_signal(const SignalSource& source, std::uint64_t seed) {
  switch (source.kind) {
    case SourceKind::ctxgen: {
      GeneratorConfig config = source.generator;
      config.seed = seed;
      return generate(source.schedule, config);
    }
    case SourceKind::harmonics: return generate_harmonics(source.harmonics);
    case SourceKind::ar: return make_ar_signal(source.ar, seed);
    case SourceKind::file: return read_file_signal(source.file);
  }
  throw std::logic_error("unhandled source kind");
}

void ExperimentSpec::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("every alpha must be in (0, 1)");
  }
  if (source.kind == SourceKind::file && source.file.ground_truth.empty()) {
    throw std::invalid_argument("a file source needs a ground_truth file");
  }
  if (source.kind == SourceKind::ar && source.ar.states.empty()) {
    throw std::invalid_argument("ar source needs states");
  }
  const bool needs_ctxgen = sweep.kind == SweepKind::rate_pairs || sweep.kind == SweepKind::oscillation;
  if (needs_ctxgen && source.kind != SourceKind::ctxgen) {
    throw std::invalid_argument("rate-pair and oscillation sweeps need a ctxgen source");
  }
  if (sweep.kind == SweepKind::oscillation && sweep.rates_hz.size() != 2) {
    throw std::invalid_argument("an oscillation sweep needs exactly two rates");
  }
  if (sweep.kind == SweepKind::rate_pairs && sweep.rates_hz.size() < 2) {
    throw std::invalid_argument("a rate-pair sweep needs at least two rates");
  }
  if (sweep.kind == SweepKind::rate_pairs && !(sweep.onset_s > 0.0 && sweep.onset_s < sweep.pair_duration_s)) {
    throw std::invalid_argument("rate-pair onset must lie inside the signal");
  }
}

namespace {

fs::path resolve(const fs::path& p, const fs::path& base) {
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

std::vector<std::string> parse_states(const json& doc) {
  std::vector<std::string> states;
  if (doc.is_string()) {
    for (char c : doc.get<std::string>()) states.emplace_back(1, c);
  } else {
    states = doc.get<std::vector<std::string>>();
  }
  return states;
}

SweepKind parse_sweep_kind(std::string_view name) {
  if (name == "none") return SweepKind::none;
  if (name == "window") return SweepKind::window;
  if (name == "rate_pairs") return SweepKind::rate_pairs;
  if (name == "oscillation") return SweepKind::oscillation;
  if (name == "segment_sizes") return SweepKind::segment_sizes;
  throw std::invalid_argument("unknown sweep '" + std::string(name) +
                              "' (valid: none, window, rate_pairs, oscillation, segment_sizes)");
}

SignalSource source_from_json(const json& doc, const fs::path& base) {
  SignalSource src;
  const auto type = doc.value("type", std::string("ctxgen"));
  if (type == "ctxgen") {
    src.kind = SourceKind::ctxgen;
    src.schedule = doc.contains("schedule") ? io::schedule_from_json(doc.at("schedule")) : benchmark_schedule();
    if (doc.contains("generator")) io::apply_generator_json(doc.at("generator"), src.generator);
  } else if (type == "harmonics") {
    src.kind = SourceKind::harmonics;
    src.harmonics = io::harmonics_from_json(doc);
  } else if (type == "ar") {
    src.kind = SourceKind::ar;
    src.ar.states = parse_states(doc.at("states"));
    for (const auto& [state, files] : doc.at("exemplars").items()) {
      auto& list = src.ar.exemplars[state];
      if (files.is_string()) {
        list.push_back(resolve(files.get<std::string>(), base));
      } else {
        for (const auto& f : files) list.push_back(resolve(f.get<std::string>(), base));
      }
    }
    src.ar.order = doc.value("order", src.ar.order);
    src.ar.segment_duration_s = doc.value("segment_duration_s", src.ar.segment_duration_s);
    src.ar.sample_rate_hz = doc.value("sample_rate_hz", src.ar.sample_rate_hz);
    if (doc.contains("exemplar_sample_rate_hz")) {
      src.ar.exemplar_sample_rate_hz = doc.at("exemplar_sample_rate_hz").get<double>();
    }
  } else if (type == "file") {
    src.kind = SourceKind::file;
    src.file.path = resolve(doc.at("path").get<std::string>(), base);
    if (doc.contains("sample_rate_hz")) src.file.sample_rate_hz = doc.at("sample_rate_hz").get<double>();
    src.file.channel = doc.value("channel", src.file.channel);
    src.file.ground_truth = resolve(doc.value("ground_truth", std::string()), base);
  } else {
    throw std::invalid_argument("unknown source type '" + type + "' (valid: ctxgen, harmonics, ar, file)");
  }
  return src;
}

}  // namespace

ExperimentSpec experiment_from_json(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) throw std::invalid_argument("experiment spec must be a JSON object");
  ExperimentSpec spec;
  spec.name = doc.value("name", spec.name);
  if (doc.contains("source")) spec.source = source_from_json(doc.at("source"), base_dir);
  else spec.source.schedule = benchmark_schedule();
  if (doc.contains("segmenter")) spec.segmenter = segmenter_from_json(doc.at("segmenter"));
  if (doc.contains("alphas")) spec.alphas = doc.at("alphas").get<std::vector<double>>();
  if (doc.contains("tolerance_samples")) spec.tolerance_samples = doc.at("tolerance_samples").get<std::size_t>();
  if (doc.contains("trials")) {
    const auto trials = doc.at("trials").get<long long>();
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    spec.trials = static_cast<std::size_t>(trials);
  }
  spec.seed = doc.value("seed", spec.seed);
  if (doc.contains("sweep")) {
    const auto& s = doc.at("sweep");
    spec.sweep.kind = parse_sweep_kind(s.value("type", std::string("none")));
    if (s.contains("windows_s")) spec.sweep.windows_s = s.at("windows_s").get<std::vector<double>>();
    if (s.contains("rates_hz")) spec.sweep.rates_hz = s.at("rates_hz").get<std::vector<double>>();
    spec.sweep.onset_s = s.value("onset_s", spec.sweep.onset_s);
    spec.sweep.pair_duration_s = s.value("duration_s", spec.sweep.pair_duration_s);
    if (s.contains("state_durations_s")) {
      spec.sweep.state_durations_s = s.at("state_durations_s").get<std::vector<double>>();
    }
    spec.sweep.oscillation_total_s = s.value("total_duration_s", spec.sweep.oscillation_total_s);
    if (spec.sweep.kind == SweepKind::oscillation && !s.contains("rates_hz")) spec.sweep.rates_hz = {20.0, 40.0};
  }
  if (doc.contains("output")) {
    const auto& o = doc.at("output");
    spec.report_path = resolve(o.value("report", std::string()), base_dir);
    spec.plot_path = resolve(o.value("plot", std::string()), base_dir);
  }
  spec.validate();
  return spec;
}

TrialFailure::TrialFailure(std::size_t index, std::uint64_t seed, const std::string& what)
    : std::runtime_error(fmt::format("trial {} (seed {}) failed: {}", index, seed, what)),
      index_(index),
      seed_(seed) {}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task) {
  if (count == 0) return;
  const std::size_t threads = std::clamp<std::size_t>(jobs == 0 ? 1 : jobs, 1, count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::size_t failed_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr failure;

  auto worker = [&] {
    while (!stop.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
        stop = true;
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

namespace {

// One signal-generating configuration of a sweep, evaluated under every alpha.
struct SweepPoint {
  std::string x;
  std::optional<ContextSchedule> schedule;  // replaces the source schedule
  std::optional<double> window_s;
};

std::vector<SweepPoint> sweep_points(const ExperimentSpec& spec) {
  std::vector<SweepPoint> points;
  const auto& sw = spec.sweep;
  switch (sw.kind) {
    case SweepKind::none:
    case SweepKind::segment_sizes:
      points.push_back({});
      break;
    case SweepKind::window:
      for (double w : sw.windows_s) points.push_back({io::format_number(w), std::nullopt, w});
      break;
    case SweepKind::rate_pairs:
      for (double a : sw.rates_hz) {
        for (double b : sw.rates_hz) {
          if (a == b) continue;
          ContextSchedule schedule({{a, sw.onset_s}, {b, sw.pair_duration_s - sw.onset_s}});
          points.push_back({io::format_number(a) + "->" + io::format_number(b), schedule, std::nullopt});
        }
      }
      break;
    case SweepKind::oscillation:
      for (double d : sw.state_durations_s) {
        points.push_back({io::format_number(d),
                          ContextSchedule::oscillating(sw.rates_hz[0], sw.rates_hz[1], d, sw.oscillation_total_s),
                          std::nullopt});
      }
      break;
  }
  return points;
}

std::vector<std::optional<double>> alpha_levels(const ExperimentSpec& spec) {
  if (!spec.segmenter.alpha()) return {std::nullopt};
  if (spec.alphas.empty()) return {spec.segmenter.alpha()};
  return {spec.alphas.begin(), spec.alphas.end()};
}

TrialOutcome measure(const GeneratedSignal& signal, const SegmenterSpec& segmenter,
                     std::optional<std::size_t> tolerance) {
  const auto seg = run_segmenter(segmenter, signal.series);
  const double fs = signal.series.sample_rate_hz();
  const std::size_t tol = tolerance.value_or(2 * segmenter.resolve_window(fs));
  TrialOutcome out;
  out.report = evaluate(signal.ground_truth, seg.boundaries, fs, tol);
  out.delays = boundary_delay(signal.ground_truth, seg.boundaries, fs);
  for (const auto& r : segments_from_boundaries(seg.boundaries)) {
    out.segment_sizes_s.push_back(static_cast<double>(r.length()) / fs);
  }
  return out;
}

std::string series_label(const ExperimentSpec& spec, std::optional<double> alpha) {
  if (alpha) return "alpha=" + io::format_number(*alpha);
  return std::string(to_string(spec.segmenter.method));
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned jobs) {
  spec.validate();
  const auto points = sweep_points(spec);
  const auto alphas = alpha_levels(spec);

  // Segmenters per (point, alpha), laid out point-major.
  std::vector<SegmenterSpec> segmenters;
  ExperimentResult result;
  for (const auto& point : points) {
    for (const auto& alpha : alphas) {
      SegmenterSpec s = spec.segmenter;
      if (alpha) s.set_alpha(*alpha);
      if (point.window_s) {
        s.window_s = *point.window_s;
        s.window_samples.reset();
      }
      segmenters.push_back(s);
      Condition c;
      c.series = series_label(spec, alpha);
      c.x = point.x;
      c.alpha = alpha;
      c.trials.resize(spec.trials);
      result.conditions.push_back(std::move(c));
    }
  }

  const bool shared_signal = std::none_of(points.begin(), points.end(),
                                          [](const SweepPoint& p) { return p.schedule.has_value(); });
  log::info("{}: {} trial(s), {} condition(s), {} job(s)", spec.name, spec.trials, result.conditions.size(), jobs);

  parallel_for(spec.trials, jobs, [&](std::size_t k) {
    const std::uint64_t trial_seed = derive_seed(spec.seed, k);
    try {
      std::optional<GeneratedSignal> shared;
      for (std::size_t j = 0; j < points.size(); ++j) {
        GeneratedSignal local;
        const GeneratedSignal* signal = nullptr;
        if (shared_signal) {
          if (!shared) shared = make_signal(spec.source, derive_seed(trial_seed, 0));
          signal = &*shared;
        } else {
          SignalSource src = spec.source;
          if (points[j].schedule) src.schedule = *points[j].schedule;
          local = make_signal(src, derive_seed(trial_seed, j));
          signal = &local;
        }
        for (std::size_t a = 0; a < alphas.size(); ++a) {
          const std::size_t c = j * alphas.size() + a;
          result.conditions[c].trials[k] = measure(*signal, segmenters[c], spec.tolerance_samples);
        }
      }
    } catch (const std::exception& e) {
      throw TrialFailure(k, trial_seed, e.what());
    }
    log::debug("{}: trial {} done", spec.name, k);
  });

  for (auto& c : result.conditions) {
    std::vector<EvaluationReport> reports;
    reports.reserve(c.trials.size());
    for (const auto& t : c.trials) reports.push_back(t.report);
    c.ensemble = aggregate(reports);
  }
  return result;
}

std::string experiment_report_csv(const ExperimentSpec& spec, const ExperimentResult& result) {
  std::string out = "label,x,alpha," + io::ensemble_csv_header() + "\n";
  for (const auto& c : result.conditions) {
    out += fmt::format("{},{},{},{}\n", spec.name, c.x, c.alpha ? io::format_number(*c.alpha) : "",
                       io::ensemble_csv_row(c.ensemble));
  }
  return out;
}

json experiment_report_json(const ExperimentSpec& spec, const ExperimentResult& result) {
  json rows = json::array();
  for (const auto& c : result.conditions) {
    json row = io::ensemble_to_json(c.ensemble);
    row["series"] = c.series;
    if (!c.x.empty()) row["x"] = c.x;
    if (c.alpha) row["alpha"] = *c.alpha;
    rows.push_back(std::move(row));
  }
  return {{"name", spec.name}, {"trials", spec.trials}, {"seed", spec.seed}, {"conditions", rows}};
}

Spread spread(std::vector<double> values) {
  if (values.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  Spread s;
  s.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  for (double v : values) s.variance += (v - mean) * (v - mean);
  s.variance /= static_cast<double>(n);
  return s;
}

std::string experiment_plot_csv(const ExperimentSpec& spec, const ExperimentResult& result) {
  std::string out = "series,x,variable,value\n";
  auto row = [&out](const Condition& c, std::string_view variable, double value) {
    out += fmt::format("{},{},{},{}\n", c.series, c.x, variable, io::format_number(value));
  };
  for (const auto& c : result.conditions) {
    switch (spec.sweep.kind) {
      case SweepKind::none:
        for (std::size_t k = 0; k < c.trials.size(); ++k) {
          row(c, "boundary_count", c.trials[k].report.boundary_count);
        }
        break;
      case SweepKind::window:
        row(c, "segment_count", c.ensemble.mean.boundary_count + 1.0);
        break;
      case SweepKind::rate_pairs:
        row(c, "mean_delay_s", c.ensemble.mean.mean_delay_s);
        row(c, "sensitivity", c.ensemble.mean.sensitivity);
        break;
      case SweepKind::oscillation:
        row(c, "sensitivity", c.ensemble.mean.sensitivity);
        for (const auto& t : c.trials) {
          for (const auto& d : t.delays) {
            if (d) row(c, "delay_s", *d);
          }
        }
        break;
      case SweepKind::segment_sizes: {
        std::vector<double> sizes;
        for (const auto& t : c.trials) sizes.insert(sizes.end(), t.segment_sizes_s.begin(), t.segment_sizes_s.end());
        const auto s = spread(sizes);
        row(c, "median_segment_size_s", s.median);
        row(c, "variance_segment_size_s", s.variance);
        for (double v : sizes) row(c, "segment_size_s", v);
        break;
      }
    }
  }
  return out;
}

}  // namespace ctxseg
