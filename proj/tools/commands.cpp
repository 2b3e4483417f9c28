#include "commands.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ctxseg/ctxgen.hpp"
#include "ctxseg/experiment.hpp"
#include "ctxseg/io.hpp"
#include "ctxseg/log.hpp"
#include "ctxseg/metrics.hpp"
#include "ctxseg/strategies.hpp"
#include "ctxseg/synth.hpp"

namespace ctxseg::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::string output;

  [[nodiscard]] unsigned resolved_jobs() const {
    if (jobs > 0) return jobs;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

bool wants_json(const std::string& path) {
  return fs::path(path).extension() == ".json";
}

fs::path default_ground_truth_path(const fs::path& signal_path) {
  fs::path p = signal_path.parent_path() / signal_path.stem();
  p += ".boundaries.json";
  return p;
}

// Writes every file or none; with no path the text goes to `out`.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_file_atomic(path, text);
  }
}

json load_json(const fs::path& path) {
  try {
    return json::parse(io::read_file(path));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOptions {
  std::string ground_truth;
  std::string schedule;
  std::string generator;
  std::optional<std::size_t> neurons;
  std::optional<double> sample_rate;
  std::string harmonics_spec;
  std::string states;
  std::string exemplar_a;
  std::string exemplar_e;
  std::vector<std::string> exemplars;
  std::optional<double> exemplar_rate;
  std::size_t order = kDefaultArOrder;
  double segment_s = 5.0;
};

std::vector<std::string> split_states(const std::string& text) {
  std::vector<std::string> states;
  if (text.find(',') == std::string::npos) {
    for (char c : text) {
      if (c != ' ') states.emplace_back(1, c);
    }
    return states;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) states.push_back(item);
  }
  return states;
}

GeneratedSignal generate_ctxgen(const GenerateOptions& o, const Globals& g) {
  ContextSchedule schedule = benchmark_schedule();
  GeneratorConfig config;
  if (!o.schedule.empty()) {
    const json doc = load_json(o.schedule);
    schedule = io::schedule_from_json(doc);
    if (doc.is_object() && doc.contains("generator")) io::apply_generator_json(doc.at("generator"), config);
  }
  if (!o.generator.empty()) io::apply_generator_json(load_json(o.generator), config);
  if (o.neurons) config.neuron_count = *o.neurons;
  if (o.sample_rate) config.sample_rate_hz = *o.sample_rate;
  config.seed = g.seed.value_or(config.seed);
  return generate(schedule, config, g.resolved_jobs());
}

GeneratedSignal generate_ar(const GenerateOptions& o, const Globals& g) {
  std::map<std::string, fs::path> files;
  if (!o.exemplar_a.empty()) files["A"] = o.exemplar_a;
  if (!o.exemplar_e.empty()) files["E"] = o.exemplar_e;
  for (const auto& entry : o.exemplars) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("--exemplar expects STATE=FILE, got '" + entry + "'");
    }
    files[entry.substr(0, eq)] = entry.substr(eq + 1);
  }
  const auto states = split_states(o.states);
  if (states.empty()) throw std::invalid_argument("--states is empty");

  std::map<std::string, ArModel> models;
  for (const auto& state : states) {
    if (models.count(state)) continue;
    const auto it = files.find(state);
    if (it == files.end()) throw std::invalid_argument("no exemplar given for state '" + state + "'");
    const auto series = io::read_signal(it->second, o.exemplar_rate);
    models.emplace(state, fit_ar(series.channels().front(), o.order));
    log::info("state {}: AR({}) fitted on {}", state, o.order, it->second.string());
  }
  return generate_ar_sequence(models, states, o.segment_s, o.sample_rate.value_or(256.0), g.seed.value_or(0));
}

void write_generated(const GeneratedSignal& signal, const GenerateOptions& o, const Globals& g,
                     std::ostream& out) {
  const fs::path signal_path = g.output.empty() ? fs::path("signal.csv") : fs::path(g.output);
  const fs::path gt_path = o.ground_truth.empty() ? default_ground_truth_path(signal_path) : fs::path(o.ground_truth);
  MultiChannelSeries series({signal.series}, {"signal"});
  auto files = io::encode_signal(signal_path, series);
  files.emplace_back(gt_path, io::boundaries_to_json(signal.ground_truth).dump(2) + "\n");
  io::write_files_atomic(files);
  out << fmt::format("wrote {} ({} samples, {:.6g} s) and {} ({} boundaries)\n", signal_path.string(),
                     signal.series.size(), signal.series.duration_s(), gt_path.string(),
                     signal.ground_truth.size());
}

// ---------------------------------------------------------------------------
// segment

struct SegmentOptions {
  std::string input;
  std::string method = "ctxseg";
  std::optional<double> sample_rate;
  std::optional<double> window_s;
  std::optional<std::size_t> window_samples;
  std::optional<double> alpha;
  std::optional<std::size_t> stride;
  std::optional<std::string> taper;
  bool slide_by_stride = false;
  bool exclude_dc = false;
  std::optional<double> overlap;
  std::optional<double> k_a;
  std::optional<double> k_f;
  std::optional<double> threshold_window_s;
  std::optional<double> extrema_window_s;
  bool jump = false;
  std::optional<std::size_t> channel;
  bool vote = false;
  std::size_t vote_channels = 2;
  std::size_t vote_tolerance = 2;
  std::size_t min_segment = 0;
};

SegmenterSpec segmenter_from_options(const SegmentOptions& o) {
  SegmenterSpec s;
  s.method = parse_method(o.method);
  if (o.window_s) s.window_s = *o.window_s;
  s.window_samples = o.window_samples;
  if (o.alpha) s.set_alpha(*o.alpha);
  if (o.stride) s.ctxseg.stride_samples = *o.stride;
  if (o.taper) {
    s.ctxseg.taper = parse_taper_kind(*o.taper);
    s.sps.taper = s.ctxseg.taper;
  }
  s.ctxseg.slide_by_stride = o.slide_by_stride;
  s.ctxseg.include_dc = !o.exclude_dc;
  if (o.overlap) s.fixed_overlap = *o.overlap;
  if (o.k_a) s.varri.k_a = *o.k_a;
  if (o.k_f) s.varri.k_f = *o.k_f;
  if (o.threshold_window_s) s.varri.threshold_window_s = *o.threshold_window_s;
  if (o.extrema_window_s) {
    s.varri.extrema_window_s = *o.extrema_window_s;
    s.nleo.extrema_window_s = *o.extrema_window_s;
  }
  s.sps.jump_after_boundary = o.jump;
  return s;
}

void run_segment(const SegmentOptions& o, const Globals& g, std::ostream& out) {
  const SegmenterSpec spec = segmenter_from_options(o);
  const auto series = io::read_signal(o.input, o.sample_rate);
  std::vector<std::size_t> picked;
  if (o.channel) {
    if (*o.channel >= series.channel_count()) {
      throw std::invalid_argument(fmt::format("input has {} channel(s); no channel {}", series.channel_count(), *o.channel));
    }
    picked.push_back(*o.channel);
  } else {
    for (std::size_t c = 0; c < series.channel_count(); ++c) picked.push_back(c);
  }

  std::vector<Segmentation> results;
  for (std::size_t c : picked) {
    results.push_back(run_segmenter(spec, series.channels()[c]));
    log::info("channel {}: {} boundaries", series.labels()[c], results.back().boundaries.size());
  }

  json doc;
  if (picked.size() == 1 && !o.vote) {
    doc = io::boundaries_to_json(results.front().boundaries, results.front().p_values);
  } else {
    json channels = json::array();
    for (std::size_t i = 0; i < picked.size(); ++i) {
      json ch = io::boundaries_to_json(results[i].boundaries, results[i].p_values);
      ch["label"] = series.labels()[picked[i]];
      channels.push_back(std::move(ch));
    }
    doc = {{"signal_length", series.length()}, {"channels", channels}};
    if (o.vote) {
      std::vector<BoundarySet> sets;
      for (const auto& r : results) sets.push_back(r.boundaries);
      const VoteConfig vote{o.vote_channels, o.vote_tolerance, o.min_segment};
      doc["voted"] = io::boundaries_to_json(multichannel_vote(sets, vote));
    }
  }
  emit(g.output, doc.dump(2) + "\n", out);
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateOptions {
  std::string ground_truth;
  std::string found;
  double sample_rate = 256.0;
  std::optional<std::size_t> tolerance;
  std::optional<std::size_t> channel;
  std::string format;
};

BoundarySet pick_boundaries(const json& doc, std::optional<std::size_t> channel, const std::string& what) {
  if (channel) {
    if (!doc.contains("channels")) throw std::invalid_argument(what + " has no per-channel boundaries");
    const auto& channels = doc.at("channels");
    if (*channel >= channels.size()) throw std::invalid_argument(fmt::format("{} has no channel {}", what, *channel));
    return io::boundaries_from_json(channels.at(*channel));
  }
  if (doc.contains("positions")) return io::boundaries_from_json(doc);
  if (doc.contains("voted")) return io::boundaries_from_json(doc.at("voted"));
  throw std::invalid_argument(what + " is a multi-channel document; pass --channel");
}

void run_evaluate(const EvaluateOptions& o, const Globals& g, std::ostream& out) {
  const auto gt = pick_boundaries(load_json(o.ground_truth), std::nullopt, o.ground_truth);
  const auto found = pick_boundaries(load_json(o.found), o.channel, o.found);
  if (gt.signal_length() != found.signal_length()) {
    throw std::invalid_argument(fmt::format("signal_length mismatch: ground truth {} vs found {}",
                                            gt.signal_length(), found.signal_length()));
  }
  const std::size_t tolerance =
      o.tolerance.value_or(2 * static_cast<std::size_t>(std::llround(0.5 * o.sample_rate)));
  const auto report = evaluate(gt, found, o.sample_rate, tolerance);
  const bool as_json = o.format.empty() ? wants_json(g.output) : o.format == "json";
  const std::string text = as_json ? io::report_to_json(report).dump(2) + "\n"
                                   : io::report_csv_header() + "\n" + io::report_csv_row(report) + "\n";
  emit(g.output, text, out);
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentOptions {
  std::string spec;
  std::optional<std::size_t> trials;
  std::string plot;
};

void run_experiment_command(const ExperimentOptions& o, const Globals& g, std::ostream& out) {
  ExperimentSpec spec = experiment_from_json(load_json(o.spec), fs::path(o.spec).parent_path());
  if (o.trials) spec.trials = *o.trials;
  if (g.seed) spec.seed = *g.seed;
  if (!g.output.empty()) spec.report_path = g.output;
  if (!o.plot.empty()) spec.plot_path = o.plot;
  if (spec.plot_path.empty() && spec.sweep.kind != SweepKind::none && !spec.report_path.empty()) {
    spec.plot_path = spec.report_path.parent_path() / spec.report_path.stem();
    spec.plot_path += ".plot.csv";
  }
  spec.validate();

  const auto result = run_experiment(spec, g.resolved_jobs());

  const std::string report = wants_json(spec.report_path.string())
                                 ? experiment_report_json(spec, result).dump(2) + "\n"
                                 : experiment_report_csv(spec, result);
  io::FileSet files;
  if (!spec.report_path.empty()) files.emplace_back(spec.report_path, report);
  if (!spec.plot_path.empty()) files.emplace_back(spec.plot_path, experiment_plot_csv(spec, result));
  io::write_files_atomic(files);
  if (spec.report_path.empty()) out << report;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive segmentation of time series by spectral context"};
  app.name("ctxseg");
  app.require_subcommand(1);

  Globals g;
  app.add_option("--seed", g.seed, "Master seed for stochastic generators and experiments");
  app.add_option("--jobs", g.jobs, "Worker threads (0: one per core)")->capture_default_str();
  app.add_option("--output", g.output, "Output file (default: standard output or signal.csv)");

  // generate
  GenerateOptions gen;
  auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic signal and its ground truth");
  generate_cmd->fallthrough();
  generate_cmd->require_subcommand(1);
  auto* ctxgen_cmd = generate_cmd->add_subcommand("ctxgen", "Spiking-neuron context generator");
  ctxgen_cmd->fallthrough();
  ctxgen_cmd->add_option("--schedule", gen.schedule, "JSON schedule [{rate_hz, duration_s}, ...]")->check(CLI::ExistingFile);
  ctxgen_cmd->add_option("--generator", gen.generator, "JSON generator settings")->check(CLI::ExistingFile);
  ctxgen_cmd->add_option("--neurons", gen.neurons, "Number of neurons");
  ctxgen_cmd->add_option("--sample-rate", gen.sample_rate, "Sample rate in Hz");
  ctxgen_cmd->add_option("--ground-truth", gen.ground_truth, "Ground-truth JSON path");
  auto* harmonics_cmd = generate_cmd->add_subcommand("harmonics", "Deterministic sum-of-cosines signal");
  harmonics_cmd->fallthrough();
  harmonics_cmd->add_option("--spec", gen.harmonics_spec, "JSON harmonics spec (default: preset)")->check(CLI::ExistingFile);
  harmonics_cmd->add_option("--ground-truth", gen.ground_truth, "Ground-truth JSON path");
  auto* ar_cmd = generate_cmd->add_subcommand("ar", "Auto-regressive state sequence fitted on exemplars");
  ar_cmd->fallthrough();
  ar_cmd->add_option("--states", gen.states, "State sequence, e.g. AEAEAEA or A,E,A")->required();
  ar_cmd->add_option("--exemplar-a", gen.exemplar_a, "Exemplar signal for state A")->check(CLI::ExistingFile);
  ar_cmd->add_option("--exemplar-e", gen.exemplar_e, "Exemplar signal for state E")->check(CLI::ExistingFile);
  ar_cmd->add_option("--exemplar", gen.exemplars, "Exemplar for any state, STATE=FILE");
  ar_cmd->add_option("--exemplar-rate", gen.exemplar_rate, "Sample rate of CSV exemplars in Hz");
  ar_cmd->add_option("--order", gen.order, "AR model order")->capture_default_str();
  ar_cmd->add_option("--segment-s", gen.segment_s, "Seconds per state")->capture_default_str();
  ar_cmd->add_option("--sample-rate", gen.sample_rate, "Output sample rate in Hz (default 256)");
  ar_cmd->add_option("--ground-truth", gen.ground_truth, "Ground-truth JSON path");

  // segment
  SegmentOptions seg;
  auto* segment_cmd = app.add_subcommand("segment", "Find segment boundaries in a signal file");
  segment_cmd->fallthrough();
  segment_cmd->add_option("input", seg.input, "Signal file (.csv or raw float32 with .json sidecar)")
      ->required()
      ->check(CLI::ExistingFile);
  segment_cmd->add_option("--method", seg.method, "ctxseg, varri, nleo, sps or fixed")->capture_default_str();
  segment_cmd->add_option("--sample-rate", seg.sample_rate, "Sample rate of CSV input in Hz");
  segment_cmd->add_option("--window-s", seg.window_s, "Window length in seconds (default 0.5)");
  segment_cmd->add_option("--window-samples", seg.window_samples, "Window length in samples");
  segment_cmd->add_option("--alpha", seg.alpha, "Significance level (ctxseg, sps)");
  segment_cmd->add_option("--stride", seg.stride, "Stride in samples (ctxseg)");
  segment_cmd->add_option("--taper", seg.taper, "hamming, hann or rectangular");
  segment_cmd->add_flag("--slide-by-stride", seg.slide_by_stride, "Advance the test window by the stride (ctxseg)");
  segment_cmd->add_flag("--exclude-dc", seg.exclude_dc, "Drop the DC bin from the spectra (ctxseg)");
  segment_cmd->add_option("--overlap", seg.overlap, "Overlap fraction in [0, 1) (fixed)");
  segment_cmd->add_option("--k-a", seg.k_a, "Amplitude weight (varri)");
  segment_cmd->add_option("--k-f", seg.k_f, "Frequency weight (varri)");
  segment_cmd->add_option("--threshold-window-s", seg.threshold_window_s, "Adaptive threshold block in seconds (varri)");
  segment_cmd->add_option("--extrema-window-s", seg.extrema_window_s, "Peak neighborhood in seconds (varri, nleo)");
  segment_cmd->add_flag("--jump", seg.jump, "Skip a window past each boundary (sps)");
  segment_cmd->add_option("--channel", seg.channel, "Segment only this channel index");
  segment_cmd->add_flag("--vote", seg.vote, "Also emit boundaries agreed on by several channels");
  segment_cmd->add_option("--vote-channels", seg.vote_channels, "Channels that must agree")->capture_default_str();
  segment_cmd->add_option("--vote-tolerance", seg.vote_tolerance, "Agreement tolerance in samples")->capture_default_str();
  segment_cmd->add_option("--min-segment", seg.min_segment, "Minimum voted segment in samples")->capture_default_str();

  // evaluate
  EvaluateOptions ev;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score found boundaries against ground truth");
  evaluate_cmd->fallthrough();
  evaluate_cmd->add_option("--ground-truth", ev.ground_truth, "Ground-truth boundary JSON")->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--found", ev.found, "Found boundary JSON")->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--sample-rate", ev.sample_rate, "Sample rate in Hz")->capture_default_str();
  evaluate_cmd->add_option("--tolerance", ev.tolerance, "Near-miss tolerance in samples (default: one second)");
  evaluate_cmd->add_option("--channel", ev.channel, "Channel of a multi-channel found document");
  evaluate_cmd->add_option("--format", ev.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // experiment
  ExperimentOptions ex;
  auto* experiment_cmd = app.add_subcommand("experiment", "Run a seeded ensemble experiment from a JSON spec");
  experiment_cmd->fallthrough();
  experiment_cmd->add_option("spec", ex.spec, "Experiment spec JSON")->required()->check(CLI::ExistingFile);
  experiment_cmd->add_option("--trials", ex.trials, "Override the number of trials");
  experiment_cmd->add_option("--plot", ex.plot, "Long-format plot data CSV");

  std::vector<std::string> argv_storage{"ctxseg"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (generate_cmd->parsed()) {
      GeneratedSignal signal;
      if (ctxgen_cmd->parsed()) {
        signal = generate_ctxgen(gen, g);
      } else if (harmonics_cmd->parsed()) {
        signal = generate_harmonics(gen.harmonics_spec.empty() ? HarmonicsSpec::preset()
                                                               : io::harmonics_from_json(load_json(gen.harmonics_spec)));
      } else {
        signal = generate_ar(gen, g);
      }
      write_generated(signal, gen, g, out);
    } else if (segment_cmd->parsed()) {
      run_segment(seg, g, out);
    } else if (evaluate_cmd->parsed()) {
      run_evaluate(ev, g, out);
    } else if (experiment_cmd->parsed()) {
      run_experiment_command(ex, g, out);
    }
  } catch (const std::invalid_argument& e) {
    err << "ctxseg: error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "ctxseg: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace ctxseg::cli
