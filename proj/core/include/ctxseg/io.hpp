#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxseg/boundary.hpp"
#include "ctxseg/ctxgen.hpp"
#include "ctxseg/metrics.hpp"
#include "ctxseg/signal.hpp"
#include "ctxseg/synth.hpp"

namespace ctxseg::io {

enum class SignalFormat { csv, raw_f32 };

/// ".csv" selects CSV; anything else is raw float32 with a "<path>.json" sidecar.
SignalFormat format_for(const std::filesystem::path& path);

std::filesystem::path sidecar_path(const std::filesystem::path& raw_path);

/// CSV files carry no sample rate, so it has to be supplied. For raw files the
/// sidecar is authoritative; a supplied rate that disagrees with it is an error.
MultiChannelSeries read_signal(const std::filesystem::path& path,
                               std::optional<double> sample_rate_hz = std::nullopt);

/// Path and full contents of one output file.
using FileSet = std::vector<std::pair<std::filesystem::path, std::string>>;

/// The file(s) that make up a signal at `path`: the CSV, or the raw payload
/// and its sidecar.
FileSet encode_signal(const std::filesystem::path& path, const MultiChannelSeries& series);
void write_signal(const std::filesystem::path& path, const MultiChannelSeries& series);

MultiChannelSeries parse_csv(std::string_view text, double sample_rate_hz);
std::string format_csv(const MultiChannelSeries& series);

/// Writes `contents` to a temporary sibling and renames it into place, so a
/// failure never leaves a truncated file at `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
/// All-or-nothing variant: every file is staged first, and a failure removes
/// whatever was already written.
void write_files_atomic(const FileSet& files);
std::string read_file(const std::filesystem::path& path);

/// Six significant digits, independent of the global locale.
std::string format_number(double value);

nlohmann::json boundaries_to_json(const BoundarySet& boundaries,
                                  const std::vector<double>& p_values = {});
/// Accepts {"signal_length", "positions", ...}; p_values are ignored.
BoundarySet boundaries_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const EvaluationReport& report);
nlohmann::json ensemble_to_json(const EnsembleReport& report);
std::string report_csv_header();
std::string report_csv_row(const EvaluationReport& report);
std::string ensemble_csv_header();
std::string ensemble_csv_row(const EnsembleReport& report);

/// [{"rate_hz": 2, "duration_s": 5}, ...] or {"steps": [...]}.
ContextSchedule schedule_from_json(const nlohmann::json& doc);
nlohmann::json schedule_to_json(const ContextSchedule& schedule);

/// Overrides any GeneratorConfig field present in `doc`.
void apply_generator_json(const nlohmann::json& doc, GeneratorConfig& config);

/// {"segments": [[[amplitude, multiplier], ...], ...], "segment_duration_s",
/// "sample_rate_hz", "reset_time_per_segment"}; missing fields keep preset values.
HarmonicsSpec harmonics_from_json(const nlohmann::json& doc);

}  // namespace ctxseg::io
