#include "ctxseg/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <fmt/format.h>

namespace ctxseg::io {

namespace fs = std::filesystem;
using nlohmann::json;

SignalFormat format_for(const fs::path& path) {
  auto ext = path.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".csv" ? SignalFormat::csv : SignalFormat::raw_f32;
}

fs::path sidecar_path(const fs::path& raw_path) {
  fs::path p = raw_path;
  p += ".json";
  return p;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

namespace {

fs::path partial_path(const fs::path& path) {
  fs::path tmp = path;
  tmp += ".partial";
  return tmp;
}

void write_partial(const fs::path& path, std::string_view contents) {
  const fs::path tmp = partial_path(path);
  std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) {
    out.close();
    std::error_code ec;
    fs::remove(tmp, ec);
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

}  // namespace

void write_file_atomic(const fs::path& path, std::string_view contents) {
  write_files_atomic({{path, std::string(contents)}});
}

void write_files_atomic(const FileSet& files) {
  std::error_code ec;
  std::size_t written = 0;
  try {
    for (; written < files.size(); ++written) write_partial(files[written].first, files[written].second);
  } catch (...) {
    for (std::size_t i = 0; i < written; ++i) fs::remove(partial_path(files[i].first), ec);
    throw;
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    fs::rename(partial_path(files[i].first), files[i].first, ec);
    if (ec) {
      for (std::size_t j = i; j < files.size(); ++j) fs::remove(partial_path(files[j].first), ec);
      for (std::size_t j = 0; j < i; ++j) fs::remove(files[j].first, ec);
      throw std::runtime_error("cannot move output into place at '" + files[i].first.string() + "'");
    }
  }
}

std::string format_number(double value) { return fmt::format("{:.6g}", value); }

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                        : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double parse_double(std::string_view field, std::size_t line_no) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::invalid_argument(fmt::format("line {}: '{}' is not a number", line_no, field));
  }
  return v;
}

bool looks_numeric(std::string_view field) {
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  return ec == std::errc{} && ptr == field.data() + field.size();
}

MultiChannelSeries build(std::vector<std::vector<double>> columns, std::vector<std::string> labels,
                         double fs) {
  std::vector<TimeSeries> channels;
  channels.reserve(columns.size());
  for (auto& c : columns) channels.emplace_back(std::move(c), fs);
  return MultiChannelSeries(std::move(channels), std::move(labels));
}

}  // namespace

MultiChannelSeries parse_csv(std::string_view text, double sample_rate_hz) {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> columns;
  std::size_t line_no = 0;
  bool first = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (first) {
      first = false;
      columns.resize(fields.size());
      bool header = false;
      for (auto f : fields) header = header || !looks_numeric(f);
      if (header) {
        for (auto f : fields) labels.emplace_back(f);
        continue;
      }
    }
    if (fields.size() != columns.size()) {
      throw std::invalid_argument(fmt::format("line {}: expected {} fields, found {}", line_no,
                                              columns.size(), fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      columns[c].push_back(parse_double(fields[c], line_no));
    }
  }
  if (columns.empty() || columns.front().empty()) throw std::invalid_argument("CSV contains no samples");
  return build(std::move(columns), std::move(labels), sample_rate_hz);
}

std::string format_csv(const MultiChannelSeries& series) {
  std::string out;
  const auto& labels = series.labels();
  for (std::size_t c = 0; c < labels.size(); ++c) {
    if (c > 0) out += ',';
    out += labels[c];
  }
  out += '\n';
  const auto& ch = series.channels();
  for (std::size_t i = 0; i < series.length(); ++i) {
    for (std::size_t c = 0; c < ch.size(); ++c) {
      if (c > 0) out += ',';
      fmt::format_to(std::back_inserter(out), "{:.9g}", ch[c][i]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::uint32_t to_little(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
  }
}

MultiChannelSeries read_raw(const fs::path& path, std::optional<double> sample_rate_hz) {
  const auto side = sidecar_path(path);
  json meta;
  try {
    meta = json::parse(read_file(side));
  } catch (const json::exception& e) {
    throw std::invalid_argument("sidecar '" + side.string() + "': " + e.what());
  }
  const double fs = meta.at("sample_rate_hz").get<double>();
  if (sample_rate_hz && *sample_rate_hz != fs) {
    throw std::invalid_argument(fmt::format("sample rate {} does not match the sidecar's {}",
                                            *sample_rate_hz, fs));
  }
  std::vector<std::string> labels;
  std::size_t nch = 0;
  const auto& channels = meta.at("channels");
  if (channels.is_array()) {
    labels = channels.get<std::vector<std::string>>();
    nch = labels.size();
  } else {
    nch = channels.get<std::size_t>();
  }
  const auto samples = meta.at("samples").get<std::size_t>();
  if (nch == 0) throw std::invalid_argument("sidecar declares no channels");

  const std::string payload = read_file(path);
  if (payload.size() != nch * samples * sizeof(float)) {
    throw std::invalid_argument(fmt::format(
        "'{}' holds {} bytes but the sidecar declares {} channel(s) x {} samples of float32",
        path.string(), payload.size(), nch, samples));
  }
  std::vector<std::vector<double>> columns(nch, std::vector<double>(samples));
  for (std::size_t i = 0; i < samples; ++i) {
    for (std::size_t c = 0; c < nch; ++c) {
      std::uint32_t bits = 0;
      std::memcpy(&bits, payload.data() + (i * nch + c) * sizeof(float), sizeof(bits));
      columns[c][i] = static_cast<double>(std::bit_cast<float>(to_little(bits)));
    }
  }
  return build(std::move(columns), std::move(labels), fs);
}

std::string encode_raw(const MultiChannelSeries& series) {
  const auto& ch = series.channels();
  std::string payload(series.length() * ch.size() * sizeof(float), '\0');
  for (std::size_t i = 0; i < series.length(); ++i) {
    for (std::size_t c = 0; c < ch.size(); ++c) {
      const auto bits = to_little(std::bit_cast<std::uint32_t>(static_cast<float>(ch[c][i])));
      std::memcpy(payload.data() + (i * ch.size() + c) * sizeof(float), &bits, sizeof(bits));
    }
  }
  return payload;
}

}  // namespace

MultiChannelSeries read_signal(const fs::path& path, std::optional<double> sample_rate_hz) {
  if (format_for(path) == SignalFormat::raw_f32) return read_raw(path, sample_rate_hz);
  if (!sample_rate_hz) throw std::invalid_argument("a sample rate is required for CSV input");
  try {
    return parse_csv(read_file(path), *sample_rate_hz);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

FileSet encode_signal(const fs::path& path, const MultiChannelSeries& series) {
  if (series.channel_count() == 0) throw std::invalid_argument("no channels to write");
  if (format_for(path) == SignalFormat::csv) return {{path, format_csv(series)}};
  const json meta = {{"sample_rate_hz", series.sample_rate_hz()},
                     {"channels", series.labels()},
                     {"samples", series.length()}};
  return {{path, encode_raw(series)}, {sidecar_path(path), meta.dump(2) + "\n"}};
}

void write_signal(const fs::path& path, const MultiChannelSeries& series) {
  write_files_atomic(encode_signal(path, series));
}

json boundaries_to_json(const BoundarySet& boundaries, const std::vector<double>& p_values) {
  const auto pos = boundaries.positions();
  return {{"signal_length", boundaries.signal_length()},
          {"positions", std::vector<std::size_t>(pos.begin(), pos.end())},
          {"p_values", p_values}};
}

BoundarySet boundaries_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("signal_length") || !doc.contains("positions")) {
    throw std::invalid_argument("boundary document needs \"signal_length\" and \"positions\"");
  }
  return BoundarySet(doc.at("positions").get<std::vector<std::size_t>>(),
                     doc.at("signal_length").get<std::size_t>());
}

json report_to_json(const EvaluationReport& r) {
  return {{"boundary_count", r.boundary_count},
          {"mean_delay_s", r.mean_delay_s},
          {"sensitivity", r.sensitivity},
          {"similarity", r.similarity}};
}

json ensemble_to_json(const EnsembleReport& r) {
  return {{"trials", r.trials}, {"mean", report_to_json(r.mean)}, {"variance", report_to_json(r.variance)}};
}

std::string report_csv_header() { return "boundary_count,mean_delay_s,sensitivity,similarity"; }

std::string report_csv_row(const EvaluationReport& r) {
  return fmt::format("{:.6g},{:.6g},{:.6g},{:.6g}", r.boundary_count, r.mean_delay_s, r.sensitivity,
                     r.similarity);
}

std::string ensemble_csv_header() {
  return "trials,boundary_count,mean_delay_s,sensitivity,similarity,"
         "boundary_count_var,mean_delay_s_var,sensitivity_var,similarity_var";
}

std::string ensemble_csv_row(const EnsembleReport& r) {
  return fmt::format("{},{},{}", r.trials, report_csv_row(r.mean), report_csv_row(r.variance));
}

ContextSchedule schedule_from_json(const json& doc) {
  const json& steps = doc.is_object() ? doc.at("steps") : doc;
  if (!steps.is_array()) throw std::invalid_argument("schedule must be a list of steps");
  std::vector<ScheduleStep> out;
  for (const auto& s : steps) {
    out.push_back({s.at("rate_hz").get<double>(), s.at("duration_s").get<double>()});
  }
  return ContextSchedule(std::move(out));
}

json schedule_to_json(const ContextSchedule& schedule) {
  json steps = json::array();
  for (const auto& s : schedule.steps()) {
    steps.push_back({{"rate_hz", s.firing_rate_hz}, {"duration_s", s.duration_s}});
  }
  return steps;
}

void apply_generator_json(const json& doc, GeneratorConfig& c) {
  if (!doc.is_object()) throw std::invalid_argument("generator settings must be an object");
  c.neuron_count = doc.value("neuron_count", c.neuron_count);
  c.sample_rate_hz = doc.value("sample_rate_hz", c.sample_rate_hz);
  c.spike_amplitude = doc.value("spike_amplitude", c.spike_amplitude);
  c.spike_noise_std = doc.value("spike_noise_std", c.spike_noise_std);
  c.output_noise_std = doc.value("output_noise_std", c.output_noise_std);
  c.output_noise_relative = doc.value("output_noise_relative", c.output_noise_relative);
  c.lif.v_thresh = doc.value("v_thresh", c.lif.v_thresh);
  c.lif.leak_tau = doc.value("leak_tau", c.lif.leak_tau);
  c.lif.drive = doc.value("drive", c.lif.drive);
  c.seed = doc.value("seed", c.seed);
}

HarmonicsSpec harmonics_from_json(const json& doc) {
  HarmonicsSpec spec = HarmonicsSpec::preset();
  if (!doc.is_object()) throw std::invalid_argument("harmonics spec must be an object");
  if (doc.contains("segments")) {
    spec.segments.clear();
    for (const auto& seg : doc.at("segments")) {
      std::vector<CosineTerm> terms;
      for (const auto& t : seg) {
        terms.push_back({t.at(0).get<double>(), t.at(1).get<double>()});
      }
      spec.segments.push_back(std::move(terms));
    }
  }
  spec.segment_duration_s = doc.value("segment_duration_s", spec.segment_duration_s);
  spec.sample_rate_hz = doc.value("sample_rate_hz", spec.sample_rate_hz);
  spec.reset_time_per_segment = doc.value("reset_time_per_segment", spec.reset_time_per_segment);
  return spec;
}

}  // namespace ctxseg::io
