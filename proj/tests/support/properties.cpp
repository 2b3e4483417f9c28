#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "ctxseg/baselines.hpp"
#include "ctxseg/ctxgen.hpp"
#include "ctxseg/metrics.hpp"
#include "ctxseg/segmenter.hpp"
#include "ctxseg/signal.hpp"
#include "ctxseg/stats.hpp"
#include "ctxseg/strategies.hpp"
#include "oracles.hpp"

namespace ctxseg::testing {

namespace {

using Failure = std::optional<std::string>;

std::vector<std::size_t> to_vector(std::span<const std::size_t> s) { return {s.begin(), s.end()}; }

Failure check_valid(const BoundarySet& b) {
  const auto p = b.positions();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0 || p[i] >= b.signal_length()) {
      return fmt::format("position {} outside (0, {})", p[i], b.signal_length());
    }
    if (i > 0 && p[i] <= p[i - 1]) return fmt::format("positions not increasing: {}", to_vector(p));
  }
  return std::nullopt;
}

TaperKind any_taper(Gen& g) {
  switch (g.index(0, 2)) {
    case 0: return TaperKind::hamming;
    case 1: return TaperKind::hann;
    default: return TaperKind::rectangular;
  }
}

}  // namespace

PropertyReport boundary_set_invariants(std::size_t cases) {
  return check_property("boundary set ordering and range", cases, 0xB0B0, [](Gen& g) -> Failure {
    const std::size_t length = g.index(0, 200);
    std::vector<std::size_t> candidate(g.index(0, 8));
    for (auto& c : candidate) c = g.index(0, length + 2);
    if (g.coin(0.5)) std::sort(candidate.begin(), candidate.end());

    bool valid = true;
    for (std::size_t i = 0; i < candidate.size(); ++i) {
      if (candidate[i] == 0 || candidate[i] >= length) valid = false;
      if (i > 0 && candidate[i] <= candidate[i - 1]) valid = false;
    }
    std::optional<BoundarySet> set;
    try {
      set.emplace(candidate, length);
    } catch (const std::invalid_argument&) {
      if (valid) return fmt::format("rejected valid positions {} on length {}", candidate, length);
      return std::nullopt;
    }
    if (!valid) return fmt::format("accepted invalid positions {} on length {}", candidate, length);
    if (to_vector(set->positions()) != candidate) return "positions changed on construction";
    if (auto f = check_valid(*set)) return f;

    const auto segments = segments_from_boundaries(*set);
    if (length > 0 && segments.size() != set->size() + 1) return "segment count is not boundaries + 1";
    std::size_t cursor = 0;
    for (const auto& s : segments) {
      if (s.start != cursor || s.end <= s.start) return fmt::format("segment [{}, {}) breaks the partition", s.start, s.end);
      cursor = s.end;
    }
    if (cursor != length) return "segments do not cover the signal";

    if (!set->empty()) {
      BoundarySet copy = *set;
      const std::size_t last = set->positions().back();
      try {
        copy.push_back(last);
        return "push_back accepted a repeated position";
      } catch (const std::invalid_argument&) {
      }
    }
    return std::nullopt;
  });
}

PropertyReport ctxseg_minimum_segment(std::size_t cases) {
  return check_property("ctxseg minimum segment", cases, 0xC7C5, [](Gen& g) -> Failure {
    CtxsegConfig config;
    config.window_samples = g.index(4, 40);
    config.stride_samples = g.index(1, 5);
    const double alphas[] = {0.5, 0.2, 0.05, 0.01};
    config.alpha = alphas[g.index(0, 3)];
    config.taper = any_taper(g);
    config.include_dc = g.coin(0.8);
    const std::size_t n = g.index(config.window_samples + config.stride_samples, 600);
    const TimeSeries signal(g.piecewise_signal(n, g.index(1, 6)), 256.0);

    const auto result = ctxseg_segment(signal, config);
    if (auto f = check_valid(result.boundaries)) return f;
    if (result.short_signal) return "flagged a long-enough signal as short";
    const auto p = result.boundaries.positions();
    const std::size_t w = config.window_samples;
    if (!p.empty() && p.front() < w + config.stride_samples) {
      return fmt::format("first boundary {} before w + s = {}", p.front(), w + config.stride_samples);
    }
    for (std::size_t i = 1; i < p.size(); ++i) {
      if (p[i] - p[i - 1] < w + 1) return fmt::format("boundaries {} and {} closer than w + 1 = {}", p[i - 1], p[i], w + 1);
    }
    const auto segments = segments_from_boundaries(result.boundaries);
    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
      if (segments[i].length() < w) return fmt::format("segment {} shorter than the window", i);
    }
    if (result.p_values.size() != p.size()) return "one p-value per boundary expected";
    for (double pv : result.p_values) {
      if (!(pv < config.alpha)) return fmt::format("boundary with p {} not below alpha {}", pv, config.alpha);
    }
    if (result.comparisons > n) return fmt::format("{} comparisons on {} samples", result.comparisons, n);
    if (ctxseg_segment(signal, config).boundaries != result.boundaries) return "not deterministic";
    return std::nullopt;
  });
}

PropertyReport generate_determinism(std::size_t cases) {
  return check_property("generate determinism", cases, 0x6E6E, [](Gen& g) -> Failure {
    GeneratorConfig config;
    config.neuron_count = g.index(1, 130);
    config.sample_rate_hz = g.coin() ? 256.0 : 128.0;
    config.seed = g.bits();
    config.spike_noise_std = g.coin(0.8) ? 0.1 : 0.0;
    config.output_noise_std = g.coin(0.8) ? 0.01 : 0.0;
    std::vector<ScheduleStep> steps(g.index(1, 4));
    for (auto& s : steps) s = {g.real(0.0, 60.0), g.real(0.05, 0.4)};
    const ContextSchedule schedule(steps);

    const auto first = generate(schedule, config, 1);
    const auto second = generate(schedule, config, static_cast<unsigned>(g.index(1, 4)));
    if (first.ground_truth != second.ground_truth) return "ground truth differs between runs";
    const auto a = first.series.samples();
    const auto b = second.series.samples();
    if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) return "samples differ between runs";
    if (first.ground_truth.size() != steps.size() - 1) return "ground truth count is not steps - 1";
    const auto lengths = schedule.step_samples(config.sample_rate_hz);
    if (a.size() != std::accumulate(lengths.begin(), lengths.end(), std::size_t{0})) return "length is not the sum of steps";
    return std::nullopt;
  });
}

PropertyReport vote_permutation_invariance(std::size_t cases) {
  return check_property("multichannel vote permutation invariance", cases, 0x707E, [](Gen& g) -> Failure {
    const std::size_t length = g.index(50, 500);
    const std::size_t channels = g.index(1, 6);
    std::vector<std::size_t> anchors(g.index(0, 6));
    for (auto& a : anchors) a = g.index(1, length - 6);

    std::vector<BoundarySet> per_channel;
    for (std::size_t c = 0; c < channels; ++c) {
      std::set<std::size_t> picks;
      for (std::size_t a : anchors) {
        if (g.coin(0.7)) picks.insert(a + g.index(0, 4));
      }
      for (std::size_t k = g.index(0, 4); k > 0; --k) picks.insert(g.index(1, length - 1));
      BoundarySet set(length);
      for (std::size_t p : picks) set.push_back(p);
      per_channel.push_back(set);
    }
    VoteConfig config{g.index(1, 4), g.index(0, 4), g.index(0, 40)};

    const auto voted = multichannel_vote(per_channel, config);
    if (auto f = check_valid(voted)) return f;
    const auto p = voted.positions();
    for (std::size_t i = 1; i < p.size(); ++i) {
      if (p[i] - p[i - 1] < config.min_segment) return "voted boundaries closer than min_segment";
    }
    for (std::size_t pos : p) {
      std::size_t agreeing = 0;
      for (const auto& ch : per_channel) {
        const auto cp = ch.positions();
        if (std::any_of(cp.begin(), cp.end(), [&](std::size_t q) { return q >= pos && q - pos <= config.tolerance_samples; })) {
          ++agreeing;
        }
      }
      if (agreeing < config.min_channels) return fmt::format("boundary {} has only {} agreeing channels", pos, agreeing);
    }

    auto shuffled = per_channel;
    g.shuffle(shuffled);
    if (multichannel_vote(shuffled, config) != voted) return "result depends on channel order";
    return std::nullopt;
  });
}

PropertyReport fixed_slices_arithmetic(std::size_t cases) {
  return check_property("fixed slices arithmetic", cases, 0xF1CE, [](Gen& g) -> Failure {
    const std::size_t length = g.index(0, 5000);
    const std::size_t w = g.index(1, 600);
    const double overlaps[] = {0.0, 0.25, 0.5, 0.75};
    const double overlap = g.coin(0.6) ? overlaps[g.index(0, 3)] : g.real(0.0, 0.95);
    const FixedSlicing slicing{w, overlap};
    const auto expected_stride = std::llround(static_cast<double>(w) * (1.0 - overlap));
    if (expected_stride < 1) {
      try {
        (void)fixed_slices(length, slicing);
        return "accepted a stride below one sample";
      } catch (const std::invalid_argument&) {
        return std::nullopt;
      }
    }
    const auto stride = static_cast<std::size_t>(expected_stride);
    const auto slices = fixed_slices(length, slicing);
    const std::size_t expected = w > length ? 0 : (length - w) / stride + 1;
    if (slices.size() != expected) return fmt::format("{} slices, expected {}", slices.size(), expected);
    for (std::size_t k = 0; k < slices.size(); ++k) {
      if (slices[k].start != k * stride || slices[k].length() != w || slices[k].end > length) {
        return fmt::format("slice {} is [{}, {})", k, slices[k].start, slices[k].end);
      }
    }
    return std::nullopt;
  });
}

PropertyReport paired_t_symmetry_and_shift(std::size_t cases) {
  return check_property("paired t symmetry and shift invariance", cases, 0x7755, [](Gen& g) -> Failure {
    const std::size_t n = g.index(2, 130);
    const auto a = g.normals(n, g.real(0.1, 10.0));
    auto b = g.normals(n, g.real(0.1, 10.0));
    const double offset = g.real(-1.0, 1.0);
    for (auto& v : b) v += offset;
    const double p = paired_t_test(a, b);
    if (!(p >= 0.0 && p <= 1.0)) return fmt::format("p = {} outside [0, 1]", p);
    if (paired_t_test(b, a) != p) return "p(a, b) != p(b, a)";
    const double c = g.real(-3.0, 3.0);
    auto as = a;
    auto bs = b;
    for (auto& v : as) v += c;
    for (auto& v : bs) v += c;
    const double shifted = paired_t_test(as, bs);
    if (std::abs(shifted - p) > 1e-9) return fmt::format("shift by {} moved p from {} to {}", c, p, shifted);
    return std::nullopt;
  });
}

PropertyReport spectrum_shape(std::size_t cases) {
  return check_property("log spectrum length and finiteness", cases, 0x5BEC, [](Gen& g) -> Failure {
    const std::size_t n = g.index(2, 300);
    const auto x = g.coin(0.1) ? std::vector<double>(n, 0.0) : g.normals(n);
    const double fs = g.real(1.0, 1000.0);
    const auto s = log_magnitude_spectrum(x, fs, {any_taper(g), true});
    if (s.bins.size() != n / 2 + 1) return fmt::format("{} bins for length {}", s.bins.size(), n);
    if (std::abs(s.bin_resolution_hz - fs / static_cast<double>(n)) > 1e-12 * fs) return "wrong bin resolution";
    for (double v : s.bins) {
      if (!std::isfinite(v)) return "non-finite bin";
    }
    return std::nullopt;
  });
}

PropertyReport rectangular_taper_identity(std::size_t cases) {
  return check_property("rectangular taper is the identity", cases, 0x7A9E, [](Gen& g) -> Failure {
    const auto x = g.normals(g.index(1, 200), g.real(0.01, 100.0));
    if (taper(x, TaperKind::rectangular) != x) return "rectangular taper changed the input";
    return std::nullopt;
  });
}

PropertyReport similarity_symmetry(std::size_t cases) {
  return check_property("similarity symmetry and range", cases, 0x5177, [](Gen& g) -> Failure {
    const std::size_t length = g.index(2, 400);
    const auto a = g.boundaries(length, 8);
    const auto b = g.boundaries(length, 8);
    const std::size_t tol = g.index(0, 30);
    const double ab = boundary_similarity(a, b, tol);
    if (!(ab >= 0.0 && ab <= 1.0)) return fmt::format("similarity {} outside [0, 1]", ab);
    if (std::abs(ab - boundary_similarity(b, a, tol)) > 1e-12) return "similarity is not symmetric";
    if (!a.empty() && boundary_similarity(a, a, tol) != 1.0) return "self-similarity below 1";
    return std::nullopt;
  });
}

PropertyReport spurious_boundary_lowers_similarity(std::size_t cases) {
  return check_property("spurious boundary lowers similarity", cases, 0x5B55, [](Gen& g) -> Failure {
    const std::size_t length = g.index(200, 2000);
    const std::size_t tol = g.index(0, 10);
    const auto gt = g.boundaries(length, 5);
    if (gt.empty()) return std::nullopt;
    const auto found = g.boundaries(length, 5);
    // A position farther than tol from every ground-truth and found boundary.
    std::vector<std::size_t> free;
    for (std::size_t p = 1; p < length; ++p) {
      auto far = [&](std::span<const std::size_t> s) {
        return std::all_of(s.begin(), s.end(), [&](std::size_t q) { return (p > q ? p - q : q - p) > tol; });
      };
      if (far(gt.positions()) && far(found.positions())) free.push_back(p);
    }
    if (free.empty()) return std::nullopt;
    const std::size_t extra = free[g.index(0, free.size() - 1)];
    std::vector<std::size_t> more = to_vector(found.positions());
    more.insert(std::upper_bound(more.begin(), more.end(), extra), extra);
    const BoundarySet with_extra(more, length);
    const double before = boundary_similarity(gt, found, tol);
    const double after = boundary_similarity(gt, with_extra, tol);
    if (!(after < before) && before > 0.0) return fmt::format("similarity {} -> {} after adding {}", before, after, extra);
    if (boundary_sensitivity(gt, found) > boundary_sensitivity(gt, with_extra)) return "sensitivity dropped";
    return std::nullopt;
  });
}

PropertyReport delays_below_spacing(std::size_t cases) {
  return check_property("delays below ground-truth spacing", cases, 0xDE1A, [](Gen& g) -> Failure {
    const std::size_t length = g.index(2, 3000);
    const auto gt = g.boundaries(length, 8);
    const auto found = g.boundaries(length, 12);
    const double fs = g.real(1.0, 512.0);
    const auto delays = boundary_delay(gt, found, fs);
    const auto p = gt.positions();
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!delays[i]) continue;
      const std::size_t next = i + 1 < p.size() ? p[i + 1] : length;
      const double spacing = static_cast<double>(next - p[i]) / fs;
      if (!(*delays[i] >= 0.0 && *delays[i] < spacing)) return fmt::format("delay {} with spacing {}", *delays[i], spacing);
    }
    if (!gt.empty()) {
      const double sens = boundary_sensitivity(gt, found);
      const auto hits = std::count_if(delays.begin(), delays.end(), [](const auto& d) { return d.has_value(); });
      if (sens != static_cast<double>(hits) / static_cast<double>(p.size())) return "sensitivity disagrees with delays";
    }
    return std::nullopt;
  });
}

PropertyReport nleo_energy_scales_quadratically(std::size_t cases) {
  return check_property("nleo energy scales with c^2", cases, 0x9E10, [](Gen& g) -> Failure {
    const auto x = g.normals(g.index(4, 200));
    const double c = g.real(-5.0, 5.0);
    auto scaled = x;
    for (auto& v : scaled) v *= c;
    const auto q = nleo_energy(x);
    const auto qs = nleo_energy(scaled);
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (std::abs(qs[i] - c * c * q[i]) > 1e-9 * (1.0 + std::abs(c * c * q[i]))) return fmt::format("Q({}) not scaled by c^2", i);
    }
    return std::nullopt;
  });
}

PropertyReport distances_translate_with_signal(std::size_t cases) {
  return check_property("varri and nleo distances translate with the signal", cases, 0x7A45, [](Gen& g) -> Failure {
    const std::size_t w = g.index(2, 20);
    const std::size_t shift = g.index(1, 30);
    const auto x = g.normals(g.index(2 * w + 3, 300));
    std::vector<double> padded = g.normals(shift);
    padded.insert(padded.end(), x.begin(), x.end());
    const auto gv = varri_distance(x, w, 1.0, 7.0);
    const auto gvs = varri_distance(padded, w, 1.0, 7.0);
    const auto gn = nleo_distance(x, w);
    const auto gns = nleo_distance(padded, w);
    // Only positions whose windows lie entirely inside x are comparable.
    for (std::size_t m = w; m + w <= x.size(); ++m) {
      if (std::abs(gv[m] - gvs[m + shift]) > 1e-9 * (1.0 + gv[m])) return fmt::format("varri G({}) moved", m);
    }
    for (std::size_t m = w + 2; m + w < x.size(); ++m) {
      if (std::abs(gn[m] - gns[m + shift]) > 1e-9 * (1.0 + gn[m])) return fmt::format("nleo G({}) moved", m);
    }
    return std::nullopt;
  });
}

PropertyReport extraction_within_segment(std::size_t cases) {
  return check_property("extracted windows lie inside their segments", cases, 0xE87A, [](Gen& g) -> Failure {
    const std::size_t length = g.index(1, 3000);
    const auto segments = segments_from_boundaries(g.boundaries(length, 10));
    const std::size_t w = g.index(1, 300);
    ExtractionStrategy strategy{g.coin() ? ExtractionKind::variable_first : ExtractionKind::variable_random, g.bits()};
    const auto out = extract_representative(segments, w, strategy);
    const auto long_enough = std::count_if(segments.begin(), segments.end(), [&](const SampleRange& s) { return s.length() >= w; });
    if (out.windows.size() != static_cast<std::size_t>(long_enough)) return "kept window count wrong";
    if (out.dropped + out.windows.size() != segments.size()) return "dropped count wrong";
    std::size_t k = 0;
    for (const auto& s : segments) {
      if (s.length() < w) continue;
      const auto& win = out.windows[k++];
      if (win.length() != w || win.start < s.start || win.end > s.end) return "window outside its segment";
      if (strategy.kind == ExtractionKind::variable_first && win.start != s.start) return "variable_first did not start the segment";
    }
    if (extract_representative(segments, w, strategy).windows != out.windows) return "not reproducible";
    return std::nullopt;
  });
}

PropertyReport schedule_ground_truth(std::size_t cases) {
  return check_property("schedule ground truth at step joins", cases, 0x5C4E, [](Gen& g) -> Failure {
    std::vector<ScheduleStep> steps(g.index(1, 10));
    for (auto& s : steps) s = {g.real(0.0, 40.0), g.real(0.01, 20.0)};
    const ContextSchedule schedule(steps);
    const double fs = g.coin() ? 256.0 : g.real(50.0, 1000.0);
    const auto lengths = schedule.step_samples(fs);
    bool empty_step = std::any_of(lengths.begin(), lengths.end(), [](std::size_t n) { return n == 0; });
    if (empty_step) return std::nullopt;
    const auto gt = schedule.ground_truth(fs);
    if (gt.size() != steps.size() - 1) return "boundary count is not steps - 1";
    std::size_t cum = 0;
    for (std::size_t i = 0; i + 1 < lengths.size(); ++i) {
      cum += lengths[i];
      if (gt.positions()[i] != cum) return "boundary not at the step join";
    }
    return std::nullopt;
  });
}

PropertyReport membrane_stays_bounded(std::size_t cases) {
  return check_property("membrane potential bounded by threshold", cases, 0x3E3B, [](Gen& g) -> Failure {
    LifParams p;
    p.v_thresh = g.real(0.5, 30.0);
    p.leak_tau = g.real(0.005, 1.0);
    p.dt = 1.0 / 256.0;
    p.drive = g.coin(0.7) ? 0.0 : g.real(0.0, 40.0);
    std::vector<double> inc(g.index(1, 500));
    double max_inc = 0.0;
    for (auto& v : inc) {
      v = g.coin(g.real(0.0, 1.0)) ? std::abs(g.normal(1.0, g.real(0.0, 3.0))) : 0.0;
      max_inc = std::max(max_inc, v);
    }
    const auto lfp = simulate_lif_lfp(p, inc);
    for (double v : lfp) {
      if (v >= p.v_thresh + max_inc) return fmt::format("potential {} above threshold {} + {}", v, p.v_thresh, max_inc);
      if (v >= p.v_thresh) return fmt::format("potential {} not reset at threshold {}", v, p.v_thresh);
    }
    return std::nullopt;
  });
}

PropertyReport sps_boundaries_below_alpha(std::size_t cases) {
  return check_property("sps boundaries have p below alpha", cases, 0x5B5A, [](Gen& g) -> Failure {
    SpsConfig config;
    config.window_samples = g.index(32, 64);
    const double alphas[] = {0.25, 0.1, 0.05, 0.01};
    config.alpha = alphas[g.index(0, 3)];
    config.jump_after_boundary = g.coin(0.3);
    const std::size_t n = g.index(2 * config.window_samples, 400);
    const TimeSeries signal(g.piecewise_signal(n, g.index(1, 4)), 128.0);
    const auto r = sps_segment(signal, config);
    if (auto f = check_valid(r.boundaries)) return f;
    if (r.p_values.size() != r.boundaries.size()) return "one p-value per boundary expected";
    for (double p : r.p_values) {
      if (!(p < config.alpha)) return fmt::format("boundary with p {} at alpha {}", p, config.alpha);
    }
    return std::nullopt;
  });
}

PropertyReport baseline_boundaries_valid(std::size_t cases) {
  return check_property("varri and nleo boundaries valid", cases, 0xBA5E, [](Gen& g) -> Failure {
    const std::size_t w = g.index(4, 40);
    const std::size_t n = g.index(2 * w + 3, 800);
    const TimeSeries signal(g.piecewise_signal(n, g.index(1, 5)), 256.0);
    VarriConfig v;
    v.window_samples = w;
    v.extrema_window_s = g.coin() ? 0.0 : g.real(0.0, 0.2);
    v.threshold_window_s = g.real(0.1, 8.0);
    if (auto f = check_valid(varri_segment(signal, v))) return f;
    NleoConfig nl;
    nl.window_samples = w;
    nl.extrema_window_s = v.extrema_window_s;
    if (auto f = check_valid(nleo_segment(signal, nl))) return f;
    return std::nullopt;
  });
}

PropertyReport ad_symmetry(std::size_t cases) {
  return check_property("anderson-darling symmetric in its samples", cases, 0xADAD, [](Gen& g) -> Failure {
    const auto a = g.normals(g.index(2, 12));
    auto b = g.normals(g.index(2, 12));
    if (g.coin(0.3)) {
      for (auto& v : b) v = std::round(v);
    }
    const auto ab = anderson_darling_2sample(a, b);
    const auto ba = anderson_darling_2sample(b, a);
    if (std::abs(ab.statistic - ba.statistic) > 1e-9 * (1.0 + ab.statistic)) return "statistic not symmetric";
    if (std::abs(ab.p_value - ba.p_value) > 1e-12) return "p-value not symmetric";
    if (!(ab.p_value >= kAndersonDarlingPMin && ab.p_value <= kAndersonDarlingPMax)) return "p-value outside clip range";
    return std::nullopt;
  });
}

PropertyReport similarity_matches_oracle(std::size_t cases) {
  return check_property("similarity matches exhaustive matching", cases, 0x0AC1, [](Gen& g) -> Failure {
    const std::size_t length = g.index(2, 50);
    const auto a = g.boundaries(length, 3);
    const auto b = g.boundaries(length, 3);
    const std::size_t tol = g.index(0, 12);
    const double got = boundary_similarity(a, b, tol);
    const double want = oracle::similarity(a.positions(), b.positions(), tol);
    if (std::abs(got - want) > 1e-12) {
      return fmt::format("{} vs {} (tol {}): {} != {}", to_vector(a.positions()), to_vector(b.positions()), tol, got, want);
    }
    return std::nullopt;
  });
}

namespace {

void subsets(std::size_t length, std::size_t max_size, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> current;
  auto recurse = [&](auto&& self, std::size_t next) -> void {
    out.push_back(current);
    if (current.size() == max_size) return;
    for (std::size_t p = next; p < length; ++p) {
      current.push_back(p);
      self(self, p + 1);
      current.pop_back();
    }
  };
  recurse(recurse, 1);
}

}  // namespace

std::size_t similarity_exhaustive_mismatches(std::size_t max_length, std::size_t max_per_side,
                                             const std::vector<std::size_t>& tolerances,
                                             std::size_t& checked) {
  std::size_t mismatches = 0;
  checked = 0;
  for (std::size_t length = 1; length <= max_length; ++length) {
    std::vector<std::vector<std::size_t>> sets;
    subsets(length, max_per_side, sets);
    std::vector<BoundarySet> built;
    built.reserve(sets.size());
    for (const auto& s : sets) built.emplace_back(s, length);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t j = 0; j < sets.size(); ++j) {
        for (std::size_t tol : tolerances) {
          ++checked;
          const double got = boundary_similarity(built[i], built[j], tol);
          if (std::abs(got - oracle::similarity(sets[i], sets[j], tol)) > 1e-12) ++mismatches;
        }
      }
    }
  }
  return mismatches;
}

const std::vector<NamedSuite>& all_suites() {
  static const std::vector<NamedSuite> suites = {
      {"boundary_set_invariants", boundary_set_invariants},
      {"ctxseg_minimum_segment", ctxseg_minimum_segment},
      {"generate_determinism", generate_determinism},
      {"vote_permutation_invariance", vote_permutation_invariance},
      {"fixed_slices_arithmetic", fixed_slices_arithmetic},
      {"paired_t_symmetry_and_shift", paired_t_symmetry_and_shift},
      {"spectrum_shape", spectrum_shape},
      {"rectangular_taper_identity", rectangular_taper_identity},
      {"similarity_symmetry", similarity_symmetry},
      {"spurious_boundary_lowers_similarity", spurious_boundary_lowers_similarity},
      {"delays_below_spacing", delays_below_spacing},
      {"nleo_energy_scales_quadratically", nleo_energy_scales_quadratically},
      {"distances_translate_with_signal", distances_translate_with_signal},
      {"extraction_within_segment", extraction_within_segment},
      {"schedule_ground_truth", schedule_ground_truth},
      {"membrane_stays_bounded", membrane_stays_bounded},
      {"sps_boundaries_below_alpha", sps_boundaries_below_alpha},
      {"baseline_boundaries_valid", baseline_boundaries_valid},
      {"ad_symmetry", ad_symmetry},
      {"similarity_matches_oracle", similarity_matches_oracle},
  };
  return suites;
}

}  // namespace ctxseg::testing
