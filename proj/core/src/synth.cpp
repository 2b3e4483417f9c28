#include "ctxseg/synth.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/random/normal_distribution.hpp>

#include "ctxseg/rng.hpp"

namespace ctxseg {

HarmonicsSpec HarmonicsSpec::preset() {
  HarmonicsSpec spec;
  spec.segments = {
      {{0.5, 1}, {1.5, 4}, {4.0, 5}},
      {{0.7, 1}, {2.1, 4}, {5.6, 5}},
      {{1.5, 2}, {4.0, 8}},
      {{1.5, 1}, {4.0, 4}},
      {{0.5, 1}, {1.7, 2}, {3.7, 5}},
      {{2.3, 3}, {7.8, 8}},
      {{0.8, 1}, {1.0, 3}, {3.0, 5}},
  };
  return spec;
}

namespace {

BoundarySet joins(const std::vector<std::size_t>& lengths) {
  const std::size_t total = std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});
  BoundarySet gt(total);
  std::size_t pos = 0;
  for (std::size_t i = 0; i + 1 < lengths.size(); ++i) {
    pos += lengths[i];
    gt.push_back(pos);
  }
  return gt;
}

}  // namespace

GeneratedSignal generate_harmonics(const HarmonicsSpec& spec) {
  if (spec.segments.empty()) throw std::invalid_argument("harmonics: no segments");
  if (!(spec.sample_rate_hz > 0.0) || !(spec.segment_duration_s > 0.0)) {
    throw std::invalid_argument("harmonics: sample rate and segment duration must be positive");
  }
  const auto per_segment =
      static_cast<std::size_t>(std::llround(spec.segment_duration_s * spec.sample_rate_hz));
  if (per_segment == 0) throw std::invalid_argument("harmonics: segment shorter than one sample");

  std::vector<double> x;
  x.reserve(per_segment * spec.segments.size());
  for (std::size_t s = 0; s < spec.segments.size(); ++s) {
    for (std::size_t k = 0; k < per_segment; ++k) {
      const std::size_t n = spec.reset_time_per_segment ? k : s * per_segment + k;
      const double t = static_cast<double>(n) / spec.sample_rate_hz;
      double v = 0.0;
      for (const auto& term : spec.segments[s]) {
        v += term.amplitude * std::cos(term.angular_multiplier * std::numbers::pi * t);
      }
      x.push_back(v);
    }
  }
  GeneratedSignal out;
  out.series = TimeSeries(std::move(x), spec.sample_rate_hz);
  out.ground_truth = joins(std::vector<std::size_t>(spec.segments.size(), per_segment));
  return out;
}

bool ArModel::is_stable() const {
  const std::size_t p = coefficients.size();
  if (p == 0) return true;
  // Companion matrix of z^p - a1 z^{p-1} - ... - ap.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p),
                                                    static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < p; ++i) companion(0, static_cast<Eigen::Index>(i)) = coefficients[i];
  for (std::size_t i = 1; i < p; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  }
  const Eigen::VectorXcd roots = companion.eigenvalues();
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    if (!(std::abs(roots(i)) < 1.0)) return false;
  }
  return true;
}

ArModel fit_ar(const TimeSeries& exemplar, std::size_t order) {
  if (order < 1) throw std::invalid_argument("fit_ar: order must be at least 1");
  const auto x = exemplar.samples();
  const std::size_t n = x.size();
  if (n <= order + 1) throw std::invalid_argument("fit_ar: exemplar too short for the order");

  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  std::vector<double> acov(order + 1, 0.0);
  for (std::size_t lag = 0; lag <= order; ++lag) {
    double s = 0.0;
    for (std::size_t t = lag; t < n; ++t) s += (x[t] - mean) * (x[t - lag] - mean);
    acov[lag] = s / static_cast<double>(n);
  }
  if (!(acov[0] > 0.0)) throw std::invalid_argument("fit_ar: degenerate autocorrelation (zero variance)");

  // Levinson-Durbin recursion.
  std::vector<double> a(order, 0.0);
  std::vector<double> prev(order, 0.0);
  double err = acov[0];
  for (std::size_t k = 0; k < order; ++k) {
    double acc = acov[k + 1];
    for (std::size_t j = 0; j < k; ++j) acc -= a[j] * acov[k - j];
    const double reflection = acc / err;
    prev = a;
    a[k] = reflection;
    for (std::size_t j = 0; j < k; ++j) a[j] = prev[j] - reflection * prev[k - 1 - j];
    err *= (1.0 - reflection * reflection);
    if (!(err > 0.0)) throw std::invalid_argument("unstable AR model");
  }

  ArModel model{a, std::sqrt(err)};
  if (!model.is_stable()) throw std::invalid_argument("unstable AR model");
  return model;
}

GeneratedSignal generate_ar_sequence(const std::map<std::string, ArModel>& models,
                                     const std::vector<std::string>& states,
                                     double segment_duration_s, double sample_rate_hz,
                                     std::uint64_t seed) {
  if (states.empty()) throw std::invalid_argument("generate_ar_sequence: no states");
  if (!(sample_rate_hz > 0.0) || !(segment_duration_s > 0.0)) {
    throw std::invalid_argument("generate_ar_sequence: sample rate and duration must be positive");
  }
  const auto per_segment =
      static_cast<std::size_t>(std::llround(segment_duration_s * sample_rate_hz));
  if (per_segment == 0) throw std::invalid_argument("generate_ar_sequence: segment shorter than one sample");

  std::vector<double> x;
  x.reserve(per_segment * states.size());
  Rng rng(seed);
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  for (const auto& state : states) {
    const auto it = models.find(state);
    if (it == models.end()) throw std::invalid_argument("generate_ar_sequence: no model for state '" + state + "'");
    const ArModel& m = it->second;
    const std::size_t p = m.order();
    const std::size_t burn_in = 10 * p;
    std::vector<double> history(p, 0.0);  // history[0] is x_{t-1}
    for (std::size_t k = 0; k < burn_in + per_segment; ++k) {
      double v = m.noise_std * normal(rng);
      for (std::size_t i = 0; i < p; ++i) v += m.coefficients[i] * history[i];
      if (p > 0) {
        for (std::size_t i = p - 1; i > 0; --i) history[i] = history[i - 1];
        history[0] = v;
      }
      if (k >= burn_in) x.push_back(v);
    }
  }
  GeneratedSignal out;
  out.series = TimeSeries(std::move(x), sample_rate_hz);
  out.ground_truth = joins(std::vector<std::size_t>(states.size(), per_segment));
  return out;
}

}  // namespace ctxseg
