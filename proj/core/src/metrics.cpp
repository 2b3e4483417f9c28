#include "ctxseg/metrics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ctxseg {

namespace {

void require_same_length(const BoundarySet& a, const BoundarySet& b) {
  if (a.signal_length() != b.signal_length()) {
    throw std::invalid_argument("boundary sets describe signals of different length");
  }
}

}  // namespace

std::vector<std::optional<double>> boundary_delay(const GroundTruth& gt, const BoundarySet& found,
                                                  double sample_rate_hz) {
  if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("boundary_delay: bad sample rate");
  const auto g = gt.positions();
  const auto f = found.positions();
  std::vector<std::optional<double>> delays(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::size_t limit = i + 1 < g.size() ? g[i + 1] : std::max(gt.signal_length(), g[i] + 1);
    const auto it = std::lower_bound(f.begin(), f.end(), g[i]);
    if (it != f.end() && *it < limit) {
      delays[i] = static_cast<double>(*it - g[i]) / sample_rate_hz;
    }
  }
  return delays;
}

double boundary_sensitivity(const GroundTruth& gt, const BoundarySet& found) {
  if (gt.empty()) throw std::invalid_argument("sensitivity undefined");
  const auto delays = boundary_delay(gt, found, 1.0);
  const auto hits = std::count_if(delays.begin(), delays.end(),
                                  [](const auto& d) { return d.has_value(); });
  return static_cast<double>(hits) / static_cast<double>(gt.size());
}

std::vector<double> discovery_delay(const GroundTruth& gt, const BoundarySet& found,
                                    double sample_rate_hz) {
  if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("discovery_delay: bad sample rate");
  const auto f = found.positions();
  std::vector<double> out;
  out.reserve(gt.size());
  for (std::size_t g : gt.positions()) {
    const auto it = std::lower_bound(f.begin(), f.end(), g);
    const std::size_t hit = it != f.end() ? *it : gt.signal_length();
    out.push_back(static_cast<double>(hit - g) / sample_rate_hz);
  }
  return out;
}

double boundary_similarity(const BoundarySet& gt, const BoundarySet& found,
                           std::size_t tolerance_samples) {
  require_same_length(gt, found);
  const auto a = gt.positions();
  const auto b = found.positions();
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  if (na == 0 && nb == 0) return 1.0;
  if (na == 0 || nb == 0) return 0.0;

  const double scale = static_cast<double>(tolerance_samples) + 1.0;
  const std::size_t kmax = std::min(na, nb);
  constexpr double inf = std::numeric_limits<double>::infinity();

  // row[j][k]: minimum near-miss cost aligning a[0..i) with b[0..j) using k
  // pairs, for the current i. Rolling over i keeps memory at O(nb * kmax).
  const std::size_t stride = kmax + 1;
  std::vector<double> row((nb + 1) * stride, inf);
  std::vector<double> next((nb + 1) * stride, inf);
  row[0] = 0.0;
  for (std::size_t i = 0;; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      for (std::size_t k = 0; k <= kmax; ++k) {
        row[(j + 1) * stride + k] = std::min(row[(j + 1) * stride + k], row[j * stride + k]);
      }
    }
    if (i == na) break;
    std::fill(next.begin(), next.end(), inf);
    for (std::size_t j = 0; j <= nb; ++j) {
      for (std::size_t k = 0; k <= kmax; ++k) {
        const double c = row[j * stride + k];
        if (c == inf) continue;
        next[j * stride + k] = std::min(next[j * stride + k], c);
        if (j < nb && k < kmax) {
          const std::size_t d = a[i] > b[j] ? a[i] - b[j] : b[j] - a[i];
          if (d <= tolerance_samples) {
            auto& slot = next[(j + 1) * stride + k + 1];
            slot = std::min(slot, c + static_cast<double>(d) / scale);
          }
        }
      }
    }
    row.swap(next);
  }

  double best = 0.0;
  for (std::size_t k = 0; k <= kmax; ++k) {
    const double c = row[nb * stride + k];
    if (c == inf) continue;
    const double edits = static_cast<double>(na + nb - 2 * k) + c;
    const double denom = static_cast<double>(na + nb - k);
    best = std::max(best, 1.0 - edits / denom);
  }
  return std::clamp(best, 0.0, 1.0);
}

EvaluationReport evaluate(const GroundTruth& gt, const BoundarySet& found, double sample_rate_hz,
                          std::size_t tolerance_samples) {
  require_same_length(gt, found);
  EvaluationReport r;
  r.boundary_count = static_cast<double>(found.size());
  const auto delays = discovery_delay(gt, found, sample_rate_hz);
  if (!delays.empty()) {
    double sum = 0.0;
    for (double d : delays) sum += d;
    r.mean_delay_s = sum / static_cast<double>(delays.size());
  }
  r.sensitivity = boundary_sensitivity(gt, found);
  r.similarity = boundary_similarity(gt, found, tolerance_samples);
  return r;
}

EnsembleReport aggregate(const std::vector<EvaluationReport>& reports) {
  EnsembleReport out;
  out.trials = reports.size();
  if (reports.empty()) return out;
  const double n = static_cast<double>(reports.size());
  for (const auto& r : reports) {
    out.mean.boundary_count += r.boundary_count;
    out.mean.mean_delay_s += r.mean_delay_s;
    out.mean.sensitivity += r.sensitivity;
    out.mean.similarity += r.similarity;
  }
  out.mean.boundary_count /= n;
  out.mean.mean_delay_s /= n;
  out.mean.sensitivity /= n;
  out.mean.similarity /= n;
  auto sq = [](double v) { return v * v; };
  for (const auto& r : reports) {
    out.variance.boundary_count += sq(r.boundary_count - out.mean.boundary_count);
    out.variance.mean_delay_s += sq(r.mean_delay_s - out.mean.mean_delay_s);
    out.variance.sensitivity += sq(r.sensitivity - out.mean.sensitivity);
    out.variance.similarity += sq(r.similarity - out.mean.similarity);
  }
  out.variance.boundary_count /= n;
  out.variance.mean_delay_s /= n;
  out.variance.sensitivity /= n;
  out.variance.similarity /= n;
  return out;
}

}  // namespace ctxseg
