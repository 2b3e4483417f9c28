#include "ctxseg/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>

namespace ctxseg {

double student_t_cdf(double t, double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("student_t_cdf: dof must be positive");
  const boost::math::students_t dist(dof);
  return boost::math::cdf(dist, t);
}

double paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("invalid pairing");
  const std::size_t n = a.size();

  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = b[i] - a[i];

  const bool all_zero = std::all_of(diff.begin(), diff.end(), [](double d) { return d == 0.0; });
  if (all_zero) return 1.0;

  double mean = 0.0;
  for (double d : diff) mean += d;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double d : diff) ss += (d - mean) * (d - mean);
  if (ss == 0.0) return 0.0;

  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const double t = mean / (sd / std::sqrt(static_cast<double>(n)));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return std::clamp(p, 0.0, 1.0);
}

namespace {

// Table 2 of Scholz & Stephens (1987): critical values of the standardized
// statistic are b0 + b1/sqrt(m) + b2/m at the listed significance levels.
constexpr std::array<double, 7> kLevels{0.25, 0.1, 0.05, 0.025, 0.01, 0.005, 0.001};
constexpr std::array<double, 7> kB0{0.675, 1.281, 1.645, 1.96, 2.326, 2.573, 3.085};
constexpr std::array<double, 7> kB1{-0.245, 0.25, 0.678, 1.149, 1.822, 2.364, 3.615};
constexpr std::array<double, 7> kB2{-0.105, -0.305, -0.362, -0.391, -0.396, -0.345, -0.154};

struct CriticalFit {
  std::array<double, 7> critical{};
  Eigen::Vector3d coeffs;  // log(level) ~ c0 + c1 x + c2 x^2
};

CriticalFit fit_critical_values(double m) {
  CriticalFit fit;
  Eigen::Matrix<double, 7, 3> design;
  Eigen::Matrix<double, 7, 1> target;
  for (std::size_t i = 0; i < kLevels.size(); ++i) {
    const double x = kB0[i] + kB1[i] / std::sqrt(m) + kB2[i] / m;
    fit.critical[i] = x;
    design(static_cast<Eigen::Index>(i), 0) = 1.0;
    design(static_cast<Eigen::Index>(i), 1) = x;
    design(static_cast<Eigen::Index>(i), 2) = x * x;
    target(static_cast<Eigen::Index>(i)) = std::log(kLevels[i]);
  }
  fit.coeffs = design.colPivHouseholderQr().solve(target);
  return fit;
}

const CriticalFit& two_sample_fit() {
  static const CriticalFit fit = fit_critical_values(1.0);
  return fit;
}

}  // namespace

namespace {

// Midrank A2akN for two samples; `pooled` is sorted and `distinct` holds its
// unique values.
double midrank_statistic(const std::array<std::vector<double>, 2>& sorted,
                         const std::vector<double>& pooled, const std::vector<double>& distinct) {
  const double n_total = static_cast<double>(pooled.size());
  double a2 = 0.0;
  for (const auto& s : sorted) {
    const double n_i = static_cast<double>(s.size());
    double inner_sum = 0.0;
    for (double z : distinct) {
      const auto lo = std::lower_bound(pooled.begin(), pooled.end(), z);
      const auto hi = std::upper_bound(lo, pooled.end(), z);
      const double l_j = static_cast<double>(hi - lo);
      const double b_j = static_cast<double>(lo - pooled.begin()) + l_j / 2.0;

      const auto s_lo = std::lower_bound(s.begin(), s.end(), z);
      const auto s_hi = std::upper_bound(s_lo, s.end(), z);
      const double f_ij = static_cast<double>(s_hi - s_lo);
      const double m_ij = static_cast<double>(s_hi - s.begin()) - f_ij / 2.0;

      const double num = n_total * m_ij - b_j * n_i;
      const double den = b_j * (n_total - b_j) - n_total * l_j / 4.0;
      inner_sum += l_j / n_total * num * num / den;
    }
    a2 += inner_sum / n_i;
  }
  return a2 * (n_total - 1.0) / n_total;
}

double binomial(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

// Share of all relabelings of the pooled values into groups of the original
// sizes whose statistic is at least `observed`.
double permutation_p(std::span<const double> a, std::span<const double> b,
                     const std::vector<double>& pooled, const std::vector<double>& distinct,
                     double observed) {
  std::vector<double> values(a.begin(), a.end());
  values.insert(values.end(), b.begin(), b.end());
  const std::size_t n = values.size();
  std::vector<char> in_first(n, 0);
  std::fill(in_first.begin(), in_first.begin() + static_cast<std::ptrdiff_t>(a.size()), 1);
  std::sort(in_first.begin(), in_first.end());

  const double tol = 1e-12 * std::max(1.0, std::abs(observed));
  std::size_t total = 0;
  std::size_t extreme = 0;
  std::array<std::vector<double>, 2> groups;
  do {
    groups[0].clear();
    groups[1].clear();
    for (std::size_t i = 0; i < n; ++i) groups[in_first[i] ? 0 : 1].push_back(values[i]);
    for (auto& g : groups) std::sort(g.begin(), g.end());
    ++total;
    if (midrank_statistic(groups, pooled, distinct) >= observed - tol) ++extreme;
  } while (std::next_permutation(in_first.begin(), in_first.end()));
  return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace

AndersonDarlingResult anderson_darling_2sample(std::span<const double> a,
                                               std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty input");
  if (a.size() + b.size() < 4) throw std::invalid_argument("anderson_darling_2sample: need at least 4 observations");
  std::array<std::vector<double>, 2> sorted{std::vector<double>(a.begin(), a.end()),
                                            std::vector<double>(b.begin(), b.end())};
  for (auto& s : sorted) std::sort(s.begin(), s.end());

  std::vector<double> pooled;
  pooled.reserve(a.size() + b.size());
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::sort(pooled.begin(), pooled.end());
  const double n_total = static_cast<double>(pooled.size());

  std::vector<double> distinct = pooled;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  AndersonDarlingResult result;
  if (distinct.size() == 1) return result;

  const double a2 = midrank_statistic(sorted, pooled, distinct);
  result.statistic = a2;

  // Variance of A2akN under H0 (Scholz & Stephens eq. 4), k = 2 samples.
  const double k = 2.0;
  const double big_h = 1.0 / static_cast<double>(a.size()) + 1.0 / static_cast<double>(b.size());
  const std::size_t n = pooled.size();
  double h = 0.0;
  for (std::size_t i = 1; i < n; ++i) h += 1.0 / static_cast<double>(i);
  double g = 0.0;
  {
    // g = sum_{i=1}^{N-2} sum_{j=i+1}^{N-1} 1 / ((N - i) j)
    double tail = 0.0;  // running sum of 1/(N-i) for i = N-2 down
    for (std::size_t j = 2; j < n; ++j) {
      tail += 1.0 / static_cast<double>(n - j + 1);
      g += tail / static_cast<double>(j);
    }
  }
  const double ca = (4 * g - 6) * (k - 1) + (10 - 6 * g) * big_h;
  const double cb = (2 * g - 4) * k * k + 8 * h * k + (2 * g - 14 * h - 4) * big_h - 8 * h + 4 * g - 6;
  const double cc = (6 * h + 2 * g - 2) * k * k + (4 * h - 4 * g + 6) * k + (2 * h - 6) * big_h + 4 * h;
  const double cd = (2 * h + 6) * k * k - 4 * h * k;
  const double nn = n_total;
  const double sigma_sq = (ca * nn * nn * nn + cb * nn * nn + cc * nn + cd) /
                          ((nn - 1.0) * (nn - 2.0) * (nn - 3.0));
  const double m = k - 1.0;
  result.standardized = (a2 - m) / std::sqrt(sigma_sq);

  if (binomial(n, a.size()) <= static_cast<double>(kAndersonDarlingExactLimit)) {
    result.exact = true;
    result.p_value = std::clamp(permutation_p(a, b, pooled, distinct, a2), kAndersonDarlingPMin,
                                kAndersonDarlingPMax);
    return result;
  }

  const auto& fit = two_sample_fit();
  const auto [cmin, cmax] = std::minmax_element(fit.critical.begin(), fit.critical.end());
  const double x = result.standardized;
  if (x < *cmin) {
    result.p_value = kAndersonDarlingPMax;
  } else if (x > *cmax) {
    result.p_value = kAndersonDarlingPMin;
  } else {
    const double log_p = fit.coeffs(0) + fit.coeffs(1) * x + fit.coeffs(2) * x * x;
    result.p_value = std::clamp(std::exp(log_p), kAndersonDarlingPMin, kAndersonDarlingPMax);
  }
  return result;
}

}  // namespace ctxseg
