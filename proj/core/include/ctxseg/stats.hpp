#pragma once

#include <cstddef>
#include <span>

namespace ctxseg {

/// CDF of Student's t distribution with `dof` degrees of freedom.
double student_t_cdf(double t, double dof);

/// Two-sided p-value of the paired-samples t statistic (n-1 dof).
///
/// Degenerate inputs follow fixed conventions: if every pairwise difference is
/// exactly zero the result is 1.0; if the differences are all equal but
/// nonzero (zero variance) the result is 0.0.
/// Throws std::invalid_argument("invalid pairing") on length mismatch or n < 2.
double paired_t_test(std::span<const double> a, std::span<const double> b);

struct AndersonDarlingResult {
  double statistic = 0.0;     // midrank A2akN
  double standardized = 0.0;  // (A2akN - (k-1)) / sigma
  double p_value = 0.25;      // clipped to [0.001, 0.25]
  bool exact = false;         // p_value from full enumeration of relabelings
};

inline constexpr double kAndersonDarlingPMin = 0.001;
inline constexpr double kAndersonDarlingPMax = 0.25;
/// Largest number of distinct two-group relabelings enumerated exactly.
inline constexpr std::size_t kAndersonDarlingExactLimit = 1000;

/// Two-sample Anderson-Darling test, midrank (tie-aware) statistic of Scholz &
/// Stephens (1987). When the samples admit at most kAndersonDarlingExactLimit
/// relabelings, the p-value is the exact permutation p-value. Otherwise it
/// comes from the quadratic fit of log(level) against their tabulated critical
/// values. Either way it is clipped to the table range [0.001, 0.25]. A pooled
/// sample with a single distinct value yields p = 0.25.
/// Throws std::invalid_argument("empty input") if either sample is empty, and
/// also when fewer than four observations are given in total.
AndersonDarlingResult anderson_darling_2sample(std::span<const double> a,
                                               std::span<const double> b);

}  // namespace ctxseg
