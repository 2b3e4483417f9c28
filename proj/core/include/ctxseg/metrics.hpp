#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ctxseg/boundary.hpp"

namespace ctxseg {

/// Per ground-truth boundary g: seconds from g to the first found boundary f
/// with g <= f < next ground-truth boundary (or signal end). Absent when no
/// such f exists, i.e. the boundary was missed.
std::vector<std::optional<double>> boundary_delay(const GroundTruth& gt, const BoundarySet& found,
                                                  double sample_rate_hz);

/// Fraction of ground-truth boundaries with a present delay.
/// Throws std::invalid_argument("sensitivity undefined") for an empty ground truth.
double boundary_sensitivity(const GroundTruth& gt, const BoundarySet& found);

/// Delay used for the mean-delay column: seconds from g to the first found
/// boundary at or after g regardless of later ground truth, or to the signal
/// end if nothing follows. Missed boundaries therefore report delays longer
/// than the context they belonged to.
std::vector<double> discovery_delay(const GroundTruth& gt, const BoundarySet& found,
                                    double sample_rate_hz);

/// Boundary similarity in [0, 1] from a boundary edit distance. Found and
/// ground-truth boundaries are aligned by an optimal order-preserving matching:
/// exact matches are free, a pair d <= tolerance samples apart is a near miss
/// costing d / (tolerance + 1), and every unmatched boundary is a full
/// addition/deletion. Similarity = 1 - cost / (matched pairs + unmatched
/// boundaries); two empty sets score 1.
double boundary_similarity(const BoundarySet& gt, const BoundarySet& found,
                           std::size_t tolerance_samples);

struct EvaluationReport {
  double boundary_count = 0.0;
  double mean_delay_s = 0.0;
  double sensitivity = 0.0;
  double similarity = 0.0;
};

EvaluationReport evaluate(const GroundTruth& gt, const BoundarySet& found, double sample_rate_hz,
                          std::size_t tolerance_samples);

/// Mean and (population) variance of each report field over an ensemble.
struct EnsembleReport {
  std::size_t trials = 0;
  EvaluationReport mean;
  EvaluationReport variance;
};

/// Aggregates in the given order, so the result is reproducible bit for bit.
EnsembleReport aggregate(const std::vector<EvaluationReport>& reports);

}  // namespace ctxseg
