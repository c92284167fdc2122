#pragma once

#include <optional>
#include <vector>

#include "peerbench/data_model.hpp"

namespace peerbench::align {

// Fraction of AI points with at least one match across the pooled human
// points (row-max mean). nullopt when there are no AI points.
std::optional<double> precision(const MatchMatrix& pooled);

// Best per-reviewer coverage: for each reviewer matrix, the column-max mean
// over that reviewer's points; then the max over reviewers. Reviewers with
// zero points are skipped; nullopt when every reviewer is empty.
std::optional<double> max_recall(const std::vector<MatchMatrix>& per_reviewer);

// Harmonic mean; 0 when p + r == 0. Inputs must lie in [0, 1].
double f1(double p, double r);

}  // namespace peerbench::align
