#include "peerbench/alignment_metrics.hpp"

#include <algorithm>

#include "peerbench/errors.hpp"

namespace peerbench::align {

std::optional<double> precision(const MatchMatrix& pooled) {
    validate_matrix(pooled);
    const std::size_t rows = pooled.rows();
    if (rows == 0) return std::nullopt;
    double matched = 0.0;
    for (const auto& row : pooled.entries) {
        if (std::find(row.begin(), row.end(), std::uint8_t{1}) != row.end()) {
            matched += 1.0;
        }
    }
    return matched / static_cast<double>(rows);
}

std::optional<double> max_recall(const std::vector<MatchMatrix>& per_reviewer) {
    std::optional<double> best;
    for (const auto& matrix : per_reviewer) {
        validate_matrix(matrix);
        const std::size_t cols = matrix.cols();
        if (cols == 0) continue;  // reviewer contributed no points
        double covered = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
            for (std::size_t i = 0; i < matrix.rows(); ++i) {
                if (matrix.entries[i][j] == 1) {
                    covered += 1.0;
                    break;
                }
            }
        }
        const double coverage = covered / static_cast<double>(cols);
        if (!best || coverage > *best) best = coverage;
    }
    return best;
}

double f1(double p, double r) {
    if (p < 0.0 || p > 1.0 || r < 0.0 || r > 1.0) {
        throw RangeError("f1 inputs must lie in [0, 1]");
    }
    const double denom = p + r;
    if (denom == 0.0) return 0.0;
    return 2.0 * p * r / denom;
}

}  // namespace peerbench::align
