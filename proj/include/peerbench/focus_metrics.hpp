#pragma once

#include <array>
#include <vector>

#include "peerbench/data_model.hpp"

namespace peerbench::focus {

struct CategoryDistribution {
    std::array<double, kCategoryCount> probs{};
    std::size_t count_basis = 0;

    void validate() const;  // probs >= 0, sum to 1 (1e-9), basis >= 1
};

// Relative frequency per label over all supplied points, pooled across the
// corpus for one source. Throws EmptyDocumentError on an empty list.
CategoryDistribution category_distribution(const std::vector<AtomicPoint>& points);

CategoryDistribution distribution_from_counts(const std::array<std::size_t, kCategoryCount>& counts);

// KL(D_H || D_AI) in nats after additive smoothing: epsilon is added to
// every smoothed count on both sides, then both are renormalized, so zero
// AI bins stay finite. The human distribution is always the first argument.
double kl_divergence(const CategoryDistribution& d_h, const CategoryDistribution& d_ai,
                     double epsilon = 1e-6);

}  // namespace peerbench::focus
