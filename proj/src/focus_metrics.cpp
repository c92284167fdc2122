#include "peerbench/focus_metrics.hpp"

#include <cmath>

#include "peerbench/errors.hpp"

namespace peerbench::focus {

void CategoryDistribution::validate() const {
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw RangeError("distribution has a negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw RangeError("distribution does not sum to 1");
    }
    if (count_basis < 1) {
        throw RangeError("distribution count basis must be >= 1");
    }
}

CategoryDistribution category_distribution(const std::vector<AtomicPoint>& points) {
    if (points.empty()) {
        throw EmptyDocumentError("no points to form a distribution");
    }
    std::array<std::size_t, kCategoryCount> counts{};
    for (const auto& p : points) {
        counts[static_cast<std::size_t>(p.category)] += 1;
    }
    return distribution_from_counts(counts);
}

CategoryDistribution distribution_from_counts(
    const std::array<std::size_t, kCategoryCount>& counts) {
    std::size_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) {
        throw EmptyDocumentError("no points to form a distribution");
    }
    CategoryDistribution d;
    d.count_basis = total;
    for (std::size_t i = 0; i < kCategoryCount; ++i) {
        d.probs[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    }
    return d;
}

double kl_divergence(const CategoryDistribution& d_h, const CategoryDistribution& d_ai,
                     double epsilon) {
    d_h.validate();
    d_ai.validate();
    // Smooth in count space: prob * basis + epsilon per bin, renormalized.
    auto smooth = [epsilon](const CategoryDistribution& d) {
        std::array<double, kCategoryCount> out{};
        double total = 0.0;
        for (std::size_t i = 0; i < kCategoryCount; ++i) {
            out[i] = d.probs[i] * static_cast<double>(d.count_basis) + epsilon;
            total += out[i];
        }
        for (double& p : out) p /= total;
        return out;
    };
    const auto p = smooth(d_h);
    const auto q = smooth(d_ai);
    double kl = 0.0;
    for (std::size_t i = 0; i < kCategoryCount; ++i) {
        if (p[i] > 0.0) {
            kl += p[i] * std::log(p[i] / q[i]);
        }
    }
    // Rounding can leave a tiny negative residue when the inputs are equal.
    return kl < 0.0 && kl > -1e-12 ? 0.0 : kl;
}

}  // namespace peerbench::focus
