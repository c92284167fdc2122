#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "peerbench/data_model.hpp"

namespace peerbench::corpus {

// Keyed by (venue, year, raw label). Numeric raw ratings are looked up by
// their decimal rendering ("6", "4.5"), so one table serves both shapes.
struct RatingMap {
    std::map<std::tuple<Venue, int, std::string>, int> entries;

    void add(Venue venue, int year, std::string raw, int target);
    bool contains(Venue venue, int year, const std::string& raw) const;
};

// Shipped defaults. ICLR years map identity on {1,3,5,6,8,10}; NeurIPS
// tables are reconstructions (the source scales are 1..10 or labeled
// 6-level scales depending on year) and are marked as such in README.
RatingMap default_rating_map();

struct FilterPolicy {
    int min_confidence = 4;
    std::set<int> allowed_review_counts = {3, 4, 5};
    double max_variance = 1.5;

    void validate() const;  // throws RangeError when out of bounds
};

// One structured record per dropped review or paper.
struct DropRecord {
    std::string paper_id;
    std::string stage;   // "confidence", "count", "variance"
    std::string reason;
};

int standardize_rating(const std::string& raw, Venue venue, int year, const RatingMap& map);
int standardize_rating(int raw, Venue venue, int year, const RatingMap& map);

std::vector<PaperRecord> filter_corpus(const std::vector<PaperRecord>& records,
                                       const FilterPolicy& policy,
                                       std::vector<DropRecord>* drops = nullptr);

// Mean of (x - mean)^2; the review set is the whole population for a paper.
double population_variance(const std::vector<int>& ratings);

struct PreprocessResult {
    std::string body;
    bool no_headings_warning = false;
};

// Removes Related Work / Appendix / Acknowledgments / References sections
// (common spelling variants, any heading level) together with their
// subsections; everything else keeps its original order and bytes.
PreprocessResult preprocess_paper(std::string_view markdown);

Decision normalize_decision(std::string_view raw);

}  // namespace peerbench::corpus
