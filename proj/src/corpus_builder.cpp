#include "peerbench/corpus_builder.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

#include "peerbench/errors.hpp"

namespace peerbench::corpus {

void RatingMap::add(Venue venue, int year, std::string raw, int target) {
    if (!is_valid_rating(target)) {
        throw RangeError("rating map target " + std::to_string(target) +
                         " not in {1, 3, 5, 6, 8, 10}");
    }
    entries[{venue, year, std::move(raw)}] = target;
}

bool RatingMap::contains(Venue venue, int year, const std::string& raw) const {
    return entries.count({venue, year, raw}) != 0;
}

RatingMap default_rating_map() {
    RatingMap map;
    // ICLR already uses the target scale.
    for (int year = 2013; year <= 2026; ++year) {
        for (int r : kRatingScale) {
            map.add(Venue::ICLR, year, std::to_string(r), r);
        }
    }
    // NeurIPS 1..10 numeric scale (2019 onward): reconstruction, collapses
    // to the nearest target value. 2021+ uses a 6-level labeled scale whose
    // numeric anchors coincide with the targets.
    const std::vector<std::pair<std::string, int>> neurips_numeric = {
        {"1", 1},  {"2", 1},  {"3", 3},  {"4", 3},  {"5", 5},
        {"6", 6},  {"7", 6},  {"8", 8},  {"9", 10}, {"10", 10},
    };
    const std::vector<std::pair<std::string, int>> neurips_labels = {
        {"strong reject", 1},
        {"reject", 3},
        {"borderline reject", 5},
        {"borderline accept", 6},
        {"weak accept", 6},
        {"accept", 8},
        {"strong accept", 10},
    };
    for (int year = 2019; year <= 2026; ++year) {
        for (const auto& [raw, target] : neurips_numeric) {
            map.add(Venue::NeurIPS, year, raw, target);
        }
        for (const auto& [raw, target] : neurips_labels) {
            map.add(Venue::NeurIPS, year, raw, target);
        }
    }
    return map;
}

void FilterPolicy::validate() const {
    if (min_confidence < 1 || min_confidence > 5) {
        throw RangeError("min_confidence = " + std::to_string(min_confidence) +
                         " outside [1, 5]");
    }
    if (max_variance < 0.0) {
        throw RangeError("max_variance is negative");
    }
    if (allowed_review_counts.empty()) {
        throw RangeError("allowed_review_counts is empty");
    }
}

namespace {

std::string normalize_raw_label(const std::string& raw) {
    std::string out;
    bool pending_space = false;
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

}  // namespace

int standardize_rating(const std::string& raw, Venue venue, int year, const RatingMap& map) {
    const std::string key = normalize_raw_label(raw);
    auto it = map.entries.find({venue, year, key});
    if (it == map.entries.end()) {
        throw MappingError("no rating map entry for (" + std::string(to_string(venue)) + ", " +
                           std::to_string(year) + ", \"" + raw + "\")");
    }
    return it->second;
}

int standardize_rating(int raw, Venue venue, int year, const RatingMap& map) {
    return standardize_rating(std::to_string(raw), venue, year, map);
}

double population_variance(const std::vector<int>& ratings) {
    if (ratings.empty()) return 0.0;
    double mean = 0.0;
    for (int r : ratings) mean += r;
    mean /= static_cast<double>(ratings.size());
    double acc = 0.0;
    for (int r : ratings) {
        const double d = r - mean;
        acc += d * d;
    }
    return acc / static_cast<double>(ratings.size());
}

std::vector<PaperRecord> filter_corpus(const std::vector<PaperRecord>& records,
                                       const FilterPolicy& policy,
                                       std::vector<DropRecord>* drops) {
    policy.validate();
    std::vector<PaperRecord> out;
    out.reserve(records.size());
    for (const auto& record : records) {
        PaperRecord kept = record;
        kept.human_reviews.clear();
        int dropped_reviews = 0;
        for (const auto& review : record.human_reviews) {
            if (review.confidence >= policy.min_confidence) {
                kept.human_reviews.push_back(review);
            } else {
                ++dropped_reviews;
            }
        }
        if (drops && dropped_reviews > 0) {
            drops->push_back({record.paper_id, "confidence",
                              std::to_string(dropped_reviews) + " review(s) below confidence " +
                                  std::to_string(policy.min_confidence)});
        }
        const auto count = static_cast<int>(kept.human_reviews.size());
        if (policy.allowed_review_counts.count(count) == 0) {
            if (drops) {
                drops->push_back({record.paper_id, "count",
                                  "review count " + std::to_string(count) + " not allowed"});
            }
            continue;
        }
        std::vector<int> ratings;
        ratings.reserve(kept.human_reviews.size());
        for (const auto& review : kept.human_reviews) ratings.push_back(review.rating);
        const double variance = population_variance(ratings);
        if (variance > policy.max_variance) {
            if (drops) {
                std::ostringstream reason;
                reason << "rating variance " << variance << " exceeds " << policy.max_variance;
                drops->push_back({record.paper_id, "variance", reason.str()});
            }
            continue;
        }
        out.push_back(std::move(kept));
    }
    return out;
}

namespace {

// Heading aliases excluded from paper bodies, compared case-insensitively
// after trimming trailing punctuation.
const std::vector<std::string>& excluded_headings() {
    static const std::vector<std::string> list = {
        "related work", "related works", "appendix", "appendices",
        "acknowledgment", "acknowledgments", "acknowledgement", "acknowledgements",
        "references",
    };
    return list;
}

struct HeadingLine {
    int level = 0;           // number of '#' characters
    std::string title;       // text after the hashes, trimmed
};

std::optional<HeadingLine> parse_heading(std::string_view line) {
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t hashes = 0;
    while (i + hashes < line.size() && line[i + hashes] == '#') ++hashes;
    if (hashes == 0 || hashes > 6) return std::nullopt;
    std::size_t j = i + hashes;
    if (j < line.size() && line[j] != ' ' && line[j] != '\t') return std::nullopt;
    while (j < line.size() && (line[j] == ' ' || line[j] == '\t')) ++j;
    std::string title(line.substr(j));
    while (!title.empty() &&
           (title.back() == ' ' || title.back() == '\t' || title.back() == '\r')) {
        title.pop_back();
    }
    return HeadingLine{static_cast<int>(hashes), title};
}

bool is_excluded_title(const std::string& title) {
    std::string folded;
    folded.reserve(title.size());
    for (char c : title) {
        folded.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    // Strip a leading section number ("2. Related Work", "A Appendix").
    static const std::regex number_prefix(R"(^\s*([0-9]+(\.[0-9]+)*\.?|[a-z]\.?)\s+)");
    folded = std::regex_replace(folded, number_prefix, "");
    while (!folded.empty() && (folded.back() == ':' || folded.back() == '.' ||
                               folded.back() == ' ')) {
        folded.pop_back();
    }
    const auto& list = excluded_headings();
    return std::find(list.begin(), list.end(), folded) != list.end();
}

}  // namespace

PreprocessResult preprocess_paper(std::string_view markdown) {
    PreprocessResult result;
    std::vector<std::string_view> lines;
    {
        std::size_t start = 0;
        while (start <= markdown.size()) {
            std::size_t nl = markdown.find('\n', start);
            if (nl == std::string_view::npos) {
                lines.push_back(markdown.substr(start));
                break;
            }
            lines.push_back(markdown.substr(start, nl - start));
            start = nl + 1;
        }
    }

    bool any_heading = false;
    bool skipping = false;
    int skip_level = 0;
    std::string out;
    out.reserve(markdown.size());
    for (std::size_t idx = 0; idx < lines.size(); ++idx) {
        const auto line = lines[idx];
        const auto heading = parse_heading(line);
        if (heading) {
            any_heading = true;
            if (skipping && heading->level <= skip_level) {
                skipping = false;
            }
            if (!skipping && is_excluded_title(heading->title)) {
                skipping = true;
                skip_level = heading->level;
            }
        }
        if (!skipping) {
            out.append(line);
            if (idx + 1 < lines.size()) out.push_back('\n');
        }
    }
    if (!any_heading) {
        result.body = std::string(markdown);
        result.no_headings_warning = true;
        return result;
    }
    result.body = std::move(out);
    return result;
}

Decision normalize_decision(std::string_view raw) {
    // Strip HTML tags, then classify case-insensitively.
    static const std::regex tag(R"(<[^>]*>)");
    std::string text = std::regex_replace(std::string(raw), tag, " ");
    std::string folded;
    folded.reserve(text.size());
    for (char c : text) {
        folded.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    static const std::regex reject_re(R"((desk[\s\-]*reject|\breject))");
    static const std::regex accept_re(R"(\baccept)");
    if (std::regex_search(folded, reject_re)) return Decision::Reject;
    if (std::regex_search(folded, accept_re)) return Decision::Accept;
    return Decision::Unknown;
}

}  // namespace peerbench::corpus
