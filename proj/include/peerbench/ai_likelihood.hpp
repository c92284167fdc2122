#pragma once

#include <optional>
#include <string>
#include <vector>

#include "peerbench/data_model.hpp"
#include "peerbench/judge_gateway.hpp"

namespace peerbench::ai {

inline constexpr double kAiThreshold = 0.9015;

// ln(observer) / ln(baseline). Raw output typically lands in [0.7, 1.3]
// for natural text.
double binoculars_score(const judge::PerplexityPair& ppl);

struct FieldScore {
    std::string field;
    std::optional<double> score;  // nullopt when the field was skipped
    std::string skip_reason;
};

struct ReviewBsResult {
    std::optional<double> bs;  // mean over scorable fields
    std::vector<FieldScore> fields;
};

// Scores summary/strengths/weaknesses/questions, skipping fields below the
// gateway's minimum token count, and averages the rest.
ReviewBsResult review_bs(const Review& review, judge::Gateway& gateway);

// BS strictly below the threshold classifies as machine-generated;
// equality counts as human.
bool classified_ai(double bs, double threshold = kAiThreshold);

// Fraction of defined BS values below the threshold; nullopt when none are
// defined.
std::optional<double> ai_rate(const std::vector<std::optional<double>>& bs_values,
                              double threshold = kAiThreshold);

}  // namespace peerbench::ai
