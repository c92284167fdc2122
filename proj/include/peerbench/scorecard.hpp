#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "peerbench/data_model.hpp"
#include "peerbench/judge_gateway.hpp"

namespace peerbench::score {

// Mean |predicted - reference| over papers; the reference is the mean of
// that paper's standardized human ratings.
double rating_mae(const std::vector<std::pair<int, double>>& pairs);

struct NgramScores {
    double rouge_1 = 0.0;
    double rouge_2 = 0.0;
    double rouge_l = 0.0;
    double bleu_2 = 0.0;
    double bleu_4 = 0.0;
    double bert_score = 0.0;
};

// Baseline text-overlap metrics; multi-reference values are the max over
// references. bert_score is an embedding-similarity F-measure computed via
// the gateway (a labeled replica, not a published implementation).
NgramScores ngram_metrics(const std::string& candidate,
                          const std::vector<std::string>& references,
                          judge::Gateway& gateway);

// Sample Pearson correlation; requires >= 3 pairs and nonzero variance on
// both sides (UndefinedMetricError otherwise).
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

// Leaderboard column keys in display order, paired with the aggregation
// direction used for best-in-group flags.
struct LeaderboardColumn {
    std::string key;
    bool higher_is_better;
};

const std::vector<LeaderboardColumn>& leaderboard_columns();

struct Leaderboard {
    nlohmann::json rows;  // array of {model, group, metrics{...}, best{...}}
    std::string csv;
    std::string text;
};

// Undefined metrics render as "/" and never win a best flag; flags are
// computed within each scorecard's group.
Leaderboard build_leaderboard(const std::vector<Scorecard>& cards);

struct CorrelationRow {
    std::string metric;
    double r = 0.0;
    std::size_t n = 0;
};

// Pearson of each metric column against rating MAE across the selected
// models (one point per model). Columns with fewer than 3 defined pairs or
// degenerate variance are skipped.
std::vector<CorrelationRow> correlation_vs_mae(const std::vector<Scorecard>& cards,
                                               const std::vector<std::string>& model_subset = {});

}  // namespace peerbench::score
