#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "peerbench/ai_likelihood.hpp"
#include "peerbench/data_model.hpp"
#include "peerbench/io.hpp"
#include "peerbench/judge_gateway.hpp"
#include "peerbench/question_eval.hpp"

namespace peerbench::pipeline {

struct EvaluateOptions {
    std::size_t window = 512;
    std::size_t overlap = 128;
    std::size_t coverage_k = 5;
    std::size_t retrieval_k = 5;
    bool qs_exclude_other = true;
    int parallelism = 1;
};

// Full audit for one (paper, generated review) pair.
struct PaperEvaluation {
    std::string paper_id;
    std::optional<double> coverage;

    struct FieldEval {
        std::vector<AtomicPoint> ai_points;
        std::vector<std::vector<AtomicPoint>> human_points;  // per reviewer
        std::vector<AtomicPoint> human_points_pooled;
        std::optional<double> precision;
        std::optional<double> recall;
        std::optional<double> f1;
    };
    FieldEval strength;
    FieldEval weakness;

    std::vector<AtomicPoint> ai_question_points;
    std::vector<AtomicPoint> human_question_points;
    std::vector<questions::ScoredQuestion> scored_questions;
    std::optional<double> question_score;

    ai::ReviewBsResult bs;

    int predicted_rating = 0;
    double reference_rating = 0.0;
    double reference_soundness = 0.0;
    double reference_presentation = 0.0;
    double reference_contribution = 0.0;
    int predicted_soundness = 0;
    int predicted_presentation = 0;
    int predicted_contribution = 0;

    nlohmann::json to_json() const;
};

struct ModelEvaluation {
    Scorecard card;
    std::vector<PaperEvaluation> papers;  // sorted by paper_id
    // 8-bin category counts pooled over the corpus, per source and field.
    std::map<std::string, std::array<std::size_t, kCategoryCount>> category_counts;
};

// Evaluates one model's generated reviews against the corpus. Papers are
// processed in sorted paper_id order; with parallelism > 1 the per-paper
// work fans out to a thread pool while aggregation stays sequential, so
// results are byte-identical at any worker count.
ModelEvaluation evaluate_model(const std::vector<PaperRecord>& corpus,
                               const std::vector<io::GeneratedReview>& reviews,
                               const std::string& model_name, judge::Gateway& gateway,
                               const EvaluateOptions& options);

// Groups reviews by model_name and evaluates each group.
std::vector<ModelEvaluation> evaluate_all(const std::vector<PaperRecord>& corpus,
                                          const std::vector<io::GeneratedReview>& reviews,
                                          judge::Gateway& gateway,
                                          const EvaluateOptions& options);

// Writes scorecard.json, papers/<id>.json, field_scores.csv, and
// distributions.csv under out_dir/<sanitized model name>/.
void write_evaluation(const std::filesystem::path& out_dir, const ModelEvaluation& eval);

std::string sanitize_component(const std::string& name);

}  // namespace peerbench::pipeline
