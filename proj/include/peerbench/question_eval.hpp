#pragma once

#include <optional>
#include <string>
#include <vector>

#include "peerbench/chunk_embed.hpp"
#include "peerbench/data_model.hpp"
#include "peerbench/judge_gateway.hpp"

namespace peerbench::questions {

QuestionType classify_question(const AtomicPoint& point, judge::Gateway& gateway);

struct ChunkVerdict {
    std::size_t chunk_index = 0;
    bool has_info = false;
};

struct GroundResult {
    QuestionType type = QuestionType::Other;
    int conf = 0;  // explain-type: context for the question exists
    int cons = 0;  // supplement-type: requested work is absent
    std::vector<ChunkVerdict> verdicts;
};

// Explain: conf = 1 iff ANY top-k chunk answers the question.
// Supplement: cons = 1 iff NO top-k chunk already contains the work.
GroundResult ground_check(const AtomicPoint& point, const chunks::ChunkIndex& index,
                          QuestionType type, judge::Gateway& gateway, std::size_t k = 5);

struct ScoredQuestion {
    AtomicPoint point;
    GroundResult ground;
};

// Runs classify + ground over every question point of one review field.
std::vector<ScoredQuestion> evaluate_questions(const std::vector<AtomicPoint>& points,
                                               const chunks::ChunkIndex& index,
                                               judge::Gateway& gateway, std::size_t k = 5);

// Fraction of scorable points with conf or cons set. When exclude_other is
// true (the default), "other"-type points are left out of the denominator;
// nullopt when nothing is scorable.
std::optional<double> question_score(const std::vector<ScoredQuestion>& questions,
                                     bool exclude_other = true);

}  // namespace peerbench::questions
