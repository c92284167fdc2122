#include "peerbench/data_model.hpp"

#include <algorithm>
#include <cctype>

#include "peerbench/errors.hpp"

namespace peerbench {

namespace {

std::string fold_label(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == ' ' || c == '_' || c == '-') continue;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

int require_int(const nlohmann::json& raw, const char* key) {
    if (!raw.contains(key)) {
        throw SchemaError(std::string("missing field: ") + key);
    }
    const auto& v = raw.at(key);
    if (!v.is_number_integer()) {
        throw SchemaError(std::string("field is not an integer: ") + key);
    }
    return v.get<int>();
}

std::string require_string(const nlohmann::json& raw, const char* key) {
    if (!raw.contains(key)) {
        throw SchemaError(std::string("missing field: ") + key);
    }
    const auto& v = raw.at(key);
    if (!v.is_string()) {
        throw SchemaError(std::string("field is not a string: ") + key);
    }
    return v.get<std::string>();
}

void check_range(const char* key, int value, int lo, int hi) {
    if (value < lo || value > hi) {
        throw RangeError(std::string(key) + " = " + std::to_string(value) +
                         " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

}  // namespace

bool is_valid_rating(int rating) {
    return std::find(kRatingScale.begin(), kRatingScale.end(), rating) != kRatingScale.end();
}

std::string_view to_string(Venue v) {
    switch (v) {
        case Venue::ICLR: return "ICLR";
        case Venue::NeurIPS: return "NeurIPS";
    }
    return "ICLR";
}

std::string_view to_string(Decision d) {
    switch (d) {
        case Decision::Accept: return "accept";
        case Decision::Reject: return "reject";
        case Decision::Unknown: return "unknown";
    }
    return "unknown";
}

std::string_view to_string(ReviewOrigin o) {
    return o == ReviewOrigin::Human ? "human" : "generated";
}

std::string_view to_string(FieldKind k) {
    switch (k) {
        case FieldKind::Strength: return "strength";
        case FieldKind::Weakness: return "weakness";
        case FieldKind::Question: return "question";
    }
    return "strength";
}

std::string_view to_string(QuestionType t) {
    switch (t) {
        case QuestionType::Explain: return "explain";
        case QuestionType::Supplement: return "supplement";
        case QuestionType::Other: return "other";
    }
    return "other";
}

std::string_view to_string(Category c) {
    switch (c) {
        case Category::Novelty: return "Novelty";
        case Category::Soundness: return "Soundness";
        case Category::Experiments: return "Experiments";
        case Category::Clarity: return "Clarity";
        case Category::Significance: return "Significance";
        case Category::Reproducibility: return "Reproducibility";
        case Category::RelatedWork: return "Related Work";
        case Category::Other: return "Other";
    }
    return "Other";
}

Venue venue_from_string(std::string_view s) {
    const std::string f = fold_label(s);
    if (f == "iclr") return Venue::ICLR;
    if (f == "neurips") return Venue::NeurIPS;
    throw SchemaError("unknown venue: " + std::string(s));
}

Decision decision_from_string(std::string_view s) {
    const std::string f = fold_label(s);
    if (f == "accept") return Decision::Accept;
    if (f == "reject") return Decision::Reject;
    if (f == "unknown") return Decision::Unknown;
    throw SchemaError("unknown decision: " + std::string(s));
}

ReviewOrigin origin_from_string(std::string_view s) {
    const std::string f = fold_label(s);
    if (f == "human") return ReviewOrigin::Human;
    if (f == "generated") return ReviewOrigin::Generated;
    throw SchemaError("unknown origin: " + std::string(s));
}

FieldKind field_kind_from_string(std::string_view s) {
    const std::string f = fold_label(s);
    if (f == "strength" || f == "strengths") return FieldKind::Strength;
    if (f == "weakness" || f == "weaknesses") return FieldKind::Weakness;
    if (f == "question" || f == "questions") return FieldKind::Question;
    throw SchemaError("unknown field kind: " + std::string(s));
}

QuestionType question_type_from_string(std::string_view s) {
    const std::string f = fold_label(s);
    if (f == "explain") return QuestionType::Explain;
    if (f == "supplement") return QuestionType::Supplement;
    if (f == "other") return QuestionType::Other;
    throw TaxonomyError("unknown question type: " + std::string(s));
}

Category category_from_string(std::string_view s) {
    const std::string f = fold_label(s);
    if (f == "novelty") return Category::Novelty;
    if (f == "soundness") return Category::Soundness;
    if (f == "experiments") return Category::Experiments;
    if (f == "clarity") return Category::Clarity;
    if (f == "significance") return Category::Significance;
    if (f == "reproducibility") return Category::Reproducibility;
    if (f == "relatedwork" || f == "relatedworks") return Category::RelatedWork;
    if (f == "other" || f == "others") return Category::Other;
    throw TaxonomyError("unknown category label: " + std::string(s));
}

Review validate_review(const nlohmann::json& raw, ReviewOrigin origin) {
    if (!raw.is_object()) {
        throw SchemaError("review is not a JSON object");
    }
    Review r;
    r.summary = require_string(raw, "summary");
    r.strengths = require_string(raw, "strengths");
    r.weaknesses = require_string(raw, "weaknesses");
    r.questions = require_string(raw, "questions");
    r.soundness = require_int(raw, "soundness");
    r.presentation = require_int(raw, "presentation");
    r.contribution = require_int(raw, "contribution");
    r.rating = require_int(raw, "rating");
    r.confidence = require_int(raw, "confidence");
    r.origin = origin;

    check_range("soundness", r.soundness, 1, 4);
    check_range("presentation", r.presentation, 1, 4);
    check_range("contribution", r.contribution, 1, 4);
    check_range("confidence", r.confidence, 1, 5);
    if (!is_valid_rating(r.rating)) {
        throw RangeError("rating = " + std::to_string(r.rating) +
                         " not in {1, 3, 5, 6, 8, 10}");
    }
    if (origin == ReviewOrigin::Generated) {
        // Generated reviews are under our control; all four text fields must
        // be filled. Human legacy data may carry empty fields.
        for (const auto& [key, text] :
             {std::pair<const char*, const std::string&>{"summary", r.summary},
              {"strengths", r.strengths},
              {"weaknesses", r.weaknesses},
              {"questions", r.questions}}) {
            if (text.empty()) {
                throw SchemaError(std::string("empty text field in generated review: ") + key);
            }
        }
    }
    return r;
}

nlohmann::json review_to_json(const Review& review) {
    return nlohmann::json{
        {"summary", review.summary},
        {"strengths", review.strengths},
        {"weaknesses", review.weaknesses},
        {"questions", review.questions},
        {"soundness", review.soundness},
        {"presentation", review.presentation},
        {"contribution", review.contribution},
        {"rating", review.rating},
        {"confidence", review.confidence},
    };
}

void validate_point(const AtomicPoint& point) {
    if (point.text.empty()) {
        throw SchemaError("atomic point has empty text");
    }
    const bool is_question = point.field_kind == FieldKind::Question;
    if (is_question && !point.question_type.has_value()) {
        throw SchemaError("question point missing question_type");
    }
    if (!is_question && point.question_type.has_value()) {
        throw SchemaError("non-question point carries question_type");
    }
}

void validate_matrix(const MatchMatrix& m) {
    if (m.entries.size() != m.rows()) {
        throw SchemaError("match matrix row count != |A|");
    }
    for (const auto& row : m.entries) {
        if (row.size() != m.cols()) {
            throw SchemaError("match matrix column count != |H|");
        }
        for (auto e : row) {
            if (e != 0 && e != 1) {
                throw RangeError("match matrix entry not in {0, 1}");
            }
        }
    }
}

namespace {

void check_unit(const char* name, const std::optional<double>& v) {
    if (v && (*v < 0.0 || *v > 1.0)) {
        throw RangeError(std::string(name) + " = " + std::to_string(*v) + " outside [0, 1]");
    }
}

void check_nonneg(const char* name, const std::optional<double>& v) {
    if (v && *v < 0.0) {
        throw RangeError(std::string(name) + " = " + std::to_string(*v) + " is negative");
    }
}

void put(nlohmann::json& j, const char* key, const std::optional<double>& v) {
    if (v) {
        j[key] = *v;
    } else {
        j[key] = nullptr;
    }
}

std::optional<double> take(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

}  // namespace

void validate_scorecard(const Scorecard& card, double coverage_k) {
    for (const auto* block : {&card.strength, &card.weakness}) {
        check_unit("recall", block->recall);
        check_unit("precision", block->precision);
        check_unit("f1", block->f1);
        check_nonneg("kl", block->kl);
    }
    check_unit("question_qs", card.question_qs);
    check_nonneg("question_kl", card.question_kl);
    check_unit("ai_rate", card.ai_rate);
    check_nonneg("rating_mae", card.rating_mae);
    check_nonneg("soundness_mae", card.soundness_mae);
    check_nonneg("presentation_mae", card.presentation_mae);
    check_nonneg("contribution_mae", card.contribution_mae);
    if (card.summary_coverage &&
        (*card.summary_coverage < -coverage_k || *card.summary_coverage > coverage_k)) {
        throw RangeError("summary_coverage outside [-K, K]");
    }
}

nlohmann::json scorecard_to_json(const Scorecard& card) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["model_name"] = card.model_name;
    j["group"] = card.group;
    put(j, "summary_coverage", card.summary_coverage);
    for (const auto& [key, block] :
         {std::pair<const char*, const MetricBlock&>{"strength", card.strength},
          {"weakness", card.weakness}}) {
        nlohmann::json b;
        put(b, "recall", block.recall);
        put(b, "precision", block.precision);
        put(b, "f1", block.f1);
        put(b, "kl", block.kl);
        j[key] = b;
    }
    put(j, "question_qs", card.question_qs);
    put(j, "question_kl", card.question_kl);
    put(j, "ai_rate", card.ai_rate);
    put(j, "ai_bs", card.ai_bs);
    put(j, "rating_mae", card.rating_mae);
    put(j, "soundness_mae", card.soundness_mae);
    put(j, "presentation_mae", card.presentation_mae);
    put(j, "contribution_mae", card.contribution_mae);
    return j;
}

Scorecard scorecard_from_json(const nlohmann::json& j) {
    Scorecard card;
    card.model_name = j.at("model_name").get<std::string>();
    card.group = j.value("group", std::string());
    card.summary_coverage = take(j, "summary_coverage");
    for (const auto& [key, block] :
         {std::pair<const char*, MetricBlock*>{"strength", &card.strength},
          {"weakness", &card.weakness}}) {
        if (j.contains(key)) {
            const auto& b = j.at(key);
            block->recall = take(b, "recall");
            block->precision = take(b, "precision");
            block->f1 = take(b, "f1");
            block->kl = take(b, "kl");
        }
    }
    card.question_qs = take(j, "question_qs");
    card.question_kl = take(j, "question_kl");
    card.ai_rate = take(j, "ai_rate");
    card.ai_bs = take(j, "ai_bs");
    card.rating_mae = take(j, "rating_mae");
    card.soundness_mae = take(j, "soundness_mae");
    card.presentation_mae = take(j, "presentation_mae");
    card.contribution_mae = take(j, "contribution_mae");
    return card;
}

}  // namespace peerbench
