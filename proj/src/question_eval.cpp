#include "peerbench/question_eval.hpp"

#include "peerbench/errors.hpp"

namespace peerbench::questions {

QuestionType classify_question(const AtomicPoint& point, judge::Gateway& gateway) {
    if (point.field_kind != FieldKind::Question) {
        throw PreconditionError("classify_question requires a question point");
    }
    if (point.text.empty()) {
        throw PreconditionError("question text is empty");
    }
    judge::JudgeRequest request;
    request.template_id = judge::TemplateId::QuestionType;
    request.bindings = {{"question", point.text}};
    const auto response = gateway.complete_json(request);
    return question_type_from_string(response.parsed.at("type").get<std::string>());
}

GroundResult ground_check(const AtomicPoint& point, const chunks::ChunkIndex& index,
                          QuestionType type, judge::Gateway& gateway, std::size_t k) {
    GroundResult result;
    result.type = type;
    if (type == QuestionType::Other) {
        return result;  // neither indicator applies
    }
    const auto retrieved = chunks::retrieve_top_k(point.text, index, gateway, k);
    const auto template_id = type == QuestionType::Explain
                                 ? judge::TemplateId::ExplainGround
                                 : judge::TemplateId::SupplementGround;
    bool any_yes = false;
    for (const auto& r : retrieved) {
        judge::JudgeRequest request;
        request.template_id = template_id;
        request.bindings = {{"question", point.text},
                            {"chunk", index.chunks[r.chunk_index].text}};
        nlohmann::json parsed;
        try {
            parsed = gateway.complete_json(request).parsed;
        } catch (const Error& e) {
            throw GatewayError("ground check failed at chunk " +
                               std::to_string(r.chunk_index) + ": " + e.what());
        }
        const bool yes = parsed.at("has_info").get<std::string>() == "yes";
        result.verdicts.push_back({r.chunk_index, yes});
        any_yes = any_yes || yes;
    }
    if (type == QuestionType::Explain) {
        result.conf = any_yes ? 1 : 0;
    } else {
        result.cons = any_yes ? 0 : 1;  // present in paper => not constructive
    }
    return result;
}

std::vector<ScoredQuestion> evaluate_questions(const std::vector<AtomicPoint>& points,
                                               const chunks::ChunkIndex& index,
                                               judge::Gateway& gateway, std::size_t k) {
    std::vector<ScoredQuestion> out;
    out.reserve(points.size());
    for (const auto& point : points) {
        ScoredQuestion sq;
        sq.point = point;
        const auto type = classify_question(point, gateway);
        sq.point.question_type = type;
        sq.ground = ground_check(point, index, type, gateway, k);
        out.push_back(std::move(sq));
    }
    return out;
}

std::optional<double> question_score(const std::vector<ScoredQuestion>& questions,
                                     bool exclude_other) {
    std::size_t scorable = 0;
    std::size_t passing = 0;
    for (const auto& q : questions) {
        if (exclude_other && q.ground.type == QuestionType::Other) continue;
        ++scorable;
        if (q.ground.conf == 1 || q.ground.cons == 1) ++passing;
    }
    if (scorable == 0) return std::nullopt;
    return static_cast<double>(passing) / static_cast<double>(scorable);
}

}  // namespace peerbench::questions
