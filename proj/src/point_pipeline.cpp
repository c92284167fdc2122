#include "peerbench/point_pipeline.hpp"

#include "peerbench/errors.hpp"

namespace peerbench::points {

namespace {

judge::TemplateId extraction_template(FieldKind kind) {
    switch (kind) {
        case FieldKind::Strength: return judge::TemplateId::ExtractStrength;
        case FieldKind::Weakness: return judge::TemplateId::ExtractWeakness;
        case FieldKind::Question: return judge::TemplateId::ExtractQuestion;
    }
    throw SchemaError("unknown field kind");
}

}  // namespace

std::vector<AtomicPoint> extract_points(const std::string& field_text, FieldKind kind,
                                        judge::Gateway& gateway) {
    if (field_text.empty()) {
        return {};
    }
    judge::JudgeRequest request;
    request.template_id = extraction_template(kind);
    request.payload = "[BEGIN_INPUT]\n" + field_text + "\n[END_INPUT]";
    const auto response = gateway.complete_json(request);

    std::vector<AtomicPoint> out;
    for (const auto& entry : response.parsed.at("points")) {
        AtomicPoint point;
        point.text = entry.at("key_point").get<std::string>();
        point.category = category_from_string(entry.at("category").get<std::string>());
        point.field_kind = kind;
        if (point.text.empty()) {
            throw SchemaError("judge returned an empty key_point");
        }
        if (kind == FieldKind::Question) {
            // Filled by question_eval's classifier; Other until judged.
            point.question_type = QuestionType::Other;
        }
        out.push_back(std::move(point));
    }
    return out;
}

int match_points(const AtomicPoint& a, const AtomicPoint& h, judge::Gateway& gateway) {
    if (a.field_kind != h.field_kind) {
        throw PreconditionError("cross-field matching is not allowed");
    }
    judge::JudgeRequest request;
    request.template_id = judge::TemplateId::MatchPoints;
    request.bindings = {{"point_a", a.text}, {"point_b", h.text}};
    const auto response = gateway.complete_json(request);
    return response.parsed.at("match").get<std::string>() == "yes" ? 1 : 0;
}

MatchMatrix build_match_matrix(const std::vector<AtomicPoint>& ai_points,
                               const std::vector<AtomicPoint>& human_points,
                               judge::Gateway& gateway) {
    MatchMatrix matrix;
    matrix.ai_points = ai_points;
    matrix.human_points = human_points;
    matrix.entries.assign(ai_points.size(),
                          std::vector<std::uint8_t>(human_points.size(), 0));
    for (std::size_t i = 0; i < ai_points.size(); ++i) {
        for (std::size_t j = 0; j < human_points.size(); ++j) {
            try {
                matrix.entries[i][j] = static_cast<std::uint8_t>(
                    match_points(ai_points[i], human_points[j], gateway));
            } catch (const Error& e) {
                throw GatewayError("match failed at entry (" + std::to_string(i) + ", " +
                                   std::to_string(j) + "): " + e.what());
            }
        }
    }
    return matrix;
}

nlohmann::json points_to_json(const std::vector<AtomicPoint>& points) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : points) {
        arr.push_back({{"key_point", p.text}, {"category", std::string(to_string(p.category))}});
    }
    return arr;
}

std::vector<AtomicPoint> points_from_json(const nlohmann::json& arr, FieldKind kind) {
    std::vector<AtomicPoint> out;
    for (const auto& entry : arr) {
        AtomicPoint point;
        point.text = entry.at("key_point").get<std::string>();
        point.category = category_from_string(entry.at("category").get<std::string>());
        point.field_kind = kind;
        if (kind == FieldKind::Question) {
            point.question_type = QuestionType::Other;
        }
        out.push_back(std::move(point));
    }
    return out;
}

}  // namespace peerbench::points
