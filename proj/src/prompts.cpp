#include "peerbench/prompts.hpp"

#include <algorithm>

#include "peerbench/data_model.hpp"
#include "peerbench/errors.hpp"

namespace peerbench::judge {

namespace {

#include "prompt_bodies.inc"

// Splits a combined strengths-and-weaknesses blob into the two fields.
// This template is harness plumbing, not sourced from a published prompt.
static const char kBody_split_combined[] =
    R"__pb__(## Role
You are an assistant that restructures peer-review text.

## Task
The user message contains a review section that mixes strengths and weaknesses.
Separate it into two fields:
- "strengths": every positive statement, in the original wording, order preserved.
- "weaknesses": every negative or critical statement, in the original wording, order preserved.

## Rules
- Copy sentences; do not paraphrase, summarize, or add content.
- A sentence that is purely neutral boilerplate may be dropped.
- If one side has no content, return an empty string for it.

## Output Format
Respond with JSON only, no preamble and no markdown fences:
{{"strengths": "<string>", "weaknesses": "<string>"}}
)__pb__";

std::vector<PromptTemplate> build_templates() {
    return {
        {TemplateId::ReviewStrict, kBody_review_strict, {}, true},
        {TemplateId::ReviewNeutral, kBody_review_neutral, {}, true},
        {TemplateId::ExtractStrength, kBody_extract_strength, {}, true},
        {TemplateId::ExtractWeakness, kBody_extract_weakness, {}, true},
        {TemplateId::ExtractQuestion, kBody_extract_question, {}, true},
        {TemplateId::MatchPoints, kBody_match_points, {"point_a", "point_b"}, false},
        {TemplateId::QuestionType, kBody_question_type, {"question"}, false},
        {TemplateId::ExplainGround, kBody_explain_ground, {"question", "chunk"}, false},
        {TemplateId::SupplementGround, kBody_supplement_ground, {"question", "chunk"}, false},
        {TemplateId::SplitCombined, kBody_split_combined, {}, true},
    };
}

}  // namespace

std::string_view to_string(TemplateId id) {
    switch (id) {
        case TemplateId::ReviewStrict: return "review_strict";
        case TemplateId::ReviewNeutral: return "review_neutral";
        case TemplateId::ExtractStrength: return "extract_strength";
        case TemplateId::ExtractWeakness: return "extract_weakness";
        case TemplateId::ExtractQuestion: return "extract_question";
        case TemplateId::MatchPoints: return "match_points";
        case TemplateId::QuestionType: return "question_type";
        case TemplateId::ExplainGround: return "explain_ground";
        case TemplateId::SupplementGround: return "supplement_ground";
        case TemplateId::SplitCombined: return "split_combined";
    }
    return "review_strict";
}

TemplateId template_id_from_string(std::string_view s) {
    for (const auto& t : all_templates()) {
        if (to_string(t.id) == s) return t.id;
    }
    throw SchemaError("unknown template id: " + std::string(s));
}

const std::vector<PromptTemplate>& all_templates() {
    static const std::vector<PromptTemplate> templates = build_templates();
    return templates;
}

const PromptTemplate& get_template(TemplateId id) {
    for (const auto& t : all_templates()) {
        if (t.id == id) return t;
    }
    throw SchemaError("template not registered");
}

std::string render_body(std::string_view body,
                        const std::vector<std::string_view>& placeholders,
                        const std::map<std::string, std::string>& bindings) {
    for (const auto& [key, value] : bindings) {
        (void)value;
        if (std::find(placeholders.begin(), placeholders.end(), key) == placeholders.end()) {
            throw SchemaError("binding for undeclared placeholder: " + key);
        }
    }
    // {{ and }} unescape to single braces. {name} substitutes only when the
    // name is declared for this template; every other brace is literal text,
    // because the pinned bodies embed raw JSON examples.
    std::string out;
    out.reserve(body.size());
    std::size_t i = 0;
    const std::size_t n = body.size();
    while (i < n) {
        const char c = body[i];
        if (c == '{') {
            if (i + 1 < n && body[i + 1] == '{') {
                out.push_back('{');
                i += 2;
                continue;
            }
            const std::size_t close = body.find('}', i + 1);
            if (close != std::string_view::npos) {
                const std::string name(body.substr(i + 1, close - i - 1));
                if (std::find(placeholders.begin(), placeholders.end(), name) !=
                    placeholders.end()) {
                    auto it = bindings.find(name);
                    if (it == bindings.end()) {
                        throw SchemaError("missing binding for placeholder: " + name);
                    }
                    out.append(it->second);
                    i = close + 1;
                    continue;
                }
            }
            out.push_back('{');
            ++i;
            continue;
        }
        if (c == '}') {
            if (i + 1 < n && body[i + 1] == '}') {
                out.push_back('}');
                i += 2;
                continue;
            }
            out.push_back('}');
            ++i;
            continue;
        }
        out.push_back(c);
        ++i;
    }
    return out;
}

RenderedPrompt render_prompt(TemplateId id,
                             const std::map<std::string, std::string>& bindings,
                             std::string_view payload) {
    const auto& tmpl = get_template(id);
    RenderedPrompt out;
    if (tmpl.body_is_system) {
        if (!bindings.empty()) {
            throw SchemaError("system-style template takes no bindings");
        }
        if (payload.empty()) {
            throw PreconditionError("system-style template requires a payload");
        }
        out.system = render_body(tmpl.body, tmpl.placeholders, {});
        out.user = std::string(payload);
    } else {
        if (!payload.empty()) {
            throw SchemaError("inline template takes no payload");
        }
        if (bindings.size() != tmpl.placeholders.size()) {
            throw SchemaError("binding count mismatch for " + std::string(to_string(id)));
        }
        out.user = render_body(tmpl.body, tmpl.placeholders, bindings);
    }
    return out;
}

namespace {

const nlohmann::json& require_key(const nlohmann::json& j, const char* key,
                                  TemplateId id) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError("response for " + std::string(to_string(id)) +
                             " missing key: " + key,
                         j.dump());
    }
    return j.at(key);
}

void require_string_value(const nlohmann::json& j, const char* key, TemplateId id) {
    if (!require_key(j, key, id).is_string()) {
        throw ParseError("response key is not a string: " + std::string(key), j.dump());
    }
}

void require_int_value(const nlohmann::json& j, const char* key, TemplateId id) {
    if (!require_key(j, key, id).is_number_integer()) {
        throw ParseError("response key is not an integer: " + std::string(key), j.dump());
    }
}

void require_one_of(const nlohmann::json& j, const char* key, TemplateId id,
                    std::initializer_list<std::string_view> allowed) {
    const auto& v = require_key(j, key, id);
    if (!v.is_string()) {
        throw ParseError("response key is not a string: " + std::string(key), j.dump());
    }
    const auto s = v.get<std::string>();
    if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
        throw ParseError("response value \"" + s + "\" not allowed for key " + key,
                         j.dump());
    }
}

}  // namespace

void validate_response(TemplateId id, const nlohmann::json& response) {
    switch (id) {
        case TemplateId::ReviewStrict:
        case TemplateId::ReviewNeutral: {
            for (const char* key : {"summary", "strengths", "weaknesses", "questions"}) {
                require_string_value(response, key, id);
            }
            for (const char* key :
                 {"soundness", "presentation", "contribution", "rating", "confidence"}) {
                require_int_value(response, key, id);
            }
            return;
        }
        case TemplateId::ExtractStrength:
        case TemplateId::ExtractWeakness:
        case TemplateId::ExtractQuestion: {
            const auto& points = require_key(response, "points", id);
            if (!points.is_array()) {
                throw ParseError("\"points\" is not an array", response.dump());
            }
            for (const auto& p : points) {
                require_string_value(p, "key_point", id);
                require_string_value(p, "category", id);
            }
            return;
        }
        case TemplateId::MatchPoints: {
            // Exactly one key, exactly "yes" or "no"; anything else is a
            // contract violation even if the intent is guessable.
            if (!response.is_object() || response.size() != 1) {
                throw ParseError("match response must be exactly {\"match\":...}",
                                 response.dump());
            }
            require_one_of(response, "match", id, {"yes", "no"});
            return;
        }
        case TemplateId::QuestionType: {
            require_one_of(response, "type", id, {"explain", "supplement", "other"});
            return;
        }
        case TemplateId::ExplainGround:
        case TemplateId::SupplementGround: {
            require_one_of(response, "has_info", id, {"yes", "no"});
            return;
        }
        case TemplateId::SplitCombined: {
            require_string_value(response, "strengths", id);
            require_string_value(response, "weaknesses", id);
            return;
        }
    }
    throw SchemaError("template not registered");
}

}  // namespace peerbench::judge
