#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace peerbench::judge {

enum class TemplateId {
    ReviewStrict,
    ReviewNeutral,
    ExtractStrength,
    ExtractWeakness,
    ExtractQuestion,
    MatchPoints,
    QuestionType,
    ExplainGround,
    SupplementGround,
    SplitCombined,
};

std::string_view to_string(TemplateId id);
TemplateId template_id_from_string(std::string_view s);

struct PromptTemplate {
    TemplateId id;
    // Stored byte-exact; {{ and }} are literal-brace escapes, {name} is a
    // placeholder only when listed below.
    std::string_view body;
    std::vector<std::string_view> placeholders;
    // Instruction templates become the system message and the caller's
    // payload becomes the user message; inline templates render the body
    // (with bindings) into the user message directly.
    bool body_is_system;
};

const PromptTemplate& get_template(TemplateId id);
const std::vector<PromptTemplate>& all_templates();

struct RenderedPrompt {
    std::string system;
    std::string user;
};

// bindings must cover the template's placeholders exactly; payload is the
// user message for system-style templates and must be empty otherwise.
RenderedPrompt render_prompt(TemplateId id,
                             const std::map<std::string, std::string>& bindings,
                             std::string_view payload = {});

// Substitutes {name} from bindings and collapses {{ }} escapes. Exposed for
// tests; unknown placeholders or unused bindings throw SchemaError.
std::string render_body(std::string_view body,
                        const std::vector<std::string_view>& placeholders,
                        const std::map<std::string, std::string>& bindings);

// Throws ParseError when the JSON does not satisfy the template's declared
// response contract (e.g. match responses accept exactly {"match":"yes"} or
// {"match":"no"}).
void validate_response(TemplateId id, const nlohmann::json& response);

}  // namespace peerbench::judge
