#include <doctest.h>

#include <json.hpp>

#include "peerbench/errors.hpp"
#include "peerbench/prompts.hpp"

using namespace peerbench;
using namespace peerbench::judge;
using nlohmann::json;

TEST_SUITE("prompts") {

TEST_CASE("all template ids round trip through their names") {
    for (const auto& t : all_templates()) {
        CHECK(template_id_from_string(std::string(to_string(t.id))) == t.id);
    }
    CHECK_THROWS_AS((void)template_id_from_string("no_such_template"), SchemaError);
}

TEST_CASE("placeholder substitution and brace escapes") {
    const std::string body = "Ask {q} and emit {{\"k\":\"v\"}}";
    const auto out = render_body(body, {"q"}, {{"q", "why?"}});
    CHECK(out == "Ask why? and emit {\"k\":\"v\"}");
}

TEST_CASE("render_body rejects contract violations") {
    CHECK_THROWS_AS((void)render_body("{q}", {"q"}, {}), SchemaError);          // unbound
    CHECK_THROWS_AS((void)render_body("apx", {"q"}, {{"z", "v"}}), SchemaError);  // undeclared binding
}

TEST_CASE("render_body keeps non-placeholder braces literal") {
    // Pinned bodies embed raw JSON examples, so braces that are not a
    // declared {name} or a {{ }} escape pass through byte-for-byte.
    CHECK(render_body("{x}", {"q"}, {{"q", "v"}}) == "{x}");  // undeclared name
    CHECK(render_body("}", {}, {}) == "}");                   // bare close
    CHECK(render_body("{q", {"q"}, {{"q", "v"}}) == "{q");    // unterminated open
    CHECK(render_body("{\n  \"points\": []\n}", {}, {}) == "{\n  \"points\": []\n}");
    CHECK(render_body("{q} vs {q2}", {"q"}, {{"q", "v"}}) == "v vs {q2}");
}

TEST_CASE("inline templates render bindings into the user message") {
    const auto rendered = render_prompt(
        TemplateId::MatchPoints,
        {{"point_a", "missing ablation on X"}, {"point_b", "no ablation study for X"}});
    CHECK(rendered.system.empty());
    CHECK(rendered.user.find("missing ablation on X") != std::string::npos);
    CHECK(rendered.user.find("no ablation study for X") != std::string::npos);
    // The escaped JSON examples must come out as single braces.
    CHECK(rendered.user.find("{\"match\":\"yes\"}") != std::string::npos);
    CHECK(rendered.user.find("{{") == std::string::npos);
}

TEST_CASE("system-style templates pass the payload through untouched") {
    const std::string paper = "Title: something\n\nBody with {braces} kept as-is";
    const auto rendered = render_prompt(TemplateId::ReviewStrict, {}, paper);
    CHECK_FALSE(rendered.system.empty());
    CHECK(rendered.user == paper);

    CHECK_THROWS_AS((void)render_prompt(TemplateId::ReviewStrict, {}, ""), PreconditionError);
    CHECK_THROWS_AS((void)render_prompt(TemplateId::ReviewStrict, {{"q", "x"}}, "p"),
                    SchemaError);
    CHECK_THROWS_AS((void)render_prompt(TemplateId::MatchPoints,
                                        {{"point_a", "a"}, {"point_b", "b"}}, "payload"),
                    SchemaError);
    CHECK_THROWS_AS((void)render_prompt(TemplateId::MatchPoints, {{"point_a", "a"}}),
                    SchemaError);
}

TEST_CASE("extraction templates ship byte-literal json examples") {
    // The extraction bodies embed single-brace JSON; rendering must not
    // disturb them and must not treat them as placeholders (none declared).
    for (auto id : {TemplateId::ExtractStrength, TemplateId::ExtractWeakness,
                    TemplateId::ExtractQuestion}) {
        const auto& tmpl = get_template(id);
        CHECK(tmpl.body_is_system);
        CHECK(tmpl.placeholders.empty());
        const auto rendered = render_prompt(id, {}, "[BEGIN_INPUT]\nx\n[END_INPUT]");
        CHECK(rendered.system == std::string(tmpl.body));
    }
}

TEST_CASE("match response contract is exact") {
    CHECK_NOTHROW(validate_response(TemplateId::MatchPoints, json{{"match", "yes"}}));
    CHECK_NOTHROW(validate_response(TemplateId::MatchPoints, json{{"match", "no"}}));

    CHECK_THROWS_AS(validate_response(TemplateId::MatchPoints, json{{"match", "Yes"}}),
                    ParseError);
    CHECK_THROWS_AS(validate_response(TemplateId::MatchPoints, json{{"match", "maybe"}}),
                    ParseError);
    CHECK_THROWS_AS(validate_response(TemplateId::MatchPoints, json{{"Match", "yes"}}),
                    ParseError);
    CHECK_THROWS_AS(
        validate_response(TemplateId::MatchPoints, json{{"match", "yes"}, {"extra", 1}}),
        ParseError);
    CHECK_THROWS_AS(validate_response(TemplateId::MatchPoints, json{{"match", true}}),
                    ParseError);
    CHECK_THROWS_AS(validate_response(TemplateId::MatchPoints, json::parse("\"yes\"")),
                    ParseError);
}

TEST_CASE("review response contract") {
    json good{
        {"summary", "s"}, {"strengths", "st"}, {"weaknesses", "w"}, {"questions", "q"},
        {"soundness", 3}, {"presentation", 3}, {"contribution", 2}, {"rating", 6},
        {"confidence", 4},
    };
    CHECK_NOTHROW(validate_response(TemplateId::ReviewStrict, good));
    auto bad = good;
    bad["rating"] = "6";
    CHECK_THROWS_AS(validate_response(TemplateId::ReviewStrict, bad), ParseError);
    bad = good;
    bad.erase("questions");
    CHECK_THROWS_AS(validate_response(TemplateId::ReviewNeutral, bad), ParseError);
}

TEST_CASE("extraction and classification response contracts") {
    CHECK_NOTHROW(validate_response(
        TemplateId::ExtractWeakness,
        json{{"points", json::array({json{{"key_point", "k"}, {"category", "Novelty"}}})}}));
    CHECK_NOTHROW(validate_response(TemplateId::ExtractWeakness,
                                    json{{"points", json::array()}}));
    CHECK_THROWS_AS(validate_response(TemplateId::ExtractWeakness, json{{"points", 3}}),
                    ParseError);

    CHECK_NOTHROW(validate_response(TemplateId::QuestionType, json{{"type", "explain"}}));
    CHECK_THROWS_AS(validate_response(TemplateId::QuestionType, json{{"type", "Explain"}}),
                    ParseError);

    CHECK_NOTHROW(validate_response(TemplateId::ExplainGround, json{{"has_info", "no"}}));
    CHECK_THROWS_AS(validate_response(TemplateId::SupplementGround, json{{"has_info", 0}}),
                    ParseError);
}

TEST_CASE("template bodies carry their documented anchors") {
    CHECK(std::string(get_template(TemplateId::ReviewStrict).body)
              .find("strict and tough academic reviewer") != std::string::npos);
    const std::string neutral(get_template(TemplateId::ReviewNeutral).body);
    CHECK(neutral.find("strict and tough") == std::string::npos);
    for (auto id : {TemplateId::ExtractStrength, TemplateId::ExtractWeakness,
                    TemplateId::ExtractQuestion}) {
        const std::string body(get_template(id).body);
        CHECK(body.find("[BEGIN_INPUT]") != std::string::npos);
    }
}

}  // TEST_SUITE
