#include <doctest.h>

#include <json.hpp>

#include "peerbench/data_model.hpp"
#include "peerbench/errors.hpp"

using namespace peerbench;
using nlohmann::json;

namespace {

json valid_review_json() {
    return json{
        {"summary", "A solid paper."},
        {"strengths", "Novel idea."},
        {"weaknesses", "Weak baselines."},
        {"questions", "Why this dataset?"},
        {"soundness", 3},
        {"presentation", 2},
        {"contribution", 3},
        {"rating", 6},
        {"confidence", 4},
    };
}

}  // namespace

TEST_SUITE("data_model") {

TEST_CASE("rating scale membership") {
    for (int r : {1, 3, 5, 6, 8, 10}) CHECK(is_valid_rating(r));
    for (int r : {0, 2, 4, 7, 9, 11, -1}) CHECK_FALSE(is_valid_rating(r));
}

TEST_CASE("validate_review accepts the nine-key object") {
    const Review r = validate_review(valid_review_json(), ReviewOrigin::Human);
    CHECK(r.rating == 6);
    CHECK(r.confidence == 4);
    CHECK(r.origin == ReviewOrigin::Human);
    CHECK(r.summary == "A solid paper.");
}

TEST_CASE("validate_review rejects missing or mistyped fields") {
    auto j = valid_review_json();
    j.erase("rating");
    CHECK_THROWS_AS((void)validate_review(j, ReviewOrigin::Human), SchemaError);

    j = valid_review_json();
    j["confidence"] = "high";
    CHECK_THROWS_AS((void)validate_review(j, ReviewOrigin::Human), SchemaError);
}

TEST_CASE("validate_review range checks") {
    auto j = valid_review_json();
    j["rating"] = 7;  // not in S
    CHECK_THROWS_AS((void)validate_review(j, ReviewOrigin::Human), RangeError);

    j = valid_review_json();
    j["confidence"] = 6;
    CHECK_THROWS_AS((void)validate_review(j, ReviewOrigin::Human), RangeError);

    j = valid_review_json();
    j["soundness"] = 0;
    CHECK_THROWS_AS((void)validate_review(j, ReviewOrigin::Human), RangeError);
}

TEST_CASE("generated reviews must fill all four text fields") {
    auto j = valid_review_json();
    j["questions"] = "";
    CHECK_NOTHROW((void)validate_review(j, ReviewOrigin::Human));
    CHECK_THROWS_AS((void)validate_review(j, ReviewOrigin::Generated), SchemaError);
}

TEST_CASE("review_to_json emits exactly the nine schema keys") {
    const Review r = validate_review(valid_review_json(), ReviewOrigin::Human);
    const json out = review_to_json(r);
    CHECK(out.size() == 9);
    CHECK(out == valid_review_json());
}

TEST_CASE("category parsing is lenient on case and spacing") {
    CHECK(category_from_string("Related Work") == Category::RelatedWork);
    CHECK(category_from_string("related_work") == Category::RelatedWork);
    CHECK(category_from_string("RELATED-WORK") == Category::RelatedWork);
    CHECK(category_from_string("novelty") == Category::Novelty);
    CHECK_THROWS_AS((void)category_from_string("методология"), TaxonomyError);
    CHECK_THROWS_AS((void)category_from_string("Methodology"), TaxonomyError);
}

TEST_CASE("enum round trips") {
    for (auto c : {Category::Novelty, Category::Soundness, Category::Experiments,
                   Category::Clarity, Category::Significance, Category::Reproducibility,
                   Category::RelatedWork, Category::Other}) {
        CHECK(category_from_string(std::string(to_string(c))) == c);
    }
    CHECK(venue_from_string("ICLR") == Venue::ICLR);
    CHECK(venue_from_string("NeurIPS") == Venue::NeurIPS);
    CHECK(field_kind_from_string("question") == FieldKind::Question);
    CHECK(question_type_from_string("supplement") == QuestionType::Supplement);
}

TEST_CASE("atomic point invariants") {
    AtomicPoint p;
    p.text = "The ablation is missing.";
    p.category = Category::Experiments;
    p.field_kind = FieldKind::Weakness;
    CHECK_NOTHROW(validate_point(p));

    p.question_type = QuestionType::Explain;  // not a question point
    CHECK_THROWS_AS(validate_point(p), SchemaError);

    AtomicPoint q;
    q.text = "Why does this converge?";
    q.category = Category::Soundness;
    q.field_kind = FieldKind::Question;
    CHECK_THROWS_AS(validate_point(q), SchemaError);  // missing question_type
    q.question_type = QuestionType::Explain;
    CHECK_NOTHROW(validate_point(q));

    AtomicPoint empty;
    empty.field_kind = FieldKind::Strength;
    CHECK_THROWS_AS(validate_point(empty), SchemaError);
}

TEST_CASE("match matrix validation") {
    MatchMatrix m;
    AtomicPoint a;
    a.text = "x";
    a.field_kind = FieldKind::Weakness;
    m.ai_points = {a, a};
    m.human_points = {a};
    m.entries = {{1}, {0}};
    CHECK_NOTHROW(validate_matrix(m));

    m.entries = {{1}};
    CHECK_THROWS_AS(validate_matrix(m), SchemaError);

    m.entries = {{1}, {2}};
    CHECK_THROWS_AS(validate_matrix(m), RangeError);
}

TEST_CASE("scorecard json round trip preserves undefined cells") {
    Scorecard card;
    card.model_name = "m1";
    card.group = "default";
    card.summary_coverage = 3.25;
    card.strength.recall = 0.5;
    card.strength.precision = 0.25;
    card.strength.f1 = 2.0 * 0.5 * 0.25 / 0.75;
    card.weakness.kl = 0.12;
    card.question_qs = 0.4;
    card.ai_rate = 0.0;
    card.rating_mae = 1.5;
    validate_scorecard(card);

    const json j = scorecard_to_json(card);
    CHECK(j.at("schema_version") == kSchemaVersion);
    CHECK(j.at("weakness").at("recall").is_null());
    CHECK(j.at("ai_bs").is_null());

    const Scorecard back = scorecard_from_json(j);
    CHECK(back.model_name == "m1");
    CHECK(back.summary_coverage == card.summary_coverage);
    CHECK_FALSE(back.weakness.recall.has_value());
    CHECK(back.weakness.kl == card.weakness.kl);
    CHECK(scorecard_to_json(back) == j);
}

TEST_CASE("scorecard validation rejects out-of-range metrics") {
    Scorecard card;
    card.model_name = "m";
    card.strength.precision = 1.2;
    CHECK_THROWS_AS(validate_scorecard(card), RangeError);

    card.strength.precision = 0.5;
    card.question_kl = -0.1;
    CHECK_THROWS_AS(validate_scorecard(card), RangeError);

    card.question_kl = 0.1;
    card.summary_coverage = 7.0;  // |coverage| bounded by K = 5
    CHECK_THROWS_AS(validate_scorecard(card), RangeError);
}

}  // TEST_SUITE
