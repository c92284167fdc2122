#include <doctest.h>

#include "peerbench/chunk_embed.hpp"
#include "peerbench/errors.hpp"
#include "peerbench/point_pipeline.hpp"
#include "peerbench/question_eval.hpp"
#include "support.hpp"

using namespace peerbench;
using namespace peerbench::points;
using namespace peerbench::questions;

TEST_SUITE("points_questions") {

TEST_CASE("extraction decomposes a field into labeled atomic points") {
    auto gw = pbtest::make_mock_gateway();
    const auto pts = extract_points(
        "The method is novel. The experiments are comprehensive.", FieldKind::Strength, gw);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].category == Category::Novelty);
    CHECK(pts[1].category == Category::Experiments);
    for (const auto& p : pts) {
        CHECK(p.field_kind == FieldKind::Strength);
        CHECK_FALSE(p.question_type.has_value());
        CHECK_NOTHROW(validate_point(p));
    }
}

TEST_CASE("empty and placeholder fields yield no points") {
    auto gw = pbtest::make_mock_gateway();
    CHECK(extract_points("", FieldKind::Weakness, gw).empty());
    CHECK(extract_points("N/A", FieldKind::Weakness, gw).empty());
}

TEST_CASE("question points carry a placeholder type until classified") {
    auto gw = pbtest::make_mock_gateway();
    const auto pts = extract_points("Why does the loss spike?", FieldKind::Question, gw);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].field_kind == FieldKind::Question);
    REQUIRE(pts[0].question_type.has_value());
}

TEST_CASE("match_points is binary and rejects cross-field comparisons") {
    auto gw = pbtest::make_mock_gateway();
    AtomicPoint a;
    a.text = "missing ablation study on component X";
    a.field_kind = FieldKind::Weakness;
    AtomicPoint h = a;
    h.text = "missing ablation study for component X";
    CHECK(match_points(a, h, gw) == 1);

    h.text = "the paper has many grammatical mistakes everywhere";
    CHECK(match_points(a, h, gw) == 0);

    h.field_kind = FieldKind::Strength;
    CHECK_THROWS_AS((void)match_points(a, h, gw), PreconditionError);
}

TEST_CASE("build_match_matrix judges every pair") {
    auto gw = pbtest::make_mock_gateway();
    auto mk = [](const std::string& text) {
        AtomicPoint p;
        p.text = text;
        p.field_kind = FieldKind::Weakness;
        p.category = Category::Experiments;
        return p;
    };
    const std::vector<AtomicPoint> ai = {mk("missing ablation study on component X"),
                                         mk("insufficient number of baselines compared")};
    const std::vector<AtomicPoint> human = {mk("missing ablation study for component X"),
                                            mk("writing is hard to follow in places"),
                                            mk("insufficient baselines compared overall")};
    const auto m = build_match_matrix(ai, human, gw);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK_NOTHROW(validate_matrix(m));
    CHECK(m.entries[0][0] == 1);
    CHECK(m.entries[0][1] == 0);
}

TEST_CASE("points persist through json round trip") {
    auto gw = pbtest::make_mock_gateway();
    const auto pts = extract_points(
        "The proofs are rigorous. The code is released for reproducibility.",
        FieldKind::Strength, gw);
    REQUIRE(pts.size() == 2);
    const auto j = points_to_json(pts);
    const auto back = points_from_json(j, FieldKind::Strength);
    REQUIRE(back.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(back[i].text == pts[i].text);
        CHECK(back[i].category == pts[i].category);
    }
}

TEST_CASE("classification routes by kind and grounding by type") {
    auto gw = pbtest::make_mock_gateway();
    const std::string body =
        "# Method\nWe train a transformer on graphs with contrastive loss. "
        "The loss converges because of the warmup schedule we use. " +
        pbtest::repeated_tokens(120, "pad");
    const auto index = chunks::build_index(body, gw, 64, 16);

    AtomicPoint explain_q;
    explain_q.text = "Why does the loss converge so quickly?";
    explain_q.field_kind = FieldKind::Question;
    explain_q.category = Category::Soundness;
    explain_q.question_type = QuestionType::Other;

    const auto type = classify_question(explain_q, gw);
    CHECK(type == QuestionType::Explain);

    const auto ground = ground_check(explain_q, index, type, gw, 3);
    CHECK(ground.type == QuestionType::Explain);
    CHECK(ground.verdicts.size() == 3);
    CHECK((ground.conf == 0 || ground.conf == 1));
    CHECK(ground.cons == 0);
}

TEST_CASE("other-type questions are not grounded at all") {
    auto gw = pbtest::make_mock_gateway();
    const auto index =
        chunks::build_index(pbtest::repeated_tokens(64, "body"), gw, 32, 8);
    AtomicPoint other;
    other.text = "There is a typo in Table 2.";
    other.field_kind = FieldKind::Question;
    other.question_type = QuestionType::Other;
    const auto ground = ground_check(other, index, QuestionType::Other, gw, 3);
    CHECK(ground.conf == 0);
    CHECK(ground.cons == 0);
    CHECK(ground.verdicts.empty());
}

TEST_CASE("question_score counts conf-or-cons over scorable points") {
    auto scored = [](QuestionType t, int conf, int cons) {
        ScoredQuestion q;
        q.point.text = "q";
        q.point.field_kind = FieldKind::Question;
        q.point.question_type = t;
        q.ground.type = t;
        q.ground.conf = conf;
        q.ground.cons = cons;
        return q;
    };
    const std::vector<ScoredQuestion> qs = {
        scored(QuestionType::Explain, 1, 0),
        scored(QuestionType::Explain, 0, 0),
        scored(QuestionType::Supplement, 0, 1),
        scored(QuestionType::Supplement, 0, 1),
    };
    auto s = question_score(qs);
    REQUIRE(s.has_value());
    CHECK(*s == doctest::Approx(0.75));

    // "other" drops from the denominator by default...
    auto with_other = qs;
    with_other.push_back(scored(QuestionType::Other, 0, 0));
    s = question_score(with_other);
    REQUIRE(s.has_value());
    CHECK(*s == doctest::Approx(0.75));

    // ...but counts as a failure when exclusion is turned off.
    s = question_score(with_other, false);
    REQUIRE(s.has_value());
    CHECK(*s == doctest::Approx(0.6));

    CHECK_FALSE(question_score({}).has_value());
    CHECK_FALSE(question_score({scored(QuestionType::Other, 0, 0)}).has_value());
}

TEST_CASE("evaluate_questions assigns final types to the points") {
    auto gw = pbtest::make_mock_gateway();
    const std::string body =
        "We evaluate on three datasets with strong baselines. " +
        pbtest::repeated_tokens(100, "pad");
    const auto index = chunks::build_index(body, gw, 64, 16);

    auto q = [](const std::string& text) {
        AtomicPoint p;
        p.text = text;
        p.field_kind = FieldKind::Question;
        p.question_type = QuestionType::Other;
        return p;
    };
    const std::vector<AtomicPoint> pts = {
        q("Why does the model generalize across datasets?"),
        q("Could you release the training code for reproducibility?"),
    };
    const auto scored = evaluate_questions(pts, index, gw, 3);
    REQUIRE(scored.size() == 2);
    CHECK(scored[0].ground.type == QuestionType::Explain);
    CHECK(scored[1].ground.type == QuestionType::Supplement);
    CHECK(scored[0].point.question_type == QuestionType::Explain);
    CHECK(scored[1].point.question_type == QuestionType::Supplement);
}

}  // TEST_SUITE
