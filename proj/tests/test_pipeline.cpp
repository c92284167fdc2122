#include <doctest.h>

#include <filesystem>

#include "peerbench/io.hpp"
#include "peerbench/pipeline.hpp"
#include "support.hpp"

using namespace peerbench;
using namespace peerbench::pipeline;

namespace {

std::vector<PaperRecord> fixture_corpus() {
    std::vector<PaperRecord> corpus;
    corpus.push_back(pbtest::make_paper("paper-a", {{6, 4}, {8, 5}, {5, 4}}, 96));
    corpus.push_back(pbtest::make_paper("paper-b", {{3, 4}, {5, 4}, {3, 5}}, 80));
    return corpus;
}

std::vector<io::GeneratedReview> fixture_reviews(const std::vector<PaperRecord>& corpus,
                                                 judge::Gateway& gw,
                                                 const std::string& model) {
    std::vector<io::GeneratedReview> out;
    for (const auto& paper : corpus) {
        auto review = gw.generate_review(paper.body_markdown, judge::ReviewStyle::Strict);
        review.model_name = model;
        out.push_back({paper.paper_id, model, "strict", review});
    }
    return out;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("evaluate_model produces a valid scorecard with per-paper audits") {
    auto gw = pbtest::make_mock_gateway();
    const auto corpus = fixture_corpus();
    const auto reviews = fixture_reviews(corpus, gw, "mock-model");

    EvaluateOptions opts;
    opts.window = 64;
    opts.overlap = 16;
    const auto eval = evaluate_model(corpus, reviews, "mock-model", gw, opts);

    CHECK(eval.card.model_name == "mock-model");
    CHECK(eval.card.group == "default");
    CHECK_NOTHROW(validate_scorecard(eval.card));
    REQUIRE(eval.papers.size() == 2);
    CHECK(eval.papers[0].paper_id == "paper-a");
    CHECK(eval.papers[1].paper_id == "paper-b");

    REQUIRE(eval.card.rating_mae.has_value());
    CHECK(*eval.card.rating_mae >= 0.0);
    REQUIRE(eval.card.summary_coverage.has_value());

    for (const auto& p : eval.papers) {
        CHECK(p.coverage.has_value());
        CHECK(is_valid_rating(p.predicted_rating));
        CHECK(p.reference_rating > 0.0);
        const auto j = p.to_json();
        CHECK(j.at("schema_version") == kSchemaVersion);
        CHECK(j.contains("strength"));
        CHECK(j.contains("weakness"));
        CHECK(j.contains("questions"));
        CHECK(j.contains("bs_fields"));
    }

    // Category counts pool both sources for the three point kinds.
    for (const auto* key : {"ai_strength", "human_strength", "ai_weakness",
                            "human_weakness", "ai_question", "human_question"}) {
        CHECK(eval.category_counts.count(key) == 1);
    }
}

TEST_CASE("unknown papers and duplicate reviews are rejected") {
    auto gw = pbtest::make_mock_gateway();
    const auto corpus = fixture_corpus();
    auto reviews = fixture_reviews(corpus, gw, "m");

    auto stray = reviews;
    stray[0].paper_id = "no-such-paper";
    CHECK_THROWS_AS((void)evaluate_model(corpus, stray, "m", gw, EvaluateOptions{}),
                    SchemaError);

    auto dup = reviews;
    dup.push_back(dup[0]);
    CHECK_THROWS_AS((void)evaluate_model(corpus, dup, "m", gw, EvaluateOptions{}),
                    SchemaError);

    CHECK_THROWS_AS((void)evaluate_model(corpus, reviews, "absent-model", gw,
                                         EvaluateOptions{}),
                    PreconditionError);
}

TEST_CASE("papers without human reviews cannot be evaluated") {
    auto gw = pbtest::make_mock_gateway();
    auto corpus = fixture_corpus();
    corpus[0].human_reviews.clear();
    const auto reviews = fixture_reviews(corpus, gw, "m");
    CHECK_THROWS_AS((void)evaluate_model(corpus, reviews, "m", gw, EvaluateOptions{}),
                    PreconditionError);
}

TEST_CASE("evaluate_all groups by model name") {
    auto gw = pbtest::make_mock_gateway();
    const auto corpus = fixture_corpus();
    auto reviews = fixture_reviews(corpus, gw, "model-a");
    const auto more = fixture_reviews(corpus, gw, "model-b");
    reviews.insert(reviews.end(), more.begin(), more.end());

    EvaluateOptions opts;
    opts.window = 64;
    opts.overlap = 16;
    const auto evals = evaluate_all(corpus, reviews, gw, opts);
    REQUIRE(evals.size() == 2);
    CHECK(evals[0].card.model_name == "model-a");
    CHECK(evals[1].card.model_name == "model-b");
}

TEST_CASE("write_evaluation lays out the audit tree") {
    auto gw = pbtest::make_mock_gateway();
    const auto corpus = fixture_corpus();
    const auto reviews = fixture_reviews(corpus, gw, "mock/model v1");

    EvaluateOptions opts;
    opts.window = 64;
    opts.overlap = 16;
    const auto eval = evaluate_model(corpus, reviews, "mock/model v1", gw, opts);

    pbtest::TempDir dir("scores");
    write_evaluation(dir.path(), eval);
    const auto model_dir = dir.path() / sanitize_component("mock/model v1");
    CHECK(std::filesystem::exists(model_dir / "scorecard.json"));
    CHECK(std::filesystem::exists(model_dir / "papers" / "paper-a.json"));
    CHECK(std::filesystem::exists(model_dir / "papers" / "paper-b.json"));
    CHECK(std::filesystem::exists(model_dir / "field_scores.csv"));
    CHECK(std::filesystem::exists(model_dir / "distributions.csv"));

    const auto csv = io::read_file(model_dir / "field_scores.csv");
    CHECK(csv.rfind("paper_id,field,score,skip_reason", 0) == 0);
    const auto dist = io::read_file(model_dir / "distributions.csv");
    CHECK(dist.find("ai_weakness") != std::string::npos);
    CHECK(dist.find("human_weakness") != std::string::npos);

    const auto card = nlohmann::json::parse(io::read_file(model_dir / "scorecard.json"));
    CHECK(card.at("model_name") == "mock/model v1");
}

TEST_CASE("sanitize_component replaces unsafe characters") {
    CHECK(sanitize_component("mock/model v1") == "mock_model_v1");
    CHECK(sanitize_component("safe-name_1.0") == "safe-name_1.0");
}

}  // TEST_SUITE
