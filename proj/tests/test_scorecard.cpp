#include <doctest.h>

#include <sstream>

#include "peerbench/errors.hpp"
#include "peerbench/scorecard.hpp"
#include "support.hpp"

using namespace peerbench;
using namespace peerbench::score;

namespace {

Scorecard card_with(const std::string& name, double recall, double mae) {
    Scorecard c;
    c.model_name = name;
    c.group = "default";
    c.weakness.recall = recall;
    c.rating_mae = mae;
    return c;
}

}  // namespace

TEST_SUITE("scorecard") {

TEST_CASE("rating mae worked value") {
    CHECK(rating_mae({{5, 6.0}, {8, 6.0}}) == 1.5);
    CHECK(rating_mae({{6, 6.0}}) == 0.0);
    CHECK_THROWS_AS((void)rating_mae({}), PreconditionError);
    CHECK_THROWS_AS((void)rating_mae({{7, 6.0}}), RangeError);  // 7 not in S
}

TEST_CASE("rouge-1 worked value: 3 of 4 unigrams overlap") {
    auto gw = pbtest::make_mock_gateway();
    const auto scores = ngram_metrics("a b c d", {"a b x d"}, gw);
    CHECK(scores.rouge_1 == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(scores.rouge_2 == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(scores.rouge_l == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("identical texts score 1 across the overlap metrics") {
    auto gw = pbtest::make_mock_gateway();
    const std::string text = "the model improves over all baselines by a wide margin";
    const auto scores = ngram_metrics(text, {text}, gw);
    CHECK(scores.rouge_1 == doctest::Approx(1.0));
    CHECK(scores.rouge_2 == doctest::Approx(1.0));
    CHECK(scores.rouge_l == doctest::Approx(1.0));
    CHECK(scores.bleu_2 == doctest::Approx(1.0));
    CHECK(scores.bleu_4 == doctest::Approx(1.0));
    CHECK(scores.bert_score == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("multi-reference scores take the best reference") {
    auto gw = pbtest::make_mock_gateway();
    const auto scores =
        ngram_metrics("a b c d", {"w x y z", "a b c d"}, gw);
    CHECK(scores.rouge_1 == doctest::Approx(1.0));
    CHECK(scores.bleu_4 == doctest::Approx(1.0));
}

TEST_CASE("bleu applies the brevity penalty") {
    auto gw = pbtest::make_mock_gateway();
    // Candidate is half the reference length with perfect bigram precision.
    const auto scores = ngram_metrics("a b c d", {"a b c d e f g h"}, gw);
    CHECK(scores.bleu_2 < 1.0);
    CHECK(scores.bleu_2 == doctest::Approx(std::exp(1.0 - 8.0 / 4.0)).epsilon(1e-9));
    // No shared bigrams at all -> bleu collapses to zero.
    const auto zero = ngram_metrics("a b", {"c d"}, gw);
    CHECK(zero.bleu_2 == 0.0);
}

TEST_CASE("empty candidate or reference set is a precondition error") {
    auto gw = pbtest::make_mock_gateway();
    CHECK_THROWS_AS((void)ngram_metrics("", {"a"}, gw), PreconditionError);
    CHECK_THROWS_AS((void)ngram_metrics("a", {}, gw), PreconditionError);
}

TEST_CASE("pearson on exact linear data") {
    CHECK(pearson({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0));
    CHECK(pearson({1, 2, 3}, {6, 4, 2}) == doctest::Approx(-1.0));
    CHECK_THROWS_AS((void)pearson({1, 2}, {2, 4}), PreconditionError);       // n < 3
    CHECK_THROWS_AS((void)pearson({1, 2, 3}, {2, 4}), PreconditionError);    // mismatch
    CHECK_THROWS_AS((void)pearson({1, 1, 1}, {2, 4, 6}), UndefinedMetricError);
}

TEST_CASE("leaderboard column set matches the published table layout") {
    const auto& cols = leaderboard_columns();
    const std::vector<std::string> expected = {
        "summary_coverage", "strength_recall", "strength_precision", "strength_f1",
        "strength_kl",      "weakness_recall", "weakness_precision", "weakness_f1",
        "weakness_kl",      "question_qs",     "question_kl",        "ai_rate",
        "ai_bs",            "rating_mae",
    };
    REQUIRE(cols.size() == expected.size());
    for (std::size_t i = 0; i < cols.size(); ++i) CHECK(cols[i].key == expected[i]);
    // Error-like columns aggregate downward.
    for (const auto& c : cols) {
        if (c.key == "rating_mae" || c.key == "ai_rate" || c.key.find("_kl") != std::string::npos) {
            CHECK_FALSE(c.higher_is_better);
        }
    }
}

TEST_CASE("undefined cells render as '/' and never win best flags") {
    Scorecard a = card_with("model-a", 0.5, 1.0);
    a.summary_coverage = 3.0;
    Scorecard b = card_with("model-b", 0.75, 2.0);
    // b leaves summary_coverage undefined.
    const auto board = build_leaderboard({a, b});

    std::istringstream csv(board.csv);
    std::string header, row_a, row_b;
    std::getline(csv, header);
    std::getline(csv, row_a);
    std::getline(csv, row_b);
    CHECK(header.rfind("model,group,", 0) == 0);
    CHECK(row_a.rfind("model-a,", 0) == 0);
    CHECK(row_b.find("/") != std::string::npos);

    REQUIRE(board.rows.size() == 2);
    const auto& jb = board.rows[1];
    CHECK(jb.at("model") == "model-b");
    CHECK(jb.at("metrics").at("summary_coverage").is_null());
    CHECK(jb.at("best").at("summary_coverage") == false);
    CHECK(jb.at("best").at("weakness_recall") == true);   // 0.75 beats 0.5
    CHECK(board.rows[0].at("best").at("rating_mae") == true);  // lower wins
    CHECK(board.rows[0].at("best").at("summary_coverage") == true);

    CHECK(board.text.find("model-a") != std::string::npos);
    CHECK(board.text.find("/") != std::string::npos);
    CHECK_THROWS_AS((void)build_leaderboard({}), PreconditionError);
}

TEST_CASE("best flags are computed within groups") {
    Scorecard a = card_with("open-1", 0.5, 1.0);
    a.group = "open";
    Scorecard b = card_with("open-2", 0.6, 2.0);
    b.group = "open";
    Scorecard c = card_with("closed-1", 0.4, 3.0);
    c.group = "closed";
    const auto board = build_leaderboard({a, b, c});
    // closed-1 has the worst recall overall but the best in its own group.
    for (const auto& row : board.rows) {
        if (row.at("model") == "closed-1") {
            CHECK(row.at("best").at("weakness_recall") == true);
        }
        if (row.at("model") == "open-1") {
            CHECK(row.at("best").at("weakness_recall") == false);
        }
    }
}

TEST_CASE("correlation against rating mae selects defined pairs") {
    std::vector<Scorecard> cards;
    // Strong negative relationship between recall and MAE.
    const std::vector<std::pair<double, double>> data = {
        {0.9, 0.5}, {0.8, 0.9}, {0.6, 1.4}, {0.4, 1.9}, {0.2, 2.4}};
    int i = 0;
    for (const auto& [recall, mae] : data) {
        cards.push_back(card_with("m" + std::to_string(i++), recall, mae));
    }
    // One card without MAE must be skipped, not crash.
    Scorecard no_mae;
    no_mae.model_name = "m-undefined";
    no_mae.weakness.recall = 0.99;
    cards.push_back(no_mae);

    const auto rows = correlation_vs_mae(cards);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].metric == "weakness_recall");
    CHECK(rows[0].n == 5);
    CHECK(rows[0].r < -0.95);
}

TEST_CASE("correlation honors an explicit model subset") {
    std::vector<Scorecard> cards;
    cards.push_back(card_with("a", 0.9, 0.5));
    cards.push_back(card_with("b", 0.8, 0.9));
    cards.push_back(card_with("c", 0.6, 1.4));
    cards.push_back(card_with("d", 0.1, 0.1));  // off-trend outlier
    const auto all = correlation_vs_mae(cards);
    const auto subset = correlation_vs_mae(cards, {"a", "b", "c"});
    REQUIRE(subset.size() == 1);
    CHECK(subset[0].n == 3);
    REQUIRE(all.size() == 1);
    CHECK(all[0].n == 4);
    CHECK(subset[0].r < all[0].r - 0.01);  // dropping the outlier tightens the fit
}

TEST_CASE("degenerate correlation columns are skipped silently") {
    std::vector<Scorecard> cards;
    for (int i = 0; i < 4; ++i) {
        auto c = card_with("m" + std::to_string(i), 0.5, 0.5 + 0.25 * i);
        cards.push_back(c);  // recall constant -> zero variance -> skipped
    }
    CHECK(correlation_vs_mae(cards).empty());
}

}  // TEST_SUITE
