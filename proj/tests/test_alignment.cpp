#include <doctest.h>

#include "peerbench/alignment_metrics.hpp"
#include "peerbench/errors.hpp"

using namespace peerbench;
using namespace peerbench::align;

namespace {

MatchMatrix matrix(std::size_t rows, std::size_t cols,
                   const std::vector<std::vector<int>>& entries) {
    MatchMatrix m;
    for (std::size_t i = 0; i < rows; ++i) {
        AtomicPoint p;
        p.text = "a" + std::to_string(i);
        p.field_kind = FieldKind::Weakness;
        m.ai_points.push_back(p);
    }
    for (std::size_t j = 0; j < cols; ++j) {
        AtomicPoint p;
        p.text = "h" + std::to_string(j);
        p.field_kind = FieldKind::Weakness;
        m.human_points.push_back(p);
    }
    for (const auto& row : entries) {
        m.entries.emplace_back(row.begin(), row.end());
    }
    validate_matrix(m);
    return m;
}

}  // namespace

TEST_SUITE("alignment") {

TEST_CASE("precision is the row-max mean: three rows with maxima 1,1,0") {
    const auto m = matrix(3, 2, {{1, 0}, {0, 1}, {0, 0}});
    const auto p = precision(m);
    REQUIRE(p.has_value());
    CHECK(*p == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("precision with no AI points is undefined") {
    const auto m = matrix(0, 3, {});
    CHECK_FALSE(precision(m).has_value());
}

TEST_CASE("precision against zero human points is zero") {
    // Rows exist but there is nothing to match against.
    const auto m = matrix(2, 0, {{}, {}});
    const auto p = precision(m);
    REQUIRE(p.has_value());
    CHECK(*p == 0.0);
}

TEST_CASE("max_recall picks the best-covered reviewer: 3/4 vs 1/2") {
    // Reviewer 1: 4 points, 3 covered by some AI row.
    const auto r1 = matrix(2, 4, {{1, 0, 1, 0}, {0, 0, 1, 1}});
    // Reviewer 2: 2 points, 1 covered.
    const auto r2 = matrix(2, 2, {{1, 0}, {0, 0}});
    const auto mr = max_recall({r1, r2});
    REQUIRE(mr.has_value());
    CHECK(*mr == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("reviewers with zero points are skipped, all-empty is undefined") {
    const auto empty = matrix(2, 0, {{}, {}});
    const auto half = matrix(2, 2, {{1, 0}, {0, 0}});
    const auto mr = max_recall({empty, half});
    REQUIRE(mr.has_value());
    CHECK(*mr == doctest::Approx(0.5));
    CHECK_FALSE(max_recall({empty, empty}).has_value());
    CHECK_FALSE(max_recall({}).has_value());
}

TEST_CASE("f1 worked values") {
    CHECK(f1(0.30, 0.42) == doctest::Approx(0.35).epsilon(1e-9));
    CHECK(f1(0.0, 0.0) == 0.0);
    CHECK(f1(1.0, 1.0) == doctest::Approx(1.0));
    CHECK(f1(0.0, 0.9) == 0.0);
}

TEST_CASE("f1 rejects out-of-range inputs") {
    CHECK_THROWS_AS((void)f1(-0.1, 0.5), RangeError);
    CHECK_THROWS_AS((void)f1(0.5, 1.0001), RangeError);
}

}  // TEST_SUITE
