#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace peerbench {

inline constexpr int kSchemaVersion = 1;

enum class Venue { ICLR, NeurIPS };
enum class Decision { Accept, Reject, Unknown };
enum class ReviewOrigin { Human, Generated };
enum class FieldKind { Strength, Weakness, Question };
enum class QuestionType { Explain, Supplement, Other };

// The 8 evaluation dimensions every atomic point is labeled with.
enum class Category {
    Novelty,
    Soundness,
    Experiments,
    Clarity,
    Significance,
    Reproducibility,
    RelatedWork,
    Other,
};
inline constexpr std::size_t kCategoryCount = 8;

// Standardized rating scale S. All venue scales map into this set.
inline constexpr std::array<int, 6> kRatingScale{1, 3, 5, 6, 8, 10};
bool is_valid_rating(int rating);

std::string_view to_string(Venue v);
std::string_view to_string(Decision d);
std::string_view to_string(ReviewOrigin o);
std::string_view to_string(FieldKind k);
std::string_view to_string(QuestionType t);
std::string_view to_string(Category c);

Venue venue_from_string(std::string_view s);
Decision decision_from_string(std::string_view s);
ReviewOrigin origin_from_string(std::string_view s);
FieldKind field_kind_from_string(std::string_view s);
QuestionType question_type_from_string(std::string_view s);

// Lenient on case and spacing ("related work" == "RelatedWork");
// throws TaxonomyError on anything outside the 8-label set.
Category category_from_string(std::string_view s);

// One structured review: four text fields, four 1-4/S-scale integers,
// confidence, and provenance.
struct Review {
    std::string summary;
    std::string strengths;
    std::string weaknesses;
    std::string questions;
    int soundness = 0;
    int presentation = 0;
    int contribution = 0;
    int rating = 0;
    int confidence = 0;
    ReviewOrigin origin = ReviewOrigin::Human;
    std::optional<std::string> model_name;

    bool operator==(const Review&) const = default;
};

// Parses and range-checks a JSON review object (the nine keys: summary,
// strengths, weaknesses, questions, soundness, presentation, contribution,
// rating, confidence). The caller tags the origin. Generated reviews must
// fill all four text fields; human legacy data may leave them empty.
//
// Throws SchemaError naming the missing/ill-typed field, RangeError with
// the offending value.
Review validate_review(const nlohmann::json& raw, ReviewOrigin origin);

// Serializes exactly the nine schema keys.
nlohmann::json review_to_json(const Review& review);

// One self-contained evaluative claim extracted from a review field.
struct AtomicPoint {
    std::string text;
    Category category = Category::Other;
    FieldKind field_kind = FieldKind::Strength;
    // Present iff field_kind == Question.
    std::optional<QuestionType> question_type;

    bool operator==(const AtomicPoint&) const = default;
};

// Throws if the point violates its invariants (empty text, question_type
// presence mismatched with field_kind).
void validate_point(const AtomicPoint& point);

// One submission paper plus its human reference reviews.
struct PaperRecord {
    std::string paper_id;
    Venue venue = Venue::ICLR;
    int year = 0;
    std::string body_markdown;   // post-exclusion body
    Decision decision = Decision::Unknown;
    std::vector<Review> human_reviews;
};

// Binary judged-overlap matrix between an AI point set and one human
// point set. entries[i][j] == 1 iff ai_points[i] matches human_points[j].
struct MatchMatrix {
    std::vector<AtomicPoint> ai_points;
    std::vector<AtomicPoint> human_points;
    std::vector<std::vector<std::uint8_t>> entries;

    std::size_t rows() const { return ai_points.size(); }
    std::size_t cols() const { return human_points.size(); }
};

// Throws if dimensions disagree with the point lists or an entry is not 0/1.
void validate_matrix(const MatchMatrix& m);

struct MetricBlock {
    std::optional<double> recall;
    std::optional<double> precision;
    std::optional<double> f1;
    std::optional<double> kl;
};

// Per-model aggregate of every metric family; one leaderboard row.
// Undefined metrics stay nullopt and render as "/".
struct Scorecard {
    std::string model_name;
    std::string group;  // leaderboard grouping; empty = default group
    std::optional<double> summary_coverage;
    MetricBlock strength;
    MetricBlock weakness;
    std::optional<double> question_qs;
    std::optional<double> question_kl;
    std::optional<double> ai_rate;
    std::optional<double> ai_bs;
    std::optional<double> rating_mae;
    // Optional plumbing: per-subscore MAEs (no headline metric uses these).
    std::optional<double> soundness_mae;
    std::optional<double> presentation_mae;
    std::optional<double> contribution_mae;
};

// Range checks: recall/precision/f1/qs/rate in [0,1], kl >= 0, mae >= 0,
// |summary_coverage| <= coverage_k.
void validate_scorecard(const Scorecard& card, double coverage_k = 5.0);

nlohmann::json scorecard_to_json(const Scorecard& card);
Scorecard scorecard_from_json(const nlohmann::json& j);

}  // namespace peerbench
