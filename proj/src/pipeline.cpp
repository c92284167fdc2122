#include "peerbench/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "peerbench/alignment_metrics.hpp"
#include "peerbench/chunk_embed.hpp"
#include "peerbench/errors.hpp"
#include "peerbench/focus_metrics.hpp"
#include "peerbench/point_pipeline.hpp"
#include "peerbench/scorecard.hpp"

namespace peerbench::pipeline {

namespace {

nlohmann::json optional_to_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json field_eval_to_json(const PaperEvaluation::FieldEval& f) {
    nlohmann::json reviewers = nlohmann::json::array();
    for (const auto& pts : f.human_points) {
        reviewers.push_back(points::points_to_json(pts));
    }
    return nlohmann::json{
        {"ai_points", points::points_to_json(f.ai_points)},
        {"human_points_per_reviewer", reviewers},
        {"precision", optional_to_json(f.precision)},
        {"recall", optional_to_json(f.recall)},
        {"f1", optional_to_json(f.f1)},
    };
}

double mean_int(const std::vector<int>& values) {
    double total = 0.0;
    for (int v : values) total += v;
    return total / static_cast<double>(values.size());
}

struct Accumulator {
    double total = 0.0;
    std::size_t count = 0;

    void add(const std::optional<double>& v) {
        if (v) {
            total += *v;
            ++count;
        }
    }
    std::optional<double> mean() const {
        if (count == 0) return std::nullopt;
        return total / static_cast<double>(count);
    }
};

void count_categories(std::array<std::size_t, kCategoryCount>& counts,
                      const std::vector<AtomicPoint>& points) {
    for (const auto& p : points) {
        counts[static_cast<std::size_t>(p.category)] += 1;
    }
}

std::optional<double> pooled_kl(const std::array<std::size_t, kCategoryCount>& human,
                                const std::array<std::size_t, kCategoryCount>& ai) {
    std::size_t h_total = 0;
    std::size_t a_total = 0;
    for (std::size_t i = 0; i < kCategoryCount; ++i) {
        h_total += human[i];
        a_total += ai[i];
    }
    if (h_total == 0 || a_total == 0) return std::nullopt;
    return focus::kl_divergence(focus::distribution_from_counts(human),
                                focus::distribution_from_counts(ai));
}

}  // namespace

nlohmann::json PaperEvaluation::to_json() const {
    nlohmann::json questions_json = nlohmann::json::array();
    for (const auto& sq : scored_questions) {
        nlohmann::json verdicts = nlohmann::json::array();
        for (const auto& v : sq.ground.verdicts) {
            verdicts.push_back({{"chunk_index", v.chunk_index}, {"has_info", v.has_info}});
        }
        questions_json.push_back({
            {"question", sq.point.text},
            {"category", std::string(to_string(sq.point.category))},
            {"type", std::string(to_string(sq.ground.type))},
            {"conf", sq.ground.conf},
            {"cons", sq.ground.cons},
            {"verdicts", verdicts},
        });
    }
    nlohmann::json bs_fields = nlohmann::json::array();
    for (const auto& f : bs.fields) {
        bs_fields.push_back({
            {"field", f.field},
            {"score", optional_to_json(f.score)},
            {"skip_reason", f.skip_reason},
        });
    }
    return nlohmann::json{
        {"schema_version", kSchemaVersion},
        {"paper_id", paper_id},
        {"coverage", optional_to_json(coverage)},
        {"strength", field_eval_to_json(strength)},
        {"weakness", field_eval_to_json(weakness)},
        {"questions", questions_json},
        {"question_score", optional_to_json(question_score)},
        {"bs", optional_to_json(bs.bs)},
        {"bs_fields", bs_fields},
        {"predicted_rating", predicted_rating},
        {"reference_rating", reference_rating},
        {"predicted_soundness", predicted_soundness},
        {"predicted_presentation", predicted_presentation},
        {"predicted_contribution", predicted_contribution},
        {"reference_soundness", reference_soundness},
        {"reference_presentation", reference_presentation},
        {"reference_contribution", reference_contribution},
    };
}

namespace {

PaperEvaluation evaluate_paper(const PaperRecord& paper, const Review& generated,
                               judge::Gateway& gateway, const EvaluateOptions& options) {
    PaperEvaluation eval;
    eval.paper_id = paper.paper_id;

    const auto index =
        chunks::build_index(paper.body_markdown, gateway, options.window, options.overlap);
    eval.coverage =
        chunks::coverage_score(generated.summary, index, gateway, options.coverage_k);

    auto run_field = [&](FieldKind kind, const std::string& ai_text,
                         auto human_text_of) -> PaperEvaluation::FieldEval {
        PaperEvaluation::FieldEval f;
        f.ai_points = points::extract_points(ai_text, kind, gateway);
        for (const auto& review : paper.human_reviews) {
            auto pts = points::extract_points(human_text_of(review), kind, gateway);
            for (const auto& p : pts) f.human_points_pooled.push_back(p);
            f.human_points.push_back(std::move(pts));
        }
        const auto pooled =
            points::build_match_matrix(f.ai_points, f.human_points_pooled, gateway);
        f.precision = align::precision(pooled);
        std::vector<MatchMatrix> per_reviewer;
        per_reviewer.reserve(f.human_points.size());
        for (const auto& pts : f.human_points) {
            per_reviewer.push_back(points::build_match_matrix(f.ai_points, pts, gateway));
        }
        f.recall = align::max_recall(per_reviewer);
        if (f.precision && f.recall) {
            f.f1 = align::f1(*f.precision, *f.recall);
        }
        return f;
    };

    eval.strength = run_field(FieldKind::Strength, generated.strengths,
                              [](const Review& r) { return r.strengths; });
    eval.weakness = run_field(FieldKind::Weakness, generated.weaknesses,
                              [](const Review& r) { return r.weaknesses; });

    eval.ai_question_points =
        points::extract_points(generated.questions, FieldKind::Question, gateway);
    for (const auto& review : paper.human_reviews) {
        for (auto& p :
             points::extract_points(review.questions, FieldKind::Question, gateway)) {
            eval.human_question_points.push_back(std::move(p));
        }
    }
    eval.scored_questions = questions::evaluate_questions(eval.ai_question_points, index,
                                                          gateway, options.retrieval_k);
    eval.question_score =
        questions::question_score(eval.scored_questions, options.qs_exclude_other);

    eval.bs = ai::review_bs(generated, gateway);

    eval.predicted_rating = generated.rating;
    eval.predicted_soundness = generated.soundness;
    eval.predicted_presentation = generated.presentation;
    eval.predicted_contribution = generated.contribution;
    std::vector<int> ratings;
    std::vector<int> soundness;
    std::vector<int> presentation;
    std::vector<int> contribution;
    for (const auto& r : paper.human_reviews) {
        ratings.push_back(r.rating);
        soundness.push_back(r.soundness);
        presentation.push_back(r.presentation);
        contribution.push_back(r.contribution);
    }
    if (ratings.empty()) {
        throw PreconditionError("paper " + paper.paper_id + " has no human reviews");
    }
    eval.reference_rating = mean_int(ratings);
    eval.reference_soundness = mean_int(soundness);
    eval.reference_presentation = mean_int(presentation);
    eval.reference_contribution = mean_int(contribution);
    return eval;
}

}  // namespace

ModelEvaluation evaluate_model(const std::vector<PaperRecord>& corpus,
                               const std::vector<io::GeneratedReview>& reviews,
                               const std::string& model_name, judge::Gateway& gateway,
                               const EvaluateOptions& options) {
    std::map<std::string, const PaperRecord*> by_id;
    for (const auto& p : corpus) by_id[p.paper_id] = &p;

    // One review per paper for this model, in sorted paper_id order.
    std::map<std::string, const io::GeneratedReview*> selected;
    for (const auto& gr : reviews) {
        if (gr.model_name != model_name) continue;
        if (!by_id.count(gr.paper_id)) {
            throw SchemaError("review references unknown paper: " + gr.paper_id);
        }
        if (!selected.emplace(gr.paper_id, &gr).second) {
            throw SchemaError("duplicate review for paper " + gr.paper_id + " by model " +
                              model_name);
        }
    }
    if (selected.empty()) {
        throw PreconditionError("no reviews found for model " + model_name);
    }

    std::vector<std::pair<const PaperRecord*, const io::GeneratedReview*>> work;
    work.reserve(selected.size());
    for (const auto& [paper_id, gr] : selected) {
        work.emplace_back(by_id.at(paper_id), gr);
    }

    std::vector<PaperEvaluation> results(work.size());
    const int workers = std::max(1, options.parallelism);
    if (workers == 1) {
        for (std::size_t i = 0; i < work.size(); ++i) {
            results[i] = evaluate_paper(*work[i].first, work[i].second->review, gateway,
                                        options);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= work.size()) return;
                try {
                    results[i] = evaluate_paper(*work[i].first, work[i].second->review,
                                                gateway, options);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    // Sequential aggregation in sorted paper order.
    ModelEvaluation out;
    out.papers = std::move(results);
    for (auto& counts : {"ai_strength", "human_strength", "ai_weakness", "human_weakness",
                         "ai_question", "human_question"}) {
        out.category_counts[counts] = {};
    }

    Accumulator coverage;
    Accumulator s_precision;
    Accumulator s_recall;
    Accumulator s_f1;
    Accumulator w_precision;
    Accumulator w_recall;
    Accumulator w_f1;
    Accumulator qs;
    std::vector<std::optional<double>> bs_values;
    std::vector<std::pair<int, double>> rating_pairs;
    double soundness_err = 0.0;
    double presentation_err = 0.0;
    double contribution_err = 0.0;

    for (const auto& eval : out.papers) {
        coverage.add(eval.coverage);
        s_precision.add(eval.strength.precision);
        s_recall.add(eval.strength.recall);
        s_f1.add(eval.strength.f1);
        w_precision.add(eval.weakness.precision);
        w_recall.add(eval.weakness.recall);
        w_f1.add(eval.weakness.f1);
        qs.add(eval.question_score);
        bs_values.push_back(eval.bs.bs);
        rating_pairs.emplace_back(eval.predicted_rating, eval.reference_rating);
        soundness_err += std::abs(eval.predicted_soundness - eval.reference_soundness);
        presentation_err +=
            std::abs(eval.predicted_presentation - eval.reference_presentation);
        contribution_err +=
            std::abs(eval.predicted_contribution - eval.reference_contribution);

        count_categories(out.category_counts["ai_strength"], eval.strength.ai_points);
        count_categories(out.category_counts["human_strength"],
                         eval.strength.human_points_pooled);
        count_categories(out.category_counts["ai_weakness"], eval.weakness.ai_points);
        count_categories(out.category_counts["human_weakness"],
                         eval.weakness.human_points_pooled);
        count_categories(out.category_counts["ai_question"], eval.ai_question_points);
        count_categories(out.category_counts["human_question"], eval.human_question_points);
    }

    Scorecard card;
    card.model_name = model_name;
    card.group = "default";
    card.summary_coverage = coverage.mean();
    card.strength.precision = s_precision.mean();
    card.strength.recall = s_recall.mean();
    card.strength.f1 = s_f1.mean();
    card.strength.kl = pooled_kl(out.category_counts["human_strength"],
                                 out.category_counts["ai_strength"]);
    card.weakness.precision = w_precision.mean();
    card.weakness.recall = w_recall.mean();
    card.weakness.f1 = w_f1.mean();
    card.weakness.kl = pooled_kl(out.category_counts["human_weakness"],
                                 out.category_counts["ai_weakness"]);
    card.question_qs = qs.mean();
    card.question_kl = pooled_kl(out.category_counts["human_question"],
                                 out.category_counts["ai_question"]);
    card.ai_rate = ai::ai_rate(bs_values);
    Accumulator bs_mean;
    for (const auto& bs : bs_values) bs_mean.add(bs);
    card.ai_bs = bs_mean.mean();
    card.rating_mae = score::rating_mae(rating_pairs);
    const auto n = static_cast<double>(out.papers.size());
    card.soundness_mae = soundness_err / n;
    card.presentation_mae = presentation_err / n;
    card.contribution_mae = contribution_err / n;
    validate_scorecard(card, static_cast<double>(options.coverage_k));
    out.card = card;
    return out;
}

std::vector<ModelEvaluation> evaluate_all(const std::vector<PaperRecord>& corpus,
                                          const std::vector<io::GeneratedReview>& reviews,
                                          judge::Gateway& gateway,
                                          const EvaluateOptions& options) {
    std::set<std::string> models;
    for (const auto& gr : reviews) models.insert(gr.model_name);
    if (models.empty()) {
        throw PreconditionError("review file contains no reviews");
    }
    std::vector<ModelEvaluation> out;
    for (const auto& model : models) {
        out.push_back(evaluate_model(corpus, reviews, model, gateway, options));
    }
    return out;
}

std::string sanitize_component(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    for (char c : name) {
        const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '.' ||
                        c == '_' || c == '-';
        out.push_back(ok ? c : '_');
    }
    if (out.empty()) out = "model";
    return out;
}

void write_evaluation(const std::filesystem::path& out_dir, const ModelEvaluation& eval) {
    const auto model_dir = out_dir / sanitize_component(eval.card.model_name);
    std::filesystem::create_directories(model_dir / "papers");

    io::write_file(model_dir / "scorecard.json", scorecard_to_json(eval.card).dump(2) + "\n");

    for (const auto& paper : eval.papers) {
        io::write_file(model_dir / "papers" / (sanitize_component(paper.paper_id) + ".json"),
                       paper.to_json().dump(2) + "\n");
    }

    std::ostringstream field_csv;
    field_csv << "paper_id,field,score,skip_reason\n";
    for (const auto& paper : eval.papers) {
        for (const auto& f : paper.bs.fields) {
            field_csv << paper.paper_id << "," << f.field << ",";
            if (f.score) {
                field_csv << std::setprecision(12) << *f.score;
            }
            field_csv << ",\"" << f.skip_reason << "\"\n";
        }
    }
    io::write_file(model_dir / "field_scores.csv", field_csv.str());

    std::ostringstream dist_csv;
    dist_csv << "source,count";
    for (std::size_t i = 0; i < kCategoryCount; ++i) {
        dist_csv << "," << to_string(static_cast<Category>(i));
    }
    dist_csv << "\n";
    for (const auto& [source, counts] : eval.category_counts) {
        std::size_t total = 0;
        for (auto c : counts) total += c;
        dist_csv << source << "," << total;
        for (auto c : counts) {
            if (total == 0) {
                dist_csv << ",0";
            } else {
                dist_csv << "," << std::setprecision(6)
                         << (static_cast<double>(c) / static_cast<double>(total));
            }
        }
        dist_csv << "\n";
    }
    io::write_file(model_dir / "distributions.csv", dist_csv.str());
}

}  // namespace peerbench::pipeline
