#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "peerbench/config.hpp"
#include "peerbench/corpus_builder.hpp"
#include "peerbench/errors.hpp"
#include "peerbench/io.hpp"
#include "peerbench/pipeline.hpp"
#include "peerbench/scorecard.hpp"
#include "peerbench/toml_lite.hpp"

namespace {

using namespace peerbench;

struct GlobalArgs {
    std::optional<std::filesystem::path> config_path;
    std::optional<std::filesystem::path> cache_dir;
    bool offline = false;
    std::optional<unsigned> seed;
    std::optional<int> parallelism;
};

config::Config resolve_config(const GlobalArgs& args) {
    auto cfg = config::load(args.config_path);
    if (args.cache_dir) cfg.gateway.cache_dir = *args.cache_dir;
    if (args.offline) cfg.gateway.offline = true;
    if (args.seed) cfg.seed = *args.seed;
    if (args.parallelism) {
        cfg.evaluate.parallelism = *args.parallelism;
        cfg.gateway.max_concurrent = std::max(cfg.gateway.max_concurrent, *args.parallelism);
    }
    return cfg;
}

judge::Gateway make_gateway(const config::Config& cfg) {
    return judge::Gateway(config::make_provider(cfg), cfg.gateway);
}

corpus::FilterPolicy load_policy(const std::filesystem::path& path, corpus::RatingMap& map) {
    const auto doc = toml::parse(io::read_file(path));
    corpus::FilterPolicy policy;
    auto it = doc.tables.find("filter");
    if (it != doc.tables.end()) {
        const auto& t = it->second;
        if (t.has("min_confidence")) {
            policy.min_confidence = static_cast<int>(t.get_int("min_confidence"));
        }
        if (t.has("allowed_review_counts")) {
            policy.allowed_review_counts.clear();
            for (auto v : t.get_int_array("allowed_review_counts")) {
                policy.allowed_review_counts.insert(static_cast<int>(v));
            }
        }
        if (t.has("max_variance")) {
            policy.max_variance = t.get_double("max_variance");
        }
    }
    auto lists = doc.lists.find("rating");
    if (lists != doc.lists.end()) {
        for (const auto& entry : lists->second) {
            map.add(venue_from_string(entry.get_string("venue")),
                    static_cast<int>(entry.get_int("year")), entry.get_string("raw"),
                    static_cast<int>(entry.get_int("target")));
        }
    }
    policy.validate();
    return policy;
}

int run_build_corpus(const GlobalArgs& globals, const std::filesystem::path& in_path,
                     const std::filesystem::path& out_path,
                     const std::optional<std::filesystem::path>& policy_path) {
    const auto cfg = resolve_config(globals);
    auto rating_map = corpus::default_rating_map();
    corpus::FilterPolicy policy;
    if (policy_path) {
        policy = load_policy(*policy_path, rating_map);
    }

    std::optional<judge::Gateway> gateway;  // built lazily, only for splits

    std::vector<PaperRecord> records;
    for (const auto& raw : io::load_raw_papers(in_path)) {
        PaperRecord record;
        record.paper_id = raw.paper_id;
        record.venue = raw.venue;
        record.year = raw.year;
        const auto pre = corpus::preprocess_paper(raw.body_markdown);
        if (pre.no_headings_warning) {
            std::cerr << "warning: no headings found in paper " << raw.paper_id
                      << "; body kept unchanged\n";
        }
        record.body_markdown = pre.body;
        record.decision = corpus::normalize_decision(raw.raw_decision);
        for (const auto& raw_review : raw.reviews) {
            nlohmann::json fields = raw_review.fields;
            if (raw_review.combined_assessment &&
                fields.value("strengths", std::string()).empty() &&
                fields.value("weaknesses", std::string()).empty()) {
                if (!gateway) gateway.emplace(config::make_provider(cfg), cfg.gateway);
                const auto [strengths, weaknesses] =
                    gateway->split_combined_assessment(*raw_review.combined_assessment);
                fields["strengths"] = strengths;
                fields["weaknesses"] = weaknesses;
            }
            int rating = 0;
            if (raw_review.raw_rating.is_number_integer()) {
                rating = corpus::standardize_rating(raw_review.raw_rating.get<int>(),
                                                    record.venue, record.year, rating_map);
            } else {
                rating = corpus::standardize_rating(raw_review.raw_rating.get<std::string>(),
                                                    record.venue, record.year, rating_map);
            }
            fields["rating"] = rating;
            fields.erase("combined_assessment");
            record.human_reviews.push_back(validate_review(fields, ReviewOrigin::Human));
        }
        records.push_back(std::move(record));
    }

    std::vector<corpus::DropRecord> drops;
    const auto filtered = corpus::filter_corpus(records, policy, &drops);
    io::save_corpus(out_path, filtered);
    auto drop_path = out_path;
    drop_path.replace_extension(".drops.jsonl");
    io::save_drop_log(drop_path, drops);
    std::cout << filtered.size() << " of " << records.size() << " papers kept; drop log at "
              << drop_path.string() << "\n";
    return 0;
}

int run_generate(const GlobalArgs& globals, const std::filesystem::path& corpus_path,
                 const std::string& model, const std::string& style,
                 const std::filesystem::path& out_path) {
    auto cfg = resolve_config(globals);
    if (cfg.provider == "http" && !model.empty()) {
        cfg.http.chat_model = model;
    }
    auto gateway = make_gateway(cfg);
    const auto style_enum = judge::review_style_from_string(style);

    std::vector<io::GeneratedReview> reviews;
    for (const auto& paper : io::load_corpus(corpus_path)) {
        io::GeneratedReview gr;
        gr.paper_id = paper.paper_id;
        gr.model_name = model;
        gr.style = style;
        gr.review = gateway.generate_review(paper.body_markdown, style_enum);
        gr.review.model_name = model;
        reviews.push_back(std::move(gr));
    }
    io::save_reviews(out_path, reviews);
    std::cout << reviews.size() << " reviews written to " << out_path.string() << "\n";
    return 0;
}

int run_evaluate(const GlobalArgs& globals, const std::filesystem::path& corpus_path,
                 const std::filesystem::path& reviews_path,
                 const std::filesystem::path& out_dir) {
    const auto cfg = resolve_config(globals);
    auto gateway = make_gateway(cfg);
    const auto corpus = io::load_corpus(corpus_path);
    const auto reviews = io::load_reviews(reviews_path);
    const auto evaluations = pipeline::evaluate_all(corpus, reviews, gateway, cfg.evaluate);

    nlohmann::json models = nlohmann::json::array();
    for (const auto& eval : evaluations) {
        pipeline::write_evaluation(out_dir, eval);
        models.push_back(eval.card.model_name);
    }
    nlohmann::json manifest{
        {"schema_version", kSchemaVersion},
        {"models", models},
        {"papers", corpus.size()},
        {"provider", gateway.provider_id()},
        {"seed", cfg.seed},
        {"parallelism", cfg.evaluate.parallelism},
    };
    io::write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
    std::cout << evaluations.size() << " scorecard(s) written under " << out_dir.string()
              << "\n";
    return 0;
}

int run_report(const GlobalArgs& globals, const std::filesystem::path& scores_dir,
               const std::string& format) {
    const auto cfg = resolve_config(globals);
    std::vector<Scorecard> cards;
    std::vector<std::filesystem::path> model_dirs;
    for (const auto& entry : std::filesystem::directory_iterator(scores_dir)) {
        if (!entry.is_directory()) continue;
        const auto card_path = entry.path() / "scorecard.json";
        if (!std::filesystem::exists(card_path)) continue;
        const auto j = nlohmann::json::parse(io::read_file(card_path));
        cards.push_back(scorecard_from_json(j));
        model_dirs.push_back(entry.path());
    }
    if (cards.empty()) {
        std::cerr << "no scorecard.json files found under " << scores_dir.string() << "\n";
        return 1;
    }
    std::sort(cards.begin(), cards.end(), [](const Scorecard& a, const Scorecard& b) {
        return a.model_name < b.model_name;
    });

    const auto board = score::build_leaderboard(cards);
    io::write_file(scores_dir / "leaderboard.csv", board.csv);
    io::write_file(scores_dir / "leaderboard.json",
                   nlohmann::json{{"schema_version", kSchemaVersion},
                                  {"rows", board.rows}}
                           .dump(2) +
                       "\n");
    io::write_file(scores_dir / "leaderboard.txt", board.text);

    const auto correlations = score::correlation_vs_mae(cards, cfg.correlation_models);
    std::ostringstream corr_csv;
    corr_csv << "metric,pearson_r,n\n";
    for (const auto& row : correlations) {
        corr_csv << row.metric << "," << row.r << "," << row.n << "\n";
    }
    io::write_file(scores_dir / "correlations.csv", corr_csv.str());
    if (!cfg.correlation_models.empty()) {
        std::cerr << "note: correlations computed over a " << cfg.correlation_models.size()
                  << "-model subset of " << cards.size() << " scorecards\n";
    }

    // Merge per-model distribution tables into one CSV with a model column.
    std::ostringstream dist_csv;
    bool wrote_header = false;
    for (std::size_t i = 0; i < model_dirs.size(); ++i) {
        const auto dist_path = model_dirs[i] / "distributions.csv";
        if (!std::filesystem::exists(dist_path)) continue;
        std::istringstream in(io::read_file(dist_path));
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (first) {
                if (!wrote_header) {
                    dist_csv << "model," << line << "\n";
                    wrote_header = true;
                }
                first = false;
                continue;
            }
            dist_csv << model_dirs[i].filename().string() << "," << line << "\n";
        }
    }
    io::write_file(scores_dir / "distributions.csv", dist_csv.str());

    if (format == "csv") {
        std::cout << board.csv;
    } else if (format == "json") {
        std::cout << nlohmann::json{{"schema_version", kSchemaVersion}, {"rows", board.rows}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << board.text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"peer-review evaluation harness"};
    app.require_subcommand(1);

    GlobalArgs globals;
    app.add_option("--config", globals.config_path, "JSON config file");
    app.add_option("--cache-dir", globals.cache_dir, "provider response cache directory");
    app.add_flag("--offline", globals.offline, "cache-only mode; any miss is an error");
    app.add_option("--seed", globals.seed, "run seed recorded in output manifests");
    app.add_option("--parallelism", globals.parallelism, "worker threads for evaluation");

    auto* build = app.add_subcommand("build-corpus", "standardize, clean, and filter raw papers");
    std::filesystem::path build_in;
    std::filesystem::path build_out;
    std::optional<std::filesystem::path> build_policy;
    build->add_option("--in", build_in, "raw papers JSONL")->required();
    build->add_option("--out", build_out, "filtered corpus JSONL")->required();
    build->add_option("--policy", build_policy, "filter policy TOML");

    auto* generate = app.add_subcommand("generate", "generate reviews for every corpus paper");
    std::filesystem::path gen_corpus;
    std::string gen_model = "mock/1";
    std::string gen_style = "strict";
    std::filesystem::path gen_out;
    generate->add_option("--corpus", gen_corpus, "corpus JSONL")->required();
    generate->add_option("--model", gen_model, "model identifier recorded in output");
    generate->add_option("--style", gen_style, "review style")
        ->check(CLI::IsMember({"strict", "neutral"}));
    generate->add_option("--out", gen_out, "generated reviews JSONL")->required();

    auto* evaluate = app.add_subcommand("evaluate", "score generated reviews against the corpus");
    std::filesystem::path eval_corpus;
    std::filesystem::path eval_reviews;
    std::filesystem::path eval_out;
    evaluate->add_option("--corpus", eval_corpus, "corpus JSONL")->required();
    evaluate->add_option("--reviews", eval_reviews, "generated reviews JSONL")->required();
    evaluate->add_option("--out", eval_out, "output scores directory")->required();

    auto* report = app.add_subcommand("report", "leaderboard and correlation tables");
    std::filesystem::path report_scores;
    std::string report_format = "text";
    report->add_option("--scores", report_scores, "scores directory from evaluate")->required();
    report->add_option("--format", report_format, "stdout format")
        ->check(CLI::IsMember({"csv", "json", "text"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) {
            return run_build_corpus(globals, build_in, build_out, build_policy);
        }
        if (generate->parsed()) {
            return run_generate(globals, gen_corpus, gen_model, gen_style, gen_out);
        }
        if (evaluate->parsed()) {
            return run_evaluate(globals, eval_corpus, eval_reviews, eval_out);
        }
        if (report->parsed()) {
            return run_report(globals, report_scores, report_format);
        }
    } catch (const peerbench::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
