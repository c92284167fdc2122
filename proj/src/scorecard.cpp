#include "peerbench/scorecard.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "peerbench/chunk_embed.hpp"
#include "peerbench/errors.hpp"

namespace peerbench::score {

double rating_mae(const std::vector<std::pair<int, double>>& pairs) {
    if (pairs.empty()) {
        throw PreconditionError("rating_mae over an empty pair list");
    }
    double total = 0.0;
    for (const auto& [predicted, reference] : pairs) {
        if (!is_valid_rating(predicted)) {
            throw RangeError("predicted rating " + std::to_string(predicted) +
                             " not in {1, 3, 5, 6, 8, 10}");
        }
        total += std::abs(static_cast<double>(predicted) - reference);
    }
    return total / static_cast<double>(pairs.size());
}

namespace {

std::vector<std::string> word_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::string current;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!current.empty()) {
                out.push_back(std::move(current));
                current.clear();
            }
        } else {
            current.push_back(
                static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

std::map<std::string, std::size_t> ngram_counts(const std::vector<std::string>& tokens,
                                                std::size_t n) {
    std::map<std::string, std::size_t> counts;
    if (tokens.size() < n) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string gram;
        for (std::size_t j = 0; j < n; ++j) {
            if (j > 0) gram.push_back('\x1f');
            gram += tokens[i + j];
        }
        counts[gram] += 1;
    }
    return counts;
}

double fmeasure(double matches, double cand_total, double ref_total) {
    if (cand_total == 0.0 || ref_total == 0.0) return 0.0;
    const double p = matches / cand_total;
    const double r = matches / ref_total;
    if (p + r == 0.0) return 0.0;
    return 2.0 * p * r / (p + r);
}

double rouge_n(const std::vector<std::string>& cand, const std::vector<std::string>& ref,
               std::size_t n) {
    const auto cc = ngram_counts(cand, n);
    const auto rc = ngram_counts(ref, n);
    double matches = 0.0;
    double cand_total = 0.0;
    double ref_total = 0.0;
    for (const auto& [gram, count] : cc) {
        cand_total += static_cast<double>(count);
        auto it = rc.find(gram);
        if (it != rc.end()) {
            matches += static_cast<double>(std::min(count, it->second));
        }
    }
    for (const auto& [gram, count] : rc) ref_total += static_cast<double>(count);
    return fmeasure(matches, cand_total, ref_total);
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<std::size_t> prev(b.size() + 1, 0);
    std::vector<std::size_t> curr(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            if (a[i - 1] == b[j - 1]) {
                curr[j] = prev[j - 1] + 1;
            } else {
                curr[j] = std::max(prev[j], curr[j - 1]);
            }
        }
        std::swap(prev, curr);
    }
    return prev[b.size()];
}

double rouge_l(const std::vector<std::string>& cand, const std::vector<std::string>& ref) {
    const double lcs = static_cast<double>(lcs_length(cand, ref));
    return fmeasure(lcs, static_cast<double>(cand.size()), static_cast<double>(ref.size()));
}

double bleu_n(const std::vector<std::string>& cand, const std::vector<std::string>& ref,
              std::size_t max_n) {
    if (cand.empty() || ref.empty()) return 0.0;
    double log_sum = 0.0;
    for (std::size_t n = 1; n <= max_n; ++n) {
        const auto cc = ngram_counts(cand, n);
        const auto rc = ngram_counts(ref, n);
        double matches = 0.0;
        double total = 0.0;
        for (const auto& [gram, count] : cc) {
            total += static_cast<double>(count);
            auto it = rc.find(gram);
            if (it != rc.end()) {
                matches += static_cast<double>(std::min(count, it->second));
            }
        }
        if (total == 0.0 || matches == 0.0) return 0.0;
        log_sum += std::log(matches / total) / static_cast<double>(max_n);
    }
    const double c = static_cast<double>(cand.size());
    const double r = static_cast<double>(ref.size());
    const double brevity = c >= r ? 1.0 : std::exp(1.0 - r / c);
    return brevity * std::exp(log_sum);
}

double bert_style_f(const std::vector<std::string>& cand, const std::vector<std::string>& ref,
                    judge::Gateway& gateway) {
    if (cand.empty() || ref.empty()) return 0.0;
    // Unique-token embeddings; the cache collapses repeats.
    auto embed_all = [&](const std::vector<std::string>& tokens) {
        std::vector<std::vector<double>> vecs;
        vecs.reserve(tokens.size());
        for (const auto& t : tokens) vecs.push_back(gateway.embed_one(t));
        return vecs;
    };
    const auto cv = embed_all(cand);
    const auto rv = embed_all(ref);
    auto greedy = [](const std::vector<std::vector<double>>& from,
                     const std::vector<std::vector<double>>& to) {
        double total = 0.0;
        for (const auto& f : from) {
            double best = -1.0;
            for (const auto& t : to) {
                best = std::max(best, chunks::cosine(f, t));
            }
            total += best;
        }
        return total / static_cast<double>(from.size());
    };
    const double p = greedy(cv, rv);
    const double r = greedy(rv, cv);
    if (p + r <= 0.0) return 0.0;
    return 2.0 * p * r / (p + r);
}

}  // namespace

NgramScores ngram_metrics(const std::string& candidate,
                          const std::vector<std::string>& references,
                          judge::Gateway& gateway) {
    if (candidate.empty()) {
        throw PreconditionError("candidate text is empty");
    }
    if (references.empty()) {
        throw PreconditionError("reference list is empty");
    }
    const auto cand = word_tokens(candidate);
    NgramScores best;
    for (const auto& reference : references) {
        const auto ref = word_tokens(reference);
        NgramScores s;
        s.rouge_1 = rouge_n(cand, ref, 1);
        s.rouge_2 = rouge_n(cand, ref, 2);
        s.rouge_l = rouge_l(cand, ref);
        s.bleu_2 = bleu_n(cand, ref, 2);
        s.bleu_4 = bleu_n(cand, ref, 4);
        s.bert_score = bert_style_f(cand, ref, gateway);
        best.rouge_1 = std::max(best.rouge_1, s.rouge_1);
        best.rouge_2 = std::max(best.rouge_2, s.rouge_2);
        best.rouge_l = std::max(best.rouge_l, s.rouge_l);
        best.bleu_2 = std::max(best.bleu_2, s.bleu_2);
        best.bleu_4 = std::max(best.bleu_4, s.bleu_4);
        best.bert_score = std::max(best.bert_score, s.bert_score);
    }
    return best;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) {
        throw PreconditionError("pearson inputs differ in length");
    }
    const std::size_t n = xs.size();
    if (n < 3) {
        throw PreconditionError("pearson requires at least 3 pairs");
    }
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw UndefinedMetricError("pearson undefined: zero variance input");
    }
    return sxy / std::sqrt(sxx * syy);
}

const std::vector<LeaderboardColumn>& leaderboard_columns() {
    static const std::vector<LeaderboardColumn> columns = {
        {"summary_coverage", true},
        {"strength_recall", true},
        {"strength_precision", true},
        {"strength_f1", true},
        {"strength_kl", false},
        {"weakness_recall", true},
        {"weakness_precision", true},
        {"weakness_f1", true},
        {"weakness_kl", false},
        {"question_qs", true},
        {"question_kl", false},
        {"ai_rate", false},
        {"ai_bs", true},
        {"rating_mae", false},
    };
    return columns;
}

namespace {

std::optional<double> column_value(const Scorecard& card, const std::string& key) {
    if (key == "summary_coverage") return card.summary_coverage;
    if (key == "strength_recall") return card.strength.recall;
    if (key == "strength_precision") return card.strength.precision;
    if (key == "strength_f1") return card.strength.f1;
    if (key == "strength_kl") return card.strength.kl;
    if (key == "weakness_recall") return card.weakness.recall;
    if (key == "weakness_precision") return card.weakness.precision;
    if (key == "weakness_f1") return card.weakness.f1;
    if (key == "weakness_kl") return card.weakness.kl;
    if (key == "question_qs") return card.question_qs;
    if (key == "question_kl") return card.question_kl;
    if (key == "ai_rate") return card.ai_rate;
    if (key == "ai_bs") return card.ai_bs;
    if (key == "rating_mae") return card.rating_mae;
    throw SchemaError("unknown leaderboard column: " + key);
}

std::string format_cell(const std::optional<double>& v) {
    if (!v) return "/";
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << *v;
    return out.str();
}

}  // namespace

Leaderboard build_leaderboard(const std::vector<Scorecard>& cards) {
    if (cards.empty()) {
        throw PreconditionError("no scorecards to rank");
    }
    const auto& columns = leaderboard_columns();

    // Best row per (group, column), first-wins on ties so flags stay unique.
    std::map<std::pair<std::string, std::string>, std::size_t> best;
    for (std::size_t i = 0; i < cards.size(); ++i) {
        for (const auto& col : columns) {
            const auto v = column_value(cards[i], col.key);
            if (!v) continue;
            const auto key = std::make_pair(cards[i].group, col.key);
            auto it = best.find(key);
            if (it == best.end()) {
                best.emplace(key, i);
                continue;
            }
            const auto current = *column_value(cards[it->second], col.key);
            const bool better = col.higher_is_better ? *v > current : *v < current;
            if (better) it->second = i;
        }
    }

    Leaderboard board;
    board.rows = nlohmann::json::array();
    std::ostringstream csv;
    csv << "model,group";
    for (const auto& col : columns) csv << "," << col.key;
    csv << "\n";

    std::vector<std::vector<std::string>> text_rows;
    for (std::size_t i = 0; i < cards.size(); ++i) {
        const auto& card = cards[i];
        nlohmann::json row;
        row["model"] = card.model_name;
        row["group"] = card.group;
        nlohmann::json metrics;
        nlohmann::json flags;
        csv << card.model_name << "," << card.group;
        std::vector<std::string> cells = {card.model_name, card.group};
        for (const auto& col : columns) {
            const auto v = column_value(card, col.key);
            metrics[col.key] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
            auto it = best.find({card.group, col.key});
            flags[col.key] = it != best.end() && it->second == i;
            const auto cell = format_cell(v);
            csv << "," << cell;
            cells.push_back(cell);
        }
        csv << "\n";
        row["metrics"] = metrics;
        row["best"] = flags;
        board.rows.push_back(row);
        text_rows.push_back(std::move(cells));
    }
    board.csv = csv.str();

    // Aligned text table.
    std::vector<std::string> headers = {"model", "group"};
    for (const auto& col : columns) headers.push_back(col.key);
    std::vector<std::size_t> widths(headers.size());
    for (std::size_t c = 0; c < headers.size(); ++c) widths[c] = headers[c].size();
    for (const auto& row : text_rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }
    std::ostringstream text;
    auto emit_row = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            text << std::left << std::setw(static_cast<int>(widths[c]) + 2) << row[c];
        }
        text << "\n";
    };
    emit_row(headers);
    for (const auto& row : text_rows) emit_row(row);
    board.text = text.str();
    return board;
}

std::vector<CorrelationRow> correlation_vs_mae(const std::vector<Scorecard>& cards,
                                               const std::vector<std::string>& model_subset) {
    std::vector<const Scorecard*> selected;
    if (model_subset.empty()) {
        for (const auto& c : cards) selected.push_back(&c);
    } else {
        const std::set<std::string> wanted(model_subset.begin(), model_subset.end());
        for (const auto& c : cards) {
            if (wanted.count(c.model_name)) selected.push_back(&c);
        }
    }
    std::vector<CorrelationRow> rows;
    for (const auto& col : leaderboard_columns()) {
        if (col.key == "rating_mae") continue;
        std::vector<double> xs;
        std::vector<double> ys;
        for (const auto* card : selected) {
            const auto x = column_value(*card, col.key);
            const auto y = card->rating_mae;
            if (x && y) {
                xs.push_back(*x);
                ys.push_back(*y);
            }
        }
        if (xs.size() < 3) continue;
        try {
            rows.push_back({col.key, pearson(xs, ys), xs.size()});
        } catch (const UndefinedMetricError&) {
            // degenerate column; skip
        }
    }
    return rows;
}

}  // namespace peerbench::score
