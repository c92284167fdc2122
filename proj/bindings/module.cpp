#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "peerbench/ai_likelihood.hpp"
#include "peerbench/alignment_metrics.hpp"
#include "peerbench/chunk_embed.hpp"
#include "peerbench/corpus_builder.hpp"
#include "peerbench/data_model.hpp"
#include "peerbench/focus_metrics.hpp"
#include "peerbench/scorecard.hpp"
#include "peerbench/tokenizer.hpp"

namespace py = pybind11;

namespace {

using peerbench::AtomicPoint;
using peerbench::Category;
using peerbench::FieldKind;
using peerbench::MatchMatrix;

MatchMatrix matrix_from_rows(const std::vector<std::vector<int>>& rows) {
    MatchMatrix m;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        AtomicPoint p;
        p.text = "a" + std::to_string(i);
        p.category = Category::Other;
        p.field_kind = FieldKind::Weakness;
        m.ai_points.push_back(p);
    }
    for (std::size_t j = 0; j < cols; ++j) {
        AtomicPoint p;
        p.text = "h" + std::to_string(j);
        p.category = Category::Other;
        p.field_kind = FieldKind::Weakness;
        m.human_points.push_back(p);
    }
    for (const auto& row : rows) {
        std::vector<std::uint8_t> entries;
        for (int v : row) entries.push_back(static_cast<std::uint8_t>(v));
        m.entries.push_back(std::move(entries));
    }
    peerbench::validate_matrix(m);
    return m;
}

peerbench::focus::CategoryDistribution distribution_from_list(
    const std::vector<std::size_t>& counts) {
    if (counts.size() != peerbench::kCategoryCount) {
        throw std::invalid_argument("expected 8 category counts");
    }
    std::array<std::size_t, peerbench::kCategoryCount> arr{};
    std::copy(counts.begin(), counts.end(), arr.begin());
    return peerbench::focus::distribution_from_counts(arr);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "peer-review evaluation metrics (C++ core)";

    m.def(
        "precision",
        [](const std::vector<std::vector<int>>& rows) -> std::optional<double> {
            return peerbench::align::precision(matrix_from_rows(rows));
        },
        py::arg("matrix"),
        "Row-max mean of a binary match matrix; None when there are no rows.");

    m.def(
        "max_recall",
        [](const std::vector<std::vector<std::vector<int>>>& reviewers)
            -> std::optional<double> {
            std::vector<MatchMatrix> matrices;
            matrices.reserve(reviewers.size());
            for (const auto& rows : reviewers) matrices.push_back(matrix_from_rows(rows));
            return peerbench::align::max_recall(matrices);
        },
        py::arg("matrices"),
        "Best per-reviewer column coverage; None when every reviewer is empty.");

    m.def("f1", &peerbench::align::f1, py::arg("p"), py::arg("r"));

    m.def(
        "kl_divergence",
        [](const std::vector<std::size_t>& human, const std::vector<std::size_t>& ai) {
            return peerbench::focus::kl_divergence(distribution_from_list(human),
                                                   distribution_from_list(ai));
        },
        py::arg("human_counts"), py::arg("ai_counts"),
        "KL(human || ai) in nats over 8 category bins with additive smoothing.");

    m.def("coverage_from_similarities", &peerbench::chunks::coverage_from_similarities,
          py::arg("similarities"), py::arg("k"),
          "Sum of the k largest similarities.");

    m.def(
        "binoculars_score",
        [](double observer, double baseline) {
            return peerbench::ai::binoculars_score({observer, baseline});
        },
        py::arg("observer_ppl"), py::arg("baseline_ppl"));

    m.def(
        "ai_rate",
        [](const std::vector<double>& bs_values, double threshold) -> std::optional<double> {
            std::vector<std::optional<double>> wrapped(bs_values.begin(), bs_values.end());
            return peerbench::ai::ai_rate(wrapped, threshold);
        },
        py::arg("bs_values"), py::arg("threshold") = peerbench::ai::kAiThreshold);

    m.def("rating_mae", &peerbench::score::rating_mae, py::arg("pairs"));

    m.def("pearson", &peerbench::score::pearson, py::arg("xs"), py::arg("ys"));

    m.def(
        "chunk_spans",
        [](const std::string& body, std::size_t window, std::size_t overlap) {
            peerbench::WhitespaceTokenizer tokenizer;
            std::vector<std::tuple<std::size_t, std::size_t, std::string>> out;
            for (auto& c : peerbench::chunks::chunk_tokens(body, tokenizer, window, overlap)) {
                out.emplace_back(c.start_token, c.end_token, std::move(c.text));
            }
            return out;
        },
        py::arg("body"), py::arg("window") = 512, py::arg("overlap") = 128,
        "Token-window chunks as (start_token, end_token, text) tuples.");

    m.def("population_variance", &peerbench::corpus::population_variance,
          py::arg("ratings"));

    m.attr("AI_THRESHOLD") = peerbench::ai::kAiThreshold;
    m.attr("RATING_SCALE") = py::make_tuple(1, 3, 5, 6, 8, 10);
    m.attr("__version__") = "0.1.0";
}
