#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "peerbench/corpus_builder.hpp"
#include "peerbench/data_model.hpp"

namespace peerbench::io {

// JSONL, one object per line, every line carrying schema_version.
std::vector<PaperRecord> load_corpus(const std::filesystem::path& path);
void save_corpus(const std::filesystem::path& path, const std::vector<PaperRecord>& records);

nlohmann::json paper_to_json(const PaperRecord& record);
PaperRecord paper_from_json(const nlohmann::json& j);

struct GeneratedReview {
    std::string paper_id;
    std::string model_name;
    std::string style;
    Review review;
};

std::vector<GeneratedReview> load_reviews(const std::filesystem::path& path);
void save_reviews(const std::filesystem::path& path,
                  const std::vector<GeneratedReview>& reviews);

void save_drop_log(const std::filesystem::path& path,
                   const std::vector<corpus::DropRecord>& drops);

// Raw, pre-standardization shape consumed by corpus construction: ratings
// may be venue-scale numbers or labels, the decision is free text, and the
// body still contains excluded sections.
struct RawReview {
    nlohmann::json fields;  // summary/strengths/weaknesses/questions/ints
    nlohmann::json raw_rating;  // integer or string
    std::optional<std::string> combined_assessment;
};

struct RawPaper {
    std::string paper_id;
    Venue venue = Venue::ICLR;
    int year = 0;
    std::string body_markdown;
    std::string raw_decision;
    std::vector<RawReview> reviews;
};

std::vector<RawPaper> load_raw_papers(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace peerbench::io
