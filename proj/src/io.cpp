#include "peerbench/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "peerbench/errors.hpp"

namespace peerbench::io {

namespace {

std::vector<nlohmann::json> load_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SchemaError("cannot open file: " + path.string());
    }
    std::vector<nlohmann::json> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto parsed = nlohmann::json::parse(line, nullptr, false);
        if (parsed.is_discarded()) {
            throw SchemaError(path.string() + ":" + std::to_string(line_no) +
                              ": invalid JSON line");
        }
        out.push_back(std::move(parsed));
    }
    return out;
}

void check_schema_version(const nlohmann::json& j, const std::filesystem::path& path) {
    if (!j.contains("schema_version")) {
        throw SchemaError(path.string() + ": record missing schema_version");
    }
    const int v = j.at("schema_version").get<int>();
    if (v != kSchemaVersion) {
        throw SchemaError(path.string() + ": unsupported schema_version " +
                          std::to_string(v));
    }
}

}  // namespace

nlohmann::json paper_to_json(const PaperRecord& record) {
    nlohmann::json reviews = nlohmann::json::array();
    for (const auto& r : record.human_reviews) {
        reviews.push_back(review_to_json(r));
    }
    return nlohmann::json{
        {"schema_version", kSchemaVersion},
        {"paper_id", record.paper_id},
        {"venue", std::string(to_string(record.venue))},
        {"year", record.year},
        {"body_markdown", record.body_markdown},
        {"decision", std::string(to_string(record.decision))},
        {"human_reviews", reviews},
    };
}

PaperRecord paper_from_json(const nlohmann::json& j) {
    PaperRecord record;
    record.paper_id = j.at("paper_id").get<std::string>();
    if (record.paper_id.empty()) {
        throw SchemaError("paper_id is empty");
    }
    record.venue = venue_from_string(j.at("venue").get<std::string>());
    record.year = j.at("year").get<int>();
    record.body_markdown = j.at("body_markdown").get<std::string>();
    if (record.body_markdown.empty()) {
        throw SchemaError("body_markdown is empty for paper " + record.paper_id);
    }
    record.decision = decision_from_string(j.at("decision").get<std::string>());
    for (const auto& r : j.at("human_reviews")) {
        record.human_reviews.push_back(validate_review(r, ReviewOrigin::Human));
    }
    return record;
}

std::vector<PaperRecord> load_corpus(const std::filesystem::path& path) {
    std::vector<PaperRecord> records;
    std::set<std::string> seen;
    for (const auto& j : load_jsonl(path)) {
        check_schema_version(j, path);
        auto record = paper_from_json(j);
        if (!seen.insert(record.paper_id).second) {
            throw SchemaError("duplicate paper_id in corpus: " + record.paper_id);
        }
        records.push_back(std::move(record));
    }
    return records;
}

void save_corpus(const std::filesystem::path& path, const std::vector<PaperRecord>& records) {
    std::ostringstream out;
    for (const auto& record : records) {
        out << paper_to_json(record).dump() << "\n";
    }
    write_file(path, out.str());
}

std::vector<GeneratedReview> load_reviews(const std::filesystem::path& path) {
    std::vector<GeneratedReview> out;
    for (const auto& j : load_jsonl(path)) {
        check_schema_version(j, path);
        GeneratedReview gr;
        gr.paper_id = j.at("paper_id").get<std::string>();
        gr.model_name = j.at("model_name").get<std::string>();
        gr.style = j.value("style", std::string("strict"));
        gr.review = validate_review(j.at("review"), ReviewOrigin::Generated);
        gr.review.model_name = gr.model_name;
        out.push_back(std::move(gr));
    }
    return out;
}

void save_reviews(const std::filesystem::path& path,
                  const std::vector<GeneratedReview>& reviews) {
    std::ostringstream out;
    for (const auto& gr : reviews) {
        nlohmann::json j{
            {"schema_version", kSchemaVersion},
            {"paper_id", gr.paper_id},
            {"model_name", gr.model_name},
            {"style", gr.style},
            {"review", review_to_json(gr.review)},
        };
        out << j.dump() << "\n";
    }
    write_file(path, out.str());
}

void save_drop_log(const std::filesystem::path& path,
                   const std::vector<corpus::DropRecord>& drops) {
    std::ostringstream out;
    for (const auto& d : drops) {
        nlohmann::json j{
            {"schema_version", kSchemaVersion},
            {"paper_id", d.paper_id},
            {"stage", d.stage},
            {"reason", d.reason},
        };
        out << j.dump() << "\n";
    }
    write_file(path, out.str());
}

std::vector<RawPaper> load_raw_papers(const std::filesystem::path& path) {
    std::vector<RawPaper> out;
    for (const auto& j : load_jsonl(path)) {
        check_schema_version(j, path);
        RawPaper paper;
        paper.paper_id = j.at("paper_id").get<std::string>();
        paper.venue = venue_from_string(j.at("venue").get<std::string>());
        paper.year = j.at("year").get<int>();
        paper.body_markdown = j.at("body_markdown").get<std::string>();
        paper.raw_decision = j.value("decision", std::string());
        for (const auto& r : j.at("reviews")) {
            RawReview raw;
            raw.fields = r;
            if (!r.contains("rating")) {
                throw SchemaError("raw review missing rating for paper " + paper.paper_id);
            }
            raw.raw_rating = r.at("rating");
            if (r.contains("combined_assessment") &&
                r.at("combined_assessment").is_string()) {
                raw.combined_assessment = r.at("combined_assessment").get<std::string>();
            }
            paper.reviews.push_back(std::move(raw));
        }
        out.push_back(std::move(paper));
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SchemaError("cannot open file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw SchemaError("cannot write file: " + path.string());
    }
    out << content;
}

}  // namespace peerbench::io
