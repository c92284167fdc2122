#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "peerbench/data_model.hpp"
#include "peerbench/prompts.hpp"
#include "peerbench/tokenizer.hpp"

namespace peerbench::judge {

struct DecodingParams {
    // Temperature 0 wherever the provider honors it, for reproducibility.
    double temperature = 0.0;
    int max_tokens = 4096;

    bool operator==(const DecodingParams&) const = default;
};

struct PerplexityPair {
    double observer = 0.0;
    double baseline = 0.0;
};

// Transport-level interface to one model service. Implementations may block;
// the gateway handles retries, caching, and rate limiting above this.
class Provider {
public:
    virtual ~Provider() = default;

    // Stable identifier mixed into cache keys (e.g. "mock/1", "api/gpt-x").
    virtual std::string id() const = 0;

    virtual std::string complete(const std::string& system, const std::string& user,
                                 const DecodingParams& params) = 0;

    // Raw embedding; the gateway normalizes to unit length.
    virtual std::vector<double> embed(const std::string& text) = 0;

    virtual PerplexityPair perplexity(const std::string& text) = 0;
};

struct GatewayOptions {
    std::optional<std::filesystem::path> cache_dir;
    bool offline = false;           // cache-only; any miss raises CacheMissError
    int max_retries = 3;
    int retry_backoff_ms = 50;
    int max_concurrent = 4;
    double requests_per_second = 0.0;  // 0 disables rate limiting
    int min_perplexity_tokens = 16;
    std::string tokenizer_id = "whitespace/1";
};

struct JudgeRequest {
    TemplateId template_id;
    std::map<std::string, std::string> bindings;  // inline templates
    std::string payload;                          // system-style templates
    DecodingParams decoding;
};

struct JudgeResponse {
    std::string raw_text;
    nlohmann::json parsed;
    bool cache_hit = false;
    std::string provider_id;
};

enum class ReviewStyle { Strict, Neutral };

std::string_view to_string(ReviewStyle s);
ReviewStyle review_style_from_string(std::string_view s);

class Gateway {
public:
    Gateway(std::shared_ptr<Provider> provider, GatewayOptions options);
    ~Gateway();  // out of line: BoundedSlots is incomplete here

    // Renders, consults the cache, calls the provider with bounded retries,
    // parses (stripping markdown fences), validates against the template's
    // response contract, and attempts one repair round-trip on bad JSON.
    JudgeResponse complete_json(const JudgeRequest& request);

    Review generate_review(const std::string& paper_body, ReviewStyle style);

    std::pair<std::string, std::string> split_combined_assessment(const std::string& text);

    // Unit-norm embeddings, one per input, all the same dimension.
    std::vector<std::vector<double>> embed(const std::vector<std::string>& texts);
    std::vector<double> embed_one(const std::string& text);

    // Throws LengthError when the text has fewer tokens than the configured
    // minimum; the caller decides whether to skip.
    PerplexityPair perplexity(const std::string& text);

    const GatewayOptions& options() const { return options_; }
    const Tokenizer& tokenizer() const { return *tokenizer_; }
    std::string provider_id() const;

private:
    std::string cached_call(const std::string& cache_key,
                            const std::function<std::string()>& compute,
                            bool* cache_hit);
    std::string call_with_retries(const std::function<std::string()>& call);
    void rate_limit_acquire();

    std::optional<std::string> cache_probe(const std::string& key);
    void cache_store(const std::string& key, const std::string& value);
    std::filesystem::path cache_path(const std::string& key) const;

    std::shared_ptr<Provider> provider_;
    GatewayOptions options_;
    std::unique_ptr<Tokenizer> tokenizer_;

    std::mutex memo_mutex_;
    std::unordered_map<std::string, std::shared_ptr<std::string>> memo_;

    std::mutex limiter_mutex_;
    double bucket_tokens_ = 0.0;
    std::chrono::steady_clock::time_point bucket_refill_at_{};

    std::unique_ptr<class BoundedSlots> slots_;
};

// Strips ```json fences and surrounding noise, then parses. Throws
// ParseError carrying the raw text when no JSON object can be recovered.
nlohmann::json parse_json_lenient(const std::string& raw);

}  // namespace peerbench::judge
