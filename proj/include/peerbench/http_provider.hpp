#pragma once

#include <string>

#include "peerbench/judge_gateway.hpp"

namespace peerbench::judge {

struct HttpProviderConfig {
    std::string base_url = "http://localhost:8000";
    std::string api_key_env = "PEERBENCH_API_KEY";  // env var holding the key
    std::string chat_model;
    std::string embed_model;
    std::string perplexity_model_pair;  // "observer:baseline" label
    std::string chat_path = "/v1/chat/completions";
    std::string embed_path = "/v1/embeddings";
    std::string perplexity_path = "/v1/perplexity";
    int timeout_seconds = 120;
};

// OpenAI-style JSON-over-HTTP transport. Perplexity uses a non-standard
// endpoint (POST {model, text} -> {observer_ppl, baseline_ppl}) because no
// public API shape exists for paired-perplexity scoring.
class HttpProvider final : public Provider {
public:
    explicit HttpProvider(HttpProviderConfig config);

    std::string id() const override;
    std::string complete(const std::string& system, const std::string& user,
                         const DecodingParams& params) override;
    std::vector<double> embed(const std::string& text) override;
    PerplexityPair perplexity(const std::string& text) override;

private:
    nlohmann::json post_json(const std::string& path, const nlohmann::json& body);

    HttpProviderConfig config_;
    std::string api_key_;
};

}  // namespace peerbench::judge
