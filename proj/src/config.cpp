#include "peerbench/config.hpp"

#include <fstream>

#include "peerbench/errors.hpp"
#include "peerbench/mock_provider.hpp"

namespace peerbench::config {

namespace {

template <typename T>
void maybe(const nlohmann::json& j, const char* key, T& target) {
    if (j.contains(key)) {
        target = j.at(key).get<T>();
    }
}

}  // namespace

Config load(const std::optional<std::filesystem::path>& path) {
    Config config;
    if (!path) return config;
    std::ifstream in(*path, std::ios::binary);
    if (!in) {
        throw SchemaError("cannot open config file: " + path->string());
    }
    auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw SchemaError("config file is not valid JSON: " + path->string());
    }
    maybe(j, "provider", config.provider);
    if (config.provider != "mock" && config.provider != "http") {
        throw SchemaError("config provider must be \"mock\" or \"http\"");
    }
    if (j.contains("http")) {
        const auto& h = j.at("http");
        maybe(h, "base_url", config.http.base_url);
        maybe(h, "api_key_env", config.http.api_key_env);
        maybe(h, "chat_model", config.http.chat_model);
        maybe(h, "embed_model", config.http.embed_model);
        maybe(h, "perplexity_model_pair", config.http.perplexity_model_pair);
        maybe(h, "chat_path", config.http.chat_path);
        maybe(h, "embed_path", config.http.embed_path);
        maybe(h, "perplexity_path", config.http.perplexity_path);
        maybe(h, "timeout_seconds", config.http.timeout_seconds);
    }
    if (j.contains("gateway")) {
        const auto& g = j.at("gateway");
        if (g.contains("cache_dir")) {
            config.gateway.cache_dir = g.at("cache_dir").get<std::string>();
        }
        maybe(g, "offline", config.gateway.offline);
        maybe(g, "max_retries", config.gateway.max_retries);
        maybe(g, "retry_backoff_ms", config.gateway.retry_backoff_ms);
        maybe(g, "max_concurrent", config.gateway.max_concurrent);
        maybe(g, "requests_per_second", config.gateway.requests_per_second);
        maybe(g, "min_perplexity_tokens", config.gateway.min_perplexity_tokens);
        maybe(g, "tokenizer_id", config.gateway.tokenizer_id);
    }
    if (j.contains("evaluate")) {
        const auto& e = j.at("evaluate");
        maybe(e, "window", config.evaluate.window);
        maybe(e, "overlap", config.evaluate.overlap);
        maybe(e, "coverage_k", config.evaluate.coverage_k);
        maybe(e, "retrieval_k", config.evaluate.retrieval_k);
        maybe(e, "qs_exclude_other", config.evaluate.qs_exclude_other);
        maybe(e, "parallelism", config.evaluate.parallelism);
    }
    maybe(j, "correlation_models", config.correlation_models);
    maybe(j, "seed", config.seed);
    return config;
}

std::shared_ptr<judge::Provider> make_provider(const Config& config) {
    if (config.provider == "mock") {
        return std::make_shared<judge::MockProvider>();
    }
    return std::make_shared<judge::HttpProvider>(config.http);
}

}  // namespace peerbench::config
