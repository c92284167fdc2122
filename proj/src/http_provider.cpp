#include "peerbench/http_provider.hpp"

#include <cstdlib>

#include <httplib.h>

#include "peerbench/errors.hpp"

namespace peerbench::judge {

HttpProvider::HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {
    if (const char* key = std::getenv(config_.api_key_env.c_str())) {
        api_key_ = key;
    }
}

std::string HttpProvider::id() const {
    return "http/" + config_.chat_model + "+" + config_.embed_model + "+" +
           config_.perplexity_model_pair;
}

nlohmann::json HttpProvider::post_json(const std::string& path, const nlohmann::json& body) {
    httplib::Client client(config_.base_url);
    client.set_read_timeout(config_.timeout_seconds, 0);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    httplib::Headers headers;
    if (!api_key_.empty()) {
        headers.emplace("Authorization", "Bearer " + api_key_);
    }
    const auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res) {
        throw GatewayError("HTTP transport error on " + path + ": " +
                           httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
        throw GatewayError("HTTP " + std::to_string(res->status) + " on " + path + ": " +
                           res->body.substr(0, 512));
    }
    auto parsed = nlohmann::json::parse(res->body, nullptr, false);
    if (parsed.is_discarded()) {
        throw GatewayError("non-JSON response body on " + path);
    }
    return parsed;
}

std::string HttpProvider::complete(const std::string& system, const std::string& user,
                                   const DecodingParams& params) {
    nlohmann::json messages = nlohmann::json::array();
    if (!system.empty()) {
        messages.push_back({{"role", "system"}, {"content", system}});
    }
    messages.push_back({{"role", "user"}, {"content", user}});
    const auto response = post_json(config_.chat_path, {
                                                           {"model", config_.chat_model},
                                                           {"messages", messages},
                                                           {"temperature", params.temperature},
                                                           {"max_tokens", params.max_tokens},
                                                       });
    try {
        return response.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw GatewayError(std::string("unexpected chat response shape: ") + e.what());
    }
}

std::vector<double> HttpProvider::embed(const std::string& text) {
    const auto response = post_json(config_.embed_path, {
                                                            {"model", config_.embed_model},
                                                            {"input", text},
                                                        });
    try {
        return response.at("data").at(0).at("embedding").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw GatewayError(std::string("unexpected embedding response shape: ") + e.what());
    }
}

PerplexityPair HttpProvider::perplexity(const std::string& text) {
    const auto response =
        post_json(config_.perplexity_path, {
                                               {"model", config_.perplexity_model_pair},
                                               {"text", text},
                                           });
    try {
        return {response.at("observer_ppl").get<double>(),
                response.at("baseline_ppl").get<double>()};
    } catch (const nlohmann::json::exception& e) {
        throw GatewayError(std::string("unexpected perplexity response shape: ") + e.what());
    }
}

}  // namespace peerbench::judge
