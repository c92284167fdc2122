#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "peerbench/http_provider.hpp"
#include "peerbench/judge_gateway.hpp"
#include "peerbench/pipeline.hpp"

namespace peerbench::config {

struct Config {
    std::string provider = "mock";  // "mock" or "http"
    judge::HttpProviderConfig http;
    judge::GatewayOptions gateway;
    pipeline::EvaluateOptions evaluate;
    // Model-name subset feeding the correlation table; empty means all.
    std::vector<std::string> correlation_models;
    unsigned seed = 0;  // reserved for stochastic extensions; recorded in output
};

// Reads a JSON config file; missing keys keep their defaults. The global
// CLI flags (--cache-dir, --offline, --parallelism, --seed) override the
// file afterwards.
Config load(const std::optional<std::filesystem::path>& path);

std::shared_ptr<judge::Provider> make_provider(const Config& config);

}  // namespace peerbench::config
