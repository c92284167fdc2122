#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "peerbench/judge_gateway.hpp"

namespace peerbench::judge {

// Fully deterministic stand-in for a model service: hashed bag-of-words
// embeddings, hash-derived perplexities, and rule-based judge responses.
// Every response depends only on the request bytes, so pipeline runs are
// bit-reproducible without a network.
class MockProvider final : public Provider {
public:
    std::string id() const override { return "mock/1"; }

    std::string complete(const std::string& system, const std::string& user,
                         const DecodingParams& params) override;

    std::vector<double> embed(const std::string& text) override;

    PerplexityPair perplexity(const std::string& text) override;

    static constexpr std::size_t kEmbeddingDim = 256;
};

// 64-bit FNV-1a; the mock's only source of randomness-like variation.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace peerbench::judge
