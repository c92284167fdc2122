#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "peerbench/judge_gateway.hpp"
#include "peerbench/tokenizer.hpp"

namespace peerbench::chunks {

struct Chunk {
    std::string text;
    std::size_t start_token = 0;  // inclusive
    std::size_t end_token = 0;    // exclusive
};

struct ChunkIndex {
    std::vector<Chunk> chunks;
    std::vector<std::vector<double>> vectors;  // unit-norm, aligned to chunks
    std::string tokenizer_id;
};

// Token span layout only; no embeddings. Chunk i covers tokens
// [stride*i, stride*i + window) clipped to the document end, where
// stride = window - overlap.
std::vector<Chunk> chunk_tokens(std::string_view body, const Tokenizer& tokenizer,
                                std::size_t window = 512, std::size_t overlap = 128);

ChunkIndex build_index(const std::string& body, judge::Gateway& gateway,
                       std::size_t window = 512, std::size_t overlap = 128);

// Sum of the K largest cosine similarities between the summary embedding and
// the chunk embeddings; sums all of them when the index has fewer than K.
double coverage_score(const std::string& summary, const ChunkIndex& index,
                      judge::Gateway& gateway, std::size_t k = 5);

// Same reduction over a precomputed similarity list; the numeric core that
// the oracle tests target directly.
double coverage_from_similarities(std::vector<double> sims, std::size_t k);

struct RetrievedChunk {
    std::size_t chunk_index = 0;
    double similarity = 0.0;
};

// k highest-cosine chunks, descending; ties broken by lower start offset.
std::vector<RetrievedChunk> retrieve_top_k(const std::string& query, const ChunkIndex& index,
                                           judge::Gateway& gateway, std::size_t k = 5);

double cosine(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace peerbench::chunks
