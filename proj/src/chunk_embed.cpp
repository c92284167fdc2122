#include "peerbench/chunk_embed.hpp"

#include <algorithm>

#include "peerbench/errors.hpp"

namespace peerbench::chunks {

std::vector<Chunk> chunk_tokens(std::string_view body, const Tokenizer& tokenizer,
                                std::size_t window, std::size_t overlap) {
    if (overlap >= window) {
        throw PreconditionError("overlap must be smaller than window");
    }
    const auto spans = tokenizer.tokenize(body);
    if (spans.empty()) {
        throw EmptyDocumentError("document has no tokens");
    }
    const std::size_t stride = window - overlap;
    const std::size_t n = spans.size();
    std::vector<Chunk> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t end = std::min(start + window, n);
        Chunk c;
        c.start_token = start;
        c.end_token = end;
        const std::vector<TokenSpan> slice(spans.begin() + static_cast<std::ptrdiff_t>(start),
                                           spans.begin() + static_cast<std::ptrdiff_t>(end));
        c.text = tokenizer.detokenize(body, slice);
        out.push_back(std::move(c));
        if (end == n) break;
        start += stride;
    }
    return out;
}

ChunkIndex build_index(const std::string& body, judge::Gateway& gateway,
                       std::size_t window, std::size_t overlap) {
    ChunkIndex index;
    index.tokenizer_id = std::string(gateway.tokenizer().id());
    index.chunks = chunk_tokens(body, gateway.tokenizer(), window, overlap);
    index.vectors.reserve(index.chunks.size());
    for (const auto& chunk : index.chunks) {
        index.vectors.push_back(gateway.embed_one(chunk.text));
    }
    return index;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw PreconditionError("cosine over mismatched dimensions");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    return dot;  // inputs are unit-norm, so the dot product is the cosine
}

double coverage_from_similarities(std::vector<double> sims, std::size_t k) {
    if (sims.empty()) {
        throw PreconditionError("no similarities to rank");
    }
    const std::size_t take = std::min(k, sims.size());
    std::partial_sort(sims.begin(), sims.begin() + static_cast<std::ptrdiff_t>(take),
                      sims.end(), std::greater<>());
    double total = 0.0;
    for (std::size_t i = 0; i < take; ++i) total += sims[i];
    return total;
}

double coverage_score(const std::string& summary, const ChunkIndex& index,
                      judge::Gateway& gateway, std::size_t k) {
    if (summary.empty()) {
        throw PreconditionError("summary is empty");
    }
    if (index.chunks.empty()) {
        throw PreconditionError("chunk index is empty");
    }
    const auto v_sum = gateway.embed_one(summary);
    std::vector<double> sims;
    sims.reserve(index.vectors.size());
    for (const auto& v : index.vectors) sims.push_back(cosine(v_sum, v));
    return coverage_from_similarities(std::move(sims), k);
}

std::vector<RetrievedChunk> retrieve_top_k(const std::string& query, const ChunkIndex& index,
                                           judge::Gateway& gateway, std::size_t k) {
    if (index.chunks.empty()) {
        throw PreconditionError("chunk index is empty");
    }
    const auto v_query = gateway.embed_one(query);
    std::vector<RetrievedChunk> ranked;
    ranked.reserve(index.vectors.size());
    for (std::size_t i = 0; i < index.vectors.size(); ++i) {
        ranked.push_back({i, cosine(v_query, index.vectors[i])});
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RetrievedChunk& a, const RetrievedChunk& b) {
                         if (a.similarity != b.similarity) return a.similarity > b.similarity;
                         return a.chunk_index < b.chunk_index;
                     });
    if (ranked.size() > k) ranked.resize(k);
    return ranked;
}

}  // namespace peerbench::chunks
