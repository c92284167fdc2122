#include "peerbench/tokenizer.hpp"

#include <cctype>

#include "peerbench/errors.hpp"

namespace peerbench {

namespace {

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::vector<TokenSpan> WhitespaceTokenizer::tokenize(std::string_view text) const {
    std::vector<TokenSpan> spans;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        while (i < n && is_space(text[i])) ++i;
        if (i >= n) break;
        std::size_t begin = i;
        while (i < n && !is_space(text[i])) ++i;
        spans.push_back(TokenSpan{begin, i});
    }
    return spans;
}

std::size_t WhitespaceTokenizer::count(std::string_view text) const {
    std::size_t c = 0;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        while (i < n && is_space(text[i])) ++i;
        if (i >= n) break;
        ++c;
        while (i < n && !is_space(text[i])) ++i;
    }
    return c;
}

std::string WhitespaceTokenizer::detokenize(std::string_view text,
                                            const std::vector<TokenSpan>& spans) const {
    if (spans.empty()) return {};
    const std::size_t begin = spans.front().begin;
    const std::size_t end = spans.back().end;
    if (begin > end || end > text.size()) {
        throw RangeError("token spans out of bounds for detokenize");
    }
    return std::string(text.substr(begin, end - begin));
}

std::unique_ptr<Tokenizer> make_tokenizer(std::string_view id) {
    if (id == "whitespace/1") {
        return std::make_unique<WhitespaceTokenizer>();
    }
    throw SchemaError("unknown tokenizer id: " + std::string(id));
}

}  // namespace peerbench
