#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace peerbench {

// Half-open byte range [begin, end) into the original text.
struct TokenSpan {
    std::size_t begin = 0;
    std::size_t end = 0;

    bool operator==(const TokenSpan&) const = default;
};

class Tokenizer {
public:
    virtual ~Tokenizer() = default;

    // Stable identifier recorded in cache keys and audit output.
    virtual std::string_view id() const = 0;

    virtual std::vector<TokenSpan> tokenize(std::string_view text) const = 0;

    virtual std::size_t count(std::string_view text) const = 0;

    // Substring of the original text from the first span's begin to the last
    // span's end, so inner whitespace survives round trips.
    virtual std::string detokenize(std::string_view text,
                                   const std::vector<TokenSpan>& spans) const = 0;
};

// Splits on ASCII whitespace; every maximal non-whitespace run is one token.
class WhitespaceTokenizer final : public Tokenizer {
public:
    std::string_view id() const override { return "whitespace/1"; }
    std::vector<TokenSpan> tokenize(std::string_view text) const override;
    std::size_t count(std::string_view text) const override;
    std::string detokenize(std::string_view text,
                           const std::vector<TokenSpan>& spans) const override;
};

// Throws SchemaError for ids other than "whitespace/1".
std::unique_ptr<Tokenizer> make_tokenizer(std::string_view id);

}  // namespace peerbench
