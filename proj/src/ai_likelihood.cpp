#include "peerbench/ai_likelihood.hpp"

#include <cmath>

#include "peerbench/errors.hpp"

namespace peerbench::ai {

double binoculars_score(const judge::PerplexityPair& ppl) {
    if (!(ppl.observer > 0.0) || !(ppl.baseline > 0.0)) {
        throw RangeError("perplexities must be positive");
    }
    const double denom = std::log(ppl.baseline);
    if (denom == 0.0) {
        throw RangeError("baseline perplexity of 1 makes the score undefined");
    }
    return std::log(ppl.observer) / denom;
}

ReviewBsResult review_bs(const Review& review, judge::Gateway& gateway) {
    ReviewBsResult result;
    const std::pair<const char*, const std::string&> fields[] = {
        {"summary", review.summary},
        {"strengths", review.strengths},
        {"weaknesses", review.weaknesses},
        {"questions", review.questions},
    };
    double total = 0.0;
    std::size_t scored = 0;
    for (const auto& [name, text] : fields) {
        FieldScore fs;
        fs.field = name;
        try {
            const auto ppl = gateway.perplexity(text);
            fs.score = binoculars_score(ppl);
            total += *fs.score;
            ++scored;
        } catch (const LengthError& e) {
            fs.skip_reason = e.what();
        }
        result.fields.push_back(std::move(fs));
    }
    if (scored > 0) {
        result.bs = total / static_cast<double>(scored);
    }
    return result;
}

bool classified_ai(double bs, double threshold) {
    return bs < threshold;
}

std::optional<double> ai_rate(const std::vector<std::optional<double>>& bs_values,
                              double threshold) {
    std::size_t defined = 0;
    std::size_t flagged = 0;
    for (const auto& bs : bs_values) {
        if (!bs) continue;
        ++defined;
        if (classified_ai(*bs, threshold)) ++flagged;
    }
    if (defined == 0) return std::nullopt;
    return static_cast<double>(flagged) / static_cast<double>(defined);
}

}  // namespace peerbench::ai
