#pragma once

// Shared fixtures and instrumented providers for the test suite.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "peerbench/data_model.hpp"
#include "peerbench/errors.hpp"
#include "peerbench/judge_gateway.hpp"
#include "peerbench/mock_provider.hpp"

namespace pbtest {

using peerbench::Review;
using peerbench::ReviewOrigin;

inline std::string repeated_tokens(std::size_t n, const std::string& stem = "tok") {
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out.push_back(' ');
        out += stem + std::to_string(i);
    }
    return out;
}

inline Review make_human_review(int rating, int confidence,
                                const std::string& strengths = "The idea is novel.",
                                const std::string& weaknesses = "The baselines are weak.",
                                const std::string& questions = "Why does this work?") {
    Review r;
    r.summary = "This paper proposes a method and evaluates it on benchmarks.";
    r.strengths = strengths;
    r.weaknesses = weaknesses;
    r.questions = questions;
    r.soundness = 3;
    r.presentation = 3;
    r.contribution = 2;
    r.rating = rating;
    r.confidence = confidence;
    r.origin = ReviewOrigin::Human;
    return r;
}

inline peerbench::PaperRecord make_paper(const std::string& id,
                                         const std::vector<std::pair<int, int>>& rating_conf,
                                         std::size_t body_tokens = 64) {
    peerbench::PaperRecord p;
    p.paper_id = id;
    p.venue = peerbench::Venue::ICLR;
    p.year = 2025;
    p.decision = peerbench::Decision::Accept;
    p.body_markdown =
        "# Introduction\nWe study the problem of " + id + " in depth. " +
        repeated_tokens(body_tokens, id + "w") +
        "\n# Method\nOur approach uses a novel training scheme with ablation studies.";
    for (const auto& [rating, conf] : rating_conf) {
        p.human_reviews.push_back(make_human_review(rating, conf));
    }
    return p;
}

// Returns canned completions in order; embeddings/perplexities delegate to
// the deterministic mock so gateway plumbing paths stay exercisable.
class ScriptedProvider final : public peerbench::judge::Provider {
public:
    explicit ScriptedProvider(std::vector<std::string> responses)
        : responses_(std::move(responses)) {}

    std::string id() const override { return "scripted/1"; }

    std::string complete(const std::string& system, const std::string& user,
                         const peerbench::judge::DecodingParams& params) override {
        (void)system;
        (void)user;
        (void)params;
        const auto i = calls_.fetch_add(1);
        if (i >= responses_.size()) {
            throw peerbench::GatewayError("scripted provider exhausted");
        }
        return responses_[i];
    }

    std::vector<double> embed(const std::string& text) override { return mock_.embed(text); }

    peerbench::judge::PerplexityPair perplexity(const std::string& text) override {
        return mock_.perplexity(text);
    }

    std::size_t calls() const { return calls_.load(); }

private:
    std::vector<std::string> responses_;
    std::atomic<std::size_t> calls_{0};
    peerbench::judge::MockProvider mock_;
};

// Delegates to an inner provider, counting every transport call.
class CountingProvider final : public peerbench::judge::Provider {
public:
    explicit CountingProvider(std::shared_ptr<peerbench::judge::Provider> inner)
        : inner_(std::move(inner)) {}

    std::string id() const override { return inner_->id(); }

    std::string complete(const std::string& system, const std::string& user,
                         const peerbench::judge::DecodingParams& params) override {
        ++completes_;
        return inner_->complete(system, user, params);
    }

    std::vector<double> embed(const std::string& text) override {
        ++embeds_;
        return inner_->embed(text);
    }

    peerbench::judge::PerplexityPair perplexity(const std::string& text) override {
        ++perplexities_;
        return inner_->perplexity(text);
    }

    std::atomic<std::size_t> completes_{0};
    std::atomic<std::size_t> embeds_{0};
    std::atomic<std::size_t> perplexities_{0};

private:
    std::shared_ptr<peerbench::judge::Provider> inner_;
};

// Fails the first `failures` complete() calls with a transport error, then
// behaves like the wrapped provider.
class FlakyProvider final : public peerbench::judge::Provider {
public:
    FlakyProvider(std::shared_ptr<peerbench::judge::Provider> inner, int failures)
        : inner_(std::move(inner)), remaining_(failures) {}

    std::string id() const override { return inner_->id(); }

    std::string complete(const std::string& system, const std::string& user,
                         const peerbench::judge::DecodingParams& params) override {
        ++attempts_;
        if (remaining_.fetch_sub(1) > 0) {
            throw peerbench::GatewayError("simulated transport failure");
        }
        return inner_->complete(system, user, params);
    }

    std::vector<double> embed(const std::string& text) override { return inner_->embed(text); }

    peerbench::judge::PerplexityPair perplexity(const std::string& text) override {
        return inner_->perplexity(text);
    }

    std::atomic<int> attempts_{0};

private:
    std::shared_ptr<peerbench::judge::Provider> inner_;
    std::atomic<int> remaining_;
};

inline peerbench::judge::GatewayOptions fast_options() {
    peerbench::judge::GatewayOptions opts;
    opts.retry_backoff_ms = 1;
    return opts;
}

inline peerbench::judge::Gateway make_mock_gateway() {
    return peerbench::judge::Gateway(
        std::make_shared<peerbench::judge::MockProvider>(), fast_options());
}

// Unique scratch directory under the system temp root; removed eagerly by
// the destructor so repeated runs stay clean.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("peerbench_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace pbtest
