#include "peerbench/judge_gateway.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <fstream>
#include <thread>

#include "peerbench/errors.hpp"
#include "peerbench/sha256.hpp"

namespace peerbench::judge {

// Counting semaphore over a mutex so the concurrency cap is configurable at
// runtime (std::counting_semaphore fixes the ceiling at compile time).
class BoundedSlots {
public:
    explicit BoundedSlots(int limit) : available_(limit) {}

    void acquire() {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [this] { return available_ > 0; });
        --available_;
    }

    void release() {
        {
            std::lock_guard lock(mutex_);
            ++available_;
        }
        cv_.notify_one();
    }

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    int available_;
};

namespace {

class SlotGuard {
public:
    explicit SlotGuard(BoundedSlots& slots) : slots_(slots) { slots_.acquire(); }
    ~SlotGuard() { slots_.release(); }
    SlotGuard(const SlotGuard&) = delete;
    SlotGuard& operator=(const SlotGuard&) = delete;

private:
    BoundedSlots& slots_;
};

std::string canonical_key(const nlohmann::json& fields) {
    // nlohmann objects iterate in sorted key order, so dump() is canonical.
    return sha256_hex(fields.dump());
}

}  // namespace

std::string_view to_string(ReviewStyle s) {
    return s == ReviewStyle::Strict ? "strict" : "neutral";
}

ReviewStyle review_style_from_string(std::string_view s) {
    if (s == "strict") return ReviewStyle::Strict;
    if (s == "neutral") return ReviewStyle::Neutral;
    throw SchemaError("unknown review style: " + std::string(s));
}

nlohmann::json parse_json_lenient(const std::string& raw) {
    // Direct parse first, then the outermost {...} slice to shed fences,
    // prefixes, and trailing commentary.
    auto try_parse = [](const std::string& text) -> std::optional<nlohmann::json> {
        auto parsed = nlohmann::json::parse(text, nullptr, false);
        if (parsed.is_discarded()) return std::nullopt;
        return parsed;
    };
    if (auto j = try_parse(raw)) return *j;
    const auto open = raw.find('{');
    const auto close = raw.rfind('}');
    if (open != std::string::npos && close != std::string::npos && close > open) {
        if (auto j = try_parse(raw.substr(open, close - open + 1))) return *j;
    }
    throw ParseError("no JSON object found in model output", raw);
}

Gateway::Gateway(std::shared_ptr<Provider> provider, GatewayOptions options)
    : provider_(std::move(provider)),
      options_(std::move(options)),
      tokenizer_(make_tokenizer(options_.tokenizer_id)),
      slots_(std::make_unique<BoundedSlots>(std::max(1, options_.max_concurrent))) {
    if (!provider_) {
        throw PreconditionError("gateway requires a provider");
    }
    if (options_.cache_dir) {
        std::filesystem::create_directories(*options_.cache_dir);
    }
    bucket_tokens_ = options_.requests_per_second;
    bucket_refill_at_ = std::chrono::steady_clock::now();
}

Gateway::~Gateway() = default;

std::string Gateway::provider_id() const { return provider_->id(); }

std::filesystem::path Gateway::cache_path(const std::string& key) const {
    return *options_.cache_dir / key.substr(0, 2) / (key + ".json");
}

std::optional<std::string> Gateway::cache_probe(const std::string& key) {
    {
        std::lock_guard lock(memo_mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return *it->second;
    }
    if (!options_.cache_dir) return std::nullopt;
    const auto path = cache_path(key);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    nlohmann::json entry = nlohmann::json::parse(in, nullptr, false);
    if (entry.is_discarded() || !entry.contains("response")) {
        throw GatewayError("corrupt cache entry: " + path.string());
    }
    auto value = entry.at("response").get<std::string>();
    {
        std::lock_guard lock(memo_mutex_);
        memo_.emplace(key, std::make_shared<std::string>(value));
    }
    return value;
}

void Gateway::cache_store(const std::string& key, const std::string& value) {
    {
        std::lock_guard lock(memo_mutex_);
        memo_[key] = std::make_shared<std::string>(value);
    }
    if (!options_.cache_dir) return;
    const auto path = cache_path(key);
    std::filesystem::create_directories(path.parent_path());
    nlohmann::json entry{
        {"schema_version", kSchemaVersion},
        {"key", key},
        {"response", value},
    };
    // Write-then-rename so concurrent readers never see a partial entry.
    const auto tmp = path.string() + ".tmp." +
                     std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << entry.dump();
    out.close();
    std::filesystem::rename(tmp, path);
}

void Gateway::rate_limit_acquire() {
    if (options_.requests_per_second <= 0.0) return;
    std::unique_lock lock(limiter_mutex_);
    for (;;) {
        const auto now = std::chrono::steady_clock::now();
        const double elapsed =
            std::chrono::duration<double>(now - bucket_refill_at_).count();
        bucket_refill_at_ = now;
        bucket_tokens_ = std::min(options_.requests_per_second,
                                  bucket_tokens_ + elapsed * options_.requests_per_second);
        if (bucket_tokens_ >= 1.0) {
            bucket_tokens_ -= 1.0;
            return;
        }
        const double wait_s = (1.0 - bucket_tokens_) / options_.requests_per_second;
        lock.unlock();
        std::this_thread::sleep_for(std::chrono::duration<double>(wait_s));
        lock.lock();
    }
}

std::string Gateway::call_with_retries(const std::function<std::string()>& call) {
    std::string last_error;
    for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(
                std::chrono::milliseconds(options_.retry_backoff_ms * attempt));
        }
        try {
            rate_limit_acquire();
            SlotGuard guard(*slots_);
            return call();
        } catch (const ParseError&) {
            throw;  // malformed content is not a transport failure
        } catch (const std::exception& e) {
            last_error = e.what();
        }
    }
    throw GatewayError("provider failed after " + std::to_string(options_.max_retries + 1) +
                       " attempts: " + last_error);
}

std::string Gateway::cached_call(const std::string& cache_key,
                                 const std::function<std::string()>& compute,
                                 bool* cache_hit) {
    if (auto hit = cache_probe(cache_key)) {
        if (cache_hit) *cache_hit = true;
        return *hit;
    }
    if (options_.offline) {
        throw CacheMissError("offline mode: no cache entry for key " + cache_key);
    }
    const std::string value = compute();
    cache_store(cache_key, value);
    if (cache_hit) *cache_hit = false;
    return value;
}

JudgeResponse Gateway::complete_json(const JudgeRequest& request) {
    const auto rendered = render_prompt(request.template_id, request.bindings, request.payload);
    const std::string key = canonical_key({
        {"kind", "complete"},
        {"provider", provider_->id()},
        {"template", std::string(to_string(request.template_id))},
        {"system", rendered.system},
        {"user", rendered.user},
        {"temperature", request.decoding.temperature},
        {"max_tokens", request.decoding.max_tokens},
    });

    JudgeResponse response;
    response.provider_id = provider_->id();
    response.raw_text = cached_call(
        key,
        [&]() -> std::string {
            std::string raw = call_with_retries([&] {
                return provider_->complete(rendered.system, rendered.user, request.decoding);
            });
            try {
                auto parsed = parse_json_lenient(raw);
                validate_response(request.template_id, parsed);
                return raw;
            } catch (const ParseError& first) {
                // One repair round-trip: show the model its own output and
                // the contract, then re-validate. A second failure is final.
                const std::string repair_user =
                    "The previous response was not valid JSON for the required "
                    "contract.\nPrevious response:\n" +
                    raw + "\n\nError: " + first.what() +
                    "\n\nRespond again with ONLY the corrected JSON object.";
                std::string repaired = call_with_retries([&] {
                    return provider_->complete(rendered.system, repair_user, request.decoding);
                });
                auto parsed = parse_json_lenient(repaired);
                validate_response(request.template_id, parsed);
                return repaired;
            }
        },
        &response.cache_hit);

    response.parsed = parse_json_lenient(response.raw_text);
    validate_response(request.template_id, response.parsed);
    return response;
}

Review Gateway::generate_review(const std::string& paper_body, ReviewStyle style) {
    if (paper_body.empty()) {
        throw PreconditionError("paper body is empty");
    }
    JudgeRequest request;
    request.template_id =
        style == ReviewStyle::Strict ? TemplateId::ReviewStrict : TemplateId::ReviewNeutral;
    request.payload = paper_body;
    const auto response = complete_json(request);
    Review review = validate_review(response.parsed, ReviewOrigin::Generated);
    review.model_name = provider_->id();
    return review;
}

std::pair<std::string, std::string> Gateway::split_combined_assessment(
    const std::string& text) {
    if (text.empty()) {
        throw PreconditionError("combined assessment text is empty");
    }
    JudgeRequest request;
    request.template_id = TemplateId::SplitCombined;
    request.payload = text;
    const auto response = complete_json(request);
    auto strengths = response.parsed.at("strengths").get<std::string>();
    auto weaknesses = response.parsed.at("weaknesses").get<std::string>();
    if (strengths.empty() && weaknesses.empty()) {
        throw GatewayError("split produced no content for either field");
    }
    return {std::move(strengths), std::move(weaknesses)};
}

std::vector<double> Gateway::embed_one(const std::string& text) {
    if (text.empty()) {
        throw PreconditionError("cannot embed empty text");
    }
    const std::string key = canonical_key({
        {"kind", "embed"},
        {"provider", provider_->id()},
        {"text", text},
    });
    const std::string raw = cached_call(
        key,
        [&]() -> std::string {
            auto vec = call_with_retries([&]() -> std::string {
                return nlohmann::json(provider_->embed(text)).dump();
            });
            return vec;
        },
        nullptr);
    auto vec = nlohmann::json::parse(raw).get<std::vector<double>>();
    if (vec.empty()) {
        throw GatewayError("provider returned an empty embedding");
    }
    double norm = 0.0;
    for (double x : vec) norm += x * x;
    norm = std::sqrt(norm);
    if (norm <= 0.0 || !std::isfinite(norm)) {
        throw GatewayError("embedding has non-finite or zero norm");
    }
    for (double& x : vec) x /= norm;
    return vec;
}

std::vector<std::vector<double>> Gateway::embed(const std::vector<std::string>& texts) {
    std::vector<std::vector<double>> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(embed_one(t));
    if (!out.empty()) {
        const auto dim = out.front().size();
        for (const auto& v : out) {
            if (v.size() != dim) {
                throw GatewayError("provider returned embeddings of mixed dimension");
            }
        }
    }
    return out;
}

PerplexityPair Gateway::perplexity(const std::string& text) {
    const auto tokens = tokenizer_->count(text);
    if (tokens < static_cast<std::size_t>(options_.min_perplexity_tokens)) {
        throw LengthError("text has " + std::to_string(tokens) +
                          " tokens, below the minimum of " +
                          std::to_string(options_.min_perplexity_tokens));
    }
    const std::string key = canonical_key({
        {"kind", "perplexity"},
        {"provider", provider_->id()},
        {"text", text},
    });
    const std::string raw = cached_call(
        key,
        [&]() -> std::string {
            return call_with_retries([&]() -> std::string {
                const auto pair = provider_->perplexity(text);
                return nlohmann::json{{"observer", pair.observer},
                                      {"baseline", pair.baseline}}
                    .dump();
            });
        },
        nullptr);
    const auto parsed = nlohmann::json::parse(raw);
    PerplexityPair pair{parsed.at("observer").get<double>(),
                        parsed.at("baseline").get<double>()};
    if (!(pair.observer > 0.0) || !(pair.baseline > 0.0) ||
        !std::isfinite(pair.observer) || !std::isfinite(pair.baseline)) {
        throw GatewayError("perplexities must be finite and positive");
    }
    return pair;
}

}  // namespace peerbench::judge
