#include "crs/llm/http_backend.hpp"

#include <chrono>
#include <cstdlib>
#include <memory>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "crs/errors.hpp"

namespace crs {

namespace {

using nlohmann::json;

bool transient_status(int status) {
    return status == 408 || status == 429 || status >= 500;
}

}  // namespace

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
    const std::string& url = config_.base_url;
    const std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw ValidationError("backend base_url needs a scheme: " + url);
    }
    const std::size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        scheme_host_ = url;
    } else {
        scheme_host_ = url.substr(0, path_start);
        path_prefix_ = url.substr(path_start);
        while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
    }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (scheme_host_.rfind("https://", 0) == 0) {
        throw ValidationError("built without TLS support; use an http:// base_url");
    }
#endif
}

std::string HttpBackend::id() const { return "http:" + config_.model; }

std::string HttpBackend::post_json(const std::string& path, const std::string& body) {
    httplib::Client client(scheme_host_);
    client.set_connection_timeout(std::chrono::milliseconds(config_.timeout_ms));
    client.set_read_timeout(std::chrono::milliseconds(config_.timeout_ms));

    httplib::Headers headers;
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key != nullptr && *key != '\0') {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    int backoff_ms = config_.backoff_initial_ms;
    std::string last_failure = "no attempt made";
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms *= 2;
        }
        const auto res = client.Post(path_prefix_ + path, headers, body, "application/json");
        if (!res) {
            last_failure = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 401 || res->status == 403) {
            throw AuthError("authentication rejected by " + scheme_host_ + " (status " +
                            std::to_string(res->status) + ")");
        }
        if (res->status >= 200 && res->status < 300) return res->body;
        last_failure = "status " + std::to_string(res->status);
        if (!transient_status(res->status)) break;
    }
    throw BackendError("request to " + scheme_host_ + path_prefix_ + path + " failed (" +
                       last_failure + ")");
}

Completion HttpBackend::complete(const std::string& prompt, const GenerationParams& params) {
    if (prompt.empty()) throw ValidationError("prompt must be non-empty");
    json body = {
        {"model", config_.model},
        {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
        {"temperature", params.temperature},
    };
    if (params.max_tokens > 0) body["max_tokens"] = params.max_tokens;

    const auto started = std::chrono::steady_clock::now();
    const std::string raw = post_json("/chat/completions", body.dump());
    const auto elapsed = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - started);

    try {
        const json parsed = json::parse(raw);
        Completion out;
        out.text = parsed.at("choices").at(0).at("message").at("content").get<std::string>();
        out.provider_id = id();
        out.latency_ms = elapsed.count();
        return out;
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed completion payload: ") + e.what());
    }
}

EmbeddingVector HttpBackend::embed(const std::string& input) {
    if (input.empty()) throw ValidationError("embed input must be non-empty");
    const std::string model =
        config_.embedding_model.empty() ? config_.model : config_.embedding_model;
    const json body = {{"model", model}, {"input", input}};
    const std::string raw = post_json("/embeddings", body.dump());
    try {
        const json parsed = json::parse(raw);
        EmbeddingVector out;
        out.values = parsed.at("data").at(0).at("embedding").get<std::vector<double>>();
        if (out.values.empty()) throw BackendError("provider returned an empty embedding");
        return out;
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed embedding payload: ") + e.what());
    }
}

}  // namespace crs
