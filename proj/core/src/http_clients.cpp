// Copyright 2026 The advforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "advforge/http_clients.hpp"

#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <json.hpp>
#include <thread>

#include "advforge/errors.hpp"
#include "advforge/log.hpp"

namespace advforge {
namespace {

using Json = nlohmann::json;

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path_prefix;
};

ParsedUrl parse_base_url(std::string_view url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw ConfigError("endpoint URL must include a scheme: " +
                      std::string(url));
  }
  const auto path_start = url.find('/', scheme_end + 3);
  ParsedUrl parsed;
  parsed.origin = std::string(url.substr(0, path_start));
  if (path_start != std::string_view::npos) {
    parsed.path_prefix = std::string(url.substr(path_start));
    while (!parsed.path_prefix.empty() && parsed.path_prefix.back() == '/') {
      parsed.path_prefix.pop_back();
    }
  }
  return parsed;
}

bool is_retryable_status(int status) {
  return status == 408 || status == 429 || status >= 500;
}

bool mentions_context_length(std::string_view body) {
  std::string lower(body);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return lower.find("context_length_exceeded") != std::string::npos ||
         lower.find("context length") != std::string::npos ||
         lower.find("maximum context") != std::string::npos;
}

// Shared POST-with-retry used by both clients.
class JsonPoster {
 public:
  explicit JsonPoster(HttpEndpoint endpoint)
      : endpoint_(std::move(endpoint)),
        url_(parse_base_url(endpoint_.base_url)),
        client_(url_.origin) {
    const auto seconds =
        std::chrono::duration_cast<std::chrono::seconds>(endpoint_.timeout);
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
        endpoint_.timeout - seconds);
    client_.set_connection_timeout(seconds.count(), micros.count());
    client_.set_read_timeout(seconds.count(), micros.count());
    client_.set_write_timeout(seconds.count(), micros.count());
    client_.set_keep_alive(true);
  }

  // Returns the body of a 2xx response.
  std::string post(std::string_view path, const std::string& body,
                   bool detect_context_length) {
    const std::string target = url_.path_prefix + std::string(path);
    httplib::Headers headers;
    if (endpoint_.api_key) {
      headers.emplace("Authorization", "Bearer " + *endpoint_.api_key);
    }
    std::string last_error;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(endpoint_.retry.backoff(attempt));
      }
      auto result = client_.Post(target, headers, body, "application/json");
      if (!result) {
        last_error = "POST " + endpoint_.base_url + target + " failed: " +
                     httplib::to_string(result.error());
      } else if (result->status >= 200 && result->status < 300) {
        return result->body;
      } else if (detect_context_length && result->status == 400 &&
                 mentions_context_length(result->body)) {
        throw ContextLengthExceeded("LLM rejected the prompt: " +
                                    result->body);
      } else {
        last_error = "POST " + endpoint_.base_url + target + " returned HTTP " +
                     std::to_string(result->status) + ": " + result->body;
        if (!is_retryable_status(result->status)) {
          throw TransportError(last_error);
        }
      }
      if (attempt >= endpoint_.retry.max_retries) break;
      log_warning(last_error + " (retrying)");
    }
    throw TransportError(last_error + " after " +
                         std::to_string(endpoint_.retry.max_retries + 1) +
                         " attempt(s)");
  }

  const HttpEndpoint& endpoint() const { return endpoint_; }

 private:
  HttpEndpoint endpoint_;
  ParsedUrl url_;
  httplib::Client client_;
};

}  // namespace

std::chrono::milliseconds RetryPolicy::backoff(int attempt) const {
  const double factor = std::pow(multiplier, std::max(0, attempt - 1));
  const double ms = static_cast<double>(initial_backoff.count()) * factor;
  return std::min(max_backoff,
                  std::chrono::milliseconds(static_cast<long long>(ms)));
}

std::optional<std::string> env_api_key(std::string_view variable) {
  const char* value = std::getenv(std::string(variable).c_str());
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::string(value);
}

struct OpenAiCompletionClient::Impl {
  explicit Impl(HttpEndpoint endpoint) : poster(std::move(endpoint)) {}
  JsonPoster poster;
};

OpenAiCompletionClient::OpenAiCompletionClient(HttpEndpoint endpoint,
                                               GenerationParams params)
    : CompletionClient(std::move(params)),
      impl_(std::make_unique<Impl>(std::move(endpoint))) {}

OpenAiCompletionClient::~OpenAiCompletionClient() = default;

std::string OpenAiCompletionClient::request_body(
    const CompletionRequest& request) {
  Json body = {
      {"model", request.model_id},
      {"messages",
       Json::array({{{"role", "user"}, {"content", request.prompt}}})},
      {"temperature", request.temperature},
      {"max_tokens", request.max_tokens},
  };
  if (request.seed) body["seed"] = *request.seed;
  return body.dump(-1, ' ', false, Json::error_handler_t::replace);
}

std::string OpenAiCompletionClient::complete(const CompletionRequest& request) {
  const std::string response = impl_->poster.post(
      "/v1/chat/completions", request_body(request), true);
  Json parsed = Json::parse(response, nullptr, false);
  if (parsed.is_discarded()) {
    throw MalformedResponse("chat completion response is not JSON");
  }
  const Json* content = nullptr;
  if (parsed.contains("choices") && parsed["choices"].is_array() &&
      !parsed["choices"].empty()) {
    const Json& choice = parsed["choices"][0];
    if (choice.contains("message") && choice["message"].contains("content") &&
        choice["message"]["content"].is_string()) {
      content = &choice["message"]["content"];
    }
  }
  if (content == nullptr) {
    throw MalformedResponse(
        "chat completion response lacks choices[0].message.content");
  }
  return content->get<std::string>();
}

struct HttpScoringClient::Impl {
  Impl(HttpEndpoint endpoint, std::string id)
      : poster(std::move(endpoint)), model_id(std::move(id)) {}
  JsonPoster poster;
  std::string model_id;
};

HttpScoringClient::HttpScoringClient(HttpEndpoint endpoint,
                                     std::string model_id)
    : impl_(std::make_unique<Impl>(std::move(endpoint), std::move(model_id))) {}

HttpScoringClient::~HttpScoringClient() = default;

ScoreResult HttpScoringClient::score_text(std::string_view text) {
  if (text.empty()) throw PreconditionError("cannot score empty text");
  const Json request = {{"text", text}};
  const auto started = std::chrono::steady_clock::now();
  const std::string response = impl_->poster.post(
      "/score", request.dump(-1, ' ', false, Json::error_handler_t::replace),
      false);
  const auto latency = std::chrono::steady_clock::now() - started;

  Json parsed = Json::parse(response, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object() ||
      !parsed.contains("score") || !parsed["score"].is_number()) {
    throw MalformedResponse("classifier response lacks a numeric score: " +
                            response);
  }
  double score = parsed["score"].get<double>();
  if (!std::isfinite(score)) {
    throw MalformedResponse("classifier returned a non-finite score");
  }
  if (score < 0.0 || score > 1.0) {
    log_warning("classifier score " + std::to_string(score) +
                " outside [0, 1]; clamping");
    score = std::clamp(score, 0.0, 1.0);
  }
  return ScoreResult{score, impl_->model_id,
                     std::chrono::duration_cast<std::chrono::nanoseconds>(
                         latency)};
}

}  // namespace advforge
