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

#ifndef ADVFORGE_HTTP_CLIENTS_HPP_
#define ADVFORGE_HTTP_CLIENTS_HPP_

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "advforge/model_clients.hpp"

namespace advforge {

inline constexpr std::string_view kLlmKeyEnv = "ADVFORGE_LLM_KEY";
inline constexpr std::string_view kClassifierKeyEnv = "ADVFORGE_CLF_KEY";

struct RetryPolicy {
  // Retries after the first attempt; 0 disables retrying.
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{8000};

  // Delay before retry number `attempt` (1-based).
  std::chrono::milliseconds backoff(int attempt) const;
};

struct HttpEndpoint {
  // scheme://host[:port][/path-prefix]
  std::string base_url;
  std::optional<std::string> api_key;
  std::chrono::milliseconds timeout{60000};
  RetryPolicy retry;
};

// Returns the value of the named environment variable if set and non-empty.
std::optional<std::string> env_api_key(std::string_view variable);

// POST {base_url}/v1/chat/completions with a single user message holding the
// prompt verbatim; returns choices[0].message.content. Transport failures,
// HTTP 429 and 5xx are retried with exponential backoff. A context-length
// complaint from the service raises ContextLengthExceeded without retrying.
class OpenAiCompletionClient final : public CompletionClient {
 public:
  OpenAiCompletionClient(HttpEndpoint endpoint, GenerationParams params);
  ~OpenAiCompletionClient() override;

  std::string complete(const CompletionRequest& request) override;

  // The JSON body sent for `request`; exposed for wire-format tests.
  static std::string request_body(const CompletionRequest& request);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// POST {base_url}/score with {"text": ...}, expecting {"score": <0..1>}.
// A missing or non-numeric score raises MalformedResponse; a score outside
// [0, 1] is logged and clamped.
class HttpScoringClient final : public ScoringClient {
 public:
  HttpScoringClient(HttpEndpoint endpoint, std::string model_id = "remote");
  ~HttpScoringClient() override;

  ScoreResult score_text(std::string_view text) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace advforge

#endif  // ADVFORGE_HTTP_CLIENTS_HPP_
