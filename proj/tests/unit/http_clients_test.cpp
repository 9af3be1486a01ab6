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

#include <gtest/gtest.h>

#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <string>

#include "advforge/errors.hpp"
#include "advforge/prompt_builder.hpp"
#include "support/fake_server.hpp"

namespace advforge {
namespace {

using Json = nlohmann::json;
using testing::FakeServer;
using testing::RecordedRequest;

HttpEndpoint endpoint_for(const FakeServer& server, int retries = 2) {
  HttpEndpoint endpoint;
  endpoint.base_url = server.url();
  endpoint.timeout = std::chrono::milliseconds(5000);
  endpoint.retry.max_retries = retries;
  endpoint.retry.initial_backoff = std::chrono::milliseconds(1);
  endpoint.retry.max_backoff = std::chrono::milliseconds(4);
  return endpoint;
}

GenerationParams chat_params() {
  GenerationParams params;
  params.model_id = "attacker-7b";
  params.temperature = 0.3;
  params.max_tokens = 64;
  return params;
}

std::string chat_reply(const std::string& content) {
  return Json{{"choices", {{{"message", {{"role", "assistant"},
                                         {"content", content}}}}}}}
      .dump();
}

TEST(RetryPolicyTest, ExponentialWithCap) {
  const RetryPolicy policy;
  EXPECT_EQ(policy.backoff(1).count(), 500);
  EXPECT_EQ(policy.backoff(2).count(), 1000);
  EXPECT_EQ(policy.backoff(4).count(), 4000);
  EXPECT_EQ(policy.backoff(10).count(), 8000);
}

TEST(EnvApiKeyTest, UnsetOrEmptyIsAbsent) {
  ::setenv("ADVFORGE_TEST_KEY", "", 1);
  EXPECT_FALSE(env_api_key("ADVFORGE_TEST_KEY").has_value());
  ::setenv("ADVFORGE_TEST_KEY", "sk-123", 1);
  EXPECT_EQ(env_api_key("ADVFORGE_TEST_KEY"), "sk-123");
  ::unsetenv("ADVFORGE_TEST_KEY");
  EXPECT_FALSE(env_api_key("ADVFORGE_TEST_KEY").has_value());
}

TEST(OpenAiCompletionClientTest, RequestBodyCarriesParams) {
  CompletionRequest request;
  request.prompt = "p";
  request.model_id = "m";
  request.temperature = 0.5;
  request.max_tokens = 9;
  Json body = Json::parse(OpenAiCompletionClient::request_body(request));
  EXPECT_EQ(body["model"], "m");
  EXPECT_EQ(body["messages"].size(), 1u);
  EXPECT_EQ(body["messages"][0]["role"], "user");
  EXPECT_EQ(body["temperature"], 0.5);
  EXPECT_EQ(body["max_tokens"], 9);
  EXPECT_FALSE(body.contains("seed"));
  request.seed = 7;
  body = Json::parse(OpenAiCompletionClient::request_body(request));
  EXPECT_EQ(body["seed"], 7);
}

TEST(OpenAiCompletionClientTest, SendsPromptVerbatim) {
  FakeServer server;
  server.on_post("/v1/chat/completions",
                 [](const RecordedRequest&, httplib::Response& res) {
                   res.set_content(chat_reply("Sure: |b!tch|"),
                                   "application/json");
                 });
  StepHistory history("you are a bitch \"quoted\" \xC3\xA9", 0.65);
  history.push("you are a b1tch", 0.6);
  const std::string prompt = build_prompt(PromptTemplate::canonical(), history);

  OpenAiCompletionClient client(endpoint_for(server), chat_params());
  EXPECT_EQ(client.complete(client.make_request(prompt)), "Sure: |b!tch|");

  const auto requests = server.requests();
  ASSERT_EQ(requests.size(), 1u);
  const Json body = Json::parse(requests[0].body);
  EXPECT_EQ(body["messages"][0]["content"].get<std::string>(), prompt);
  EXPECT_EQ(body["model"], "attacker-7b");
  EXPECT_EQ(body["temperature"], 0.3);
  EXPECT_EQ(body["max_tokens"], 64);
  EXPECT_TRUE(requests[0].authorization.empty());
}

TEST(OpenAiCompletionClientTest, UsesBearerKeyAndPathPrefix) {
  FakeServer server;
  server.on_post("/proxy/v1/chat/completions",
                 [](const RecordedRequest&, httplib::Response& res) {
                   res.set_content(chat_reply("|x|"), "application/json");
                 });
  HttpEndpoint endpoint = endpoint_for(server);
  endpoint.base_url += "/proxy/";
  endpoint.api_key = "sk-test";
  OpenAiCompletionClient client(endpoint, chat_params());
  EXPECT_EQ(client.complete(client.make_request("hi")), "|x|");
  EXPECT_EQ(server.requests().at(0).authorization, "Bearer sk-test");
}

TEST(OpenAiCompletionClientTest, RetriesTransientStatuses) {
  FakeServer server;
  std::atomic<int> calls{0};
  server.on_post("/v1/chat/completions",
                 [&](const RecordedRequest&, httplib::Response& res) {
                   const int n = ++calls;
                   if (n == 1) {
                     res.status = 429;
                   } else if (n == 2) {
                     res.status = 503;
                   } else {
                     res.set_content(chat_reply("|ok|"), "application/json");
                   }
                 });
  OpenAiCompletionClient client(endpoint_for(server, 2), chat_params());
  EXPECT_EQ(client.complete(client.make_request("hi")), "|ok|");
  EXPECT_EQ(calls.load(), 3);
}

TEST(OpenAiCompletionClientTest, GivesUpAfterRetryBudget) {
  FakeServer server;
  server.on_post("/v1/chat/completions",
                 [](const RecordedRequest&, httplib::Response& res) {
                   res.status = 500;
                 });
  OpenAiCompletionClient client(endpoint_for(server, 1), chat_params());
  EXPECT_THROW(client.complete(client.make_request("hi")), TransportError);
  EXPECT_EQ(server.requests().size(), 2u);
}

TEST(OpenAiCompletionClientTest, ClientErrorsAreNotRetried) {
  FakeServer server;
  server.on_post("/v1/chat/completions",
                 [](const RecordedRequest&, httplib::Response& res) {
                   res.status = 401;
                   res.set_content("{\"error\":\"bad key\"}", "application/json");
                 });
  OpenAiCompletionClient client(endpoint_for(server, 3), chat_params());
  EXPECT_THROW(client.complete(client.make_request("hi")), TransportError);
  EXPECT_EQ(server.requests().size(), 1u);
}

TEST(OpenAiCompletionClientTest, ContextLengthIsDistinct) {
  FakeServer server;
  server.on_post("/v1/chat/completions",
                 [](const RecordedRequest&, httplib::Response& res) {
                   res.status = 400;
                   res.set_content(
                       "{\"error\":{\"code\":\"context_length_exceeded\"}}",
                       "application/json");
                 });
  OpenAiCompletionClient client(endpoint_for(server, 3), chat_params());
  EXPECT_THROW(client.complete(client.make_request("hi")),
               ContextLengthExceeded);
  EXPECT_EQ(server.requests().size(), 1u);
}

TEST(OpenAiCompletionClientTest, MalformedReplies) {
  FakeServer server;
  std::atomic<int> calls{0};
  server.on_post("/v1/chat/completions",
                 [&](const RecordedRequest&, httplib::Response& res) {
                   res.set_content(++calls == 1 ? "not json" : "{\"choices\":[]}",
                                   "application/json");
                 });
  OpenAiCompletionClient client(endpoint_for(server), chat_params());
  EXPECT_THROW(client.complete(client.make_request("hi")), MalformedResponse);
  EXPECT_THROW(client.complete(client.make_request("hi")), MalformedResponse);
}

TEST(OpenAiCompletionClientTest, UnreachableServerIsTransportError) {
  HttpEndpoint endpoint;
  endpoint.base_url = "http://127.0.0.1:1";
  endpoint.retry.max_retries = 0;
  endpoint.timeout = std::chrono::milliseconds(1000);
  OpenAiCompletionClient client(endpoint, chat_params());
  EXPECT_THROW(client.complete(client.make_request("hi")), TransportError);
}

TEST(OpenAiCompletionClientTest, UrlWithoutSchemeIsConfigError) {
  HttpEndpoint endpoint;
  endpoint.base_url = "localhost:8080";
  EXPECT_THROW(OpenAiCompletionClient(endpoint, chat_params()), ConfigError);
}

TEST(HttpScoringClientTest, PostsTextAndReadsScore) {
  FakeServer server;
  server.on_post("/score", [](const RecordedRequest& req, httplib::Response& res) {
    const Json body = Json::parse(req.body);
    const double score = body["text"] == "nice" ? 0.1 : 0.8;
    res.set_content(Json{{"score", score}}.dump(), "application/json");
  });
  HttpEndpoint endpoint = endpoint_for(server);
  endpoint.api_key = "clf-key";
  HttpScoringClient client(endpoint, "bert-hate");
  const ScoreResult nice = client.score_text("nice");
  EXPECT_EQ(nice.score, 0.1);
  EXPECT_EQ(nice.model_id, "bert-hate");
  EXPECT_EQ(client.score_text("nasty").score, 0.8);
  EXPECT_EQ(server.requests().at(0).authorization, "Bearer clf-key");
  EXPECT_THROW(client.score_text(""), PreconditionError);
}

TEST(HttpScoringClientTest, ClampsOutOfRangeScores) {
  FakeServer server;
  std::atomic<int> calls{0};
  server.on_post("/score", [&](const RecordedRequest&, httplib::Response& res) {
    res.set_content(++calls == 1 ? "{\"score\":1.7}" : "{\"score\":-0.2}",
                    "application/json");
  });
  HttpScoringClient client(endpoint_for(server));
  EXPECT_EQ(client.score_text("a").score, 1.0);
  EXPECT_EQ(client.score_text("b").score, 0.0);
}

TEST(HttpScoringClientTest, MissingScoreIsMalformed) {
  FakeServer server;
  std::atomic<int> calls{0};
  server.on_post("/score", [&](const RecordedRequest&, httplib::Response& res) {
    res.set_content(++calls == 1 ? "{\"label\":\"hate\"}" : "{\"score\":\"0.5\"}",
                    "application/json");
  });
  HttpScoringClient client(endpoint_for(server));
  EXPECT_THROW(client.score_text("a"), MalformedResponse);
  EXPECT_THROW(client.score_text("b"), MalformedResponse);
}

}  // namespace
}  // namespace advforge
