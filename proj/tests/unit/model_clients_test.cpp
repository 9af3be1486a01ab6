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

#include "advforge/model_clients.hpp"

#include <gtest/gtest.h>

#include <string>

#include "advforge/errors.hpp"
#include "advforge/prompt_builder.hpp"
#include "support/temp_dir.hpp"

namespace advforge {
namespace {

using testing::TempDir;

std::string prompt_with_last(const std::string& sample, double score) {
  StepHistory history("earlier sample", 0.9);
  history.push(sample, score);
  return build_prompt(PromptTemplate::canonical(), history);
}

TEST(ScriptedCompletionClientTest, ReplaysQueueThenFails) {
  ScriptedCompletionClient client({"|a|", "|b|"});
  const CompletionRequest request = client.make_request("prompt");
  EXPECT_EQ(client.complete(request), "|a|");
  EXPECT_EQ(client.complete(request), "|b|");
  EXPECT_THROW(client.complete(request), ScriptExhausted);
}

TEST(ScriptedCompletionClientTest, ScriptFileEscapes) {
  const auto outputs =
      parse_completion_script("|one|\nSure:\\n|two|\\tok\n\n|back\\\\slash|\n");
  ASSERT_EQ(outputs.size(), 4u);
  EXPECT_EQ(outputs[0], "|one|");
  EXPECT_EQ(outputs[1], "Sure:\n|two|\tok");
  EXPECT_EQ(outputs[2], "");
  EXPECT_EQ(outputs[3], "|back\\slash|");
}

TEST(ScriptedCompletionClientTest, MissingFileIsIoError) {
  EXPECT_THROW(load_completion_script("/nonexistent/script.txt"), IoError);
}

TEST(CompletionClientTest, RequestCarriesClientParams) {
  GenerationParams params;
  params.model_id = "m";
  params.temperature = 0.2;
  params.max_tokens = 12;
  params.seed = 7;
  class Echo final : public CompletionClient {
   public:
    using CompletionClient::CompletionClient;
    std::string complete(const CompletionRequest& r) override { return r.prompt; }
  } client(params);
  const CompletionRequest request = client.make_request("hello");
  EXPECT_EQ(request.prompt, "hello");
  EXPECT_EQ(request.model_id, "m");
  EXPECT_EQ(request.temperature, 0.2);
  EXPECT_EQ(request.max_tokens, 12);
  EXPECT_EQ(request.seed, 7u);
  EXPECT_THROW(client.make_request(""), PreconditionError);
}

TEST(HeuristicPerturberTest, SubstitutesFirstMappableCharacter) {
  const std::string prompt =
      build_prompt(PromptTemplate::canonical(),
                   StepHistory("you are a bitch", 0.65));
  ASSERT_NE(prompt.find("Step 0: |you are a bitch| - Prediction Score: 0.6500;"),
            std::string::npos);
  EXPECT_EQ(heuristic_perturber_step(prompt, {"bitch"}, {{U'i', "!"}}),
            "|you are a b!tch|");
}

TEST(HeuristicPerturberTest, UsesLastStepLine) {
  EXPECT_EQ(heuristic_perturber_step(prompt_with_last("a bitch here", 0.65),
                                     {"bitch"}, {{U'i', "!"}}),
            "|a b!tch here|");
}

TEST(HeuristicPerturberTest, FallsBackToStarBeforeFinalCharacter) {
  EXPECT_EQ(heuristic_perturber_step(prompt_with_last("clean text", 0.65),
                                     {"bitch"}, default_leet_map()),
            "|clean tex*t|");
}

TEST(HeuristicPerturberTest, MatchesCaseInsensitivelyAndKeepsOthers) {
  EXPECT_EQ(heuristic_perturber_step(prompt_with_last("Idiot. Total loser.", 0.8),
                                     {"idiot", "loser"}, default_leet_map()),
            "|!diot. Total loser.|");
}

TEST(HeuristicPerturberTest, SkipsTokensWithoutMappableCharacters) {
  EXPECT_EQ(heuristic_perturber_step(prompt_with_last("brr and idiot", 0.8),
                                     {"brr", "idiot"}, default_leet_map()),
            "|brr and !diot|");
}

TEST(HeuristicPerturberTest, NoStepLineIsUnparseable) {
  EXPECT_THROW(heuristic_perturber_step("no history here", {"x"}, {}),
               UnparseablePrompt);
}

TEST(HeuristicPerturberClientTest, CompletesFromPrompt) {
  HeuristicPerturberClient client({"jerk"}, default_leet_map());
  EXPECT_EQ(client.complete(client.make_request(
                prompt_with_last("what a jerk", 0.65))),
            "|what a j3rk|");
  EXPECT_EQ(client.params().model_id, "mock-heuristic");
}

TEST(TokenizeTest, SplitsOnNonAlphanumerics) {
  EXPECT_EQ(tokenize("Bro is a b!tch, f#cking"),
            (std::vector<std::string>{"bro", "is", "a", "b", "tch", "f",
                                      "cking"}));
  EXPECT_EQ(tokenize("snake_case"), (std::vector<std::string>{"snake", "case"}));
  EXPECT_TRUE(tokenize("!!!").empty());
}

TEST(LexiconClassifierTest, ScoresByHitCount) {
  LexiconClassifierSpec spec;
  spec.lexicon = {"bitch", "cunt"};
  LexiconClassifier clf(spec);
  EXPECT_NEAR(clf.score_text("Bro is a bitch, fucking cunt").score, 0.80, 1e-12);
  EXPECT_NEAR(clf.score_text("Bro is a b!tch, f#cking c@nt").score, 0.05, 1e-12);
  EXPECT_NEAR(clf.score_text("bitch").score, 0.65, 1e-12);
  EXPECT_NEAR(clf.score_text("bitch bitch bitch cunt cunt").score, 0.95, 1e-12);
  EXPECT_THROW(clf.score_text(""), PreconditionError);
}

TEST(LexiconClassifierTest, EmptyLexiconScoresBase) {
  LexiconClassifier clf(LexiconClassifierSpec{});
  EXPECT_EQ(clf.score_text("anything at all").score, 0.05);
}

TEST(LexiconClassifierTest, RejectsInconsistentSpec) {
  LexiconClassifierSpec spec;
  spec.base_score = 0.6;
  EXPECT_THROW(LexiconClassifier{spec}, ConfigError);
  spec = LexiconClassifierSpec{};
  spec.cap = 1.2;
  EXPECT_THROW(LexiconClassifier{spec}, ConfigError);
}

TEST(LexiconTest, LoadsLowercasedWords) {
  TempDir dir;
  const auto path = dir.write("lex.txt", "Idiot\n  moron \r\n\nJERK\n");
  EXPECT_EQ(load_lexicon(path), (Lexicon{"idiot", "jerk", "moron"}));
  EXPECT_THROW(load_lexicon(dir / "missing.txt"), IoError);
}

TEST(MockDeterminismTest, SameInputsSameOutputs) {
  const std::string prompt = prompt_with_last("a moron and a fool", 0.8);
  HeuristicPerturberClient a({"moron", "fool"}, default_leet_map());
  HeuristicPerturberClient b({"moron", "fool"}, default_leet_map());
  EXPECT_EQ(a.complete(a.make_request(prompt)),
            b.complete(b.make_request(prompt)));
  LexiconClassifierSpec spec;
  spec.lexicon = {"moron"};
  LexiconClassifier c1(spec);
  LexiconClassifier c2(spec);
  EXPECT_EQ(c1.score_text("moron").score, c2.score_text("moron").score);
  EXPECT_EQ(c1.score_text("moron").latency.count(), 0);
}

}  // namespace
}  // namespace advforge
