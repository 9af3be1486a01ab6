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

#ifndef ADVFORGE_MODEL_CLIENTS_HPP_
#define ADVFORGE_MODEL_CLIENTS_HPP_

#include <chrono>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "advforge/prompt_builder.hpp"

namespace advforge {

// Decoding parameters are owned by the client, not by the attack engine.
struct GenerationParams {
  std::string model_id;
  double temperature = 0.7;
  int max_tokens = 256;
  std::optional<std::uint64_t> seed;
};

struct CompletionRequest {
  std::string prompt;
  std::string model_id;
  double temperature = 0.7;
  int max_tokens = 256;
  std::optional<std::uint64_t> seed;
};

// Attacker LLM. Instances are bound to one attack trace at a time.
class CompletionClient {
 public:
  explicit CompletionClient(GenerationParams params = {})
      : params_(std::move(params)) {}
  virtual ~CompletionClient() = default;

  CompletionClient(const CompletionClient&) = delete;
  CompletionClient& operator=(const CompletionClient&) = delete;

  // Raw model output. Throws a ClientFault subclass on failure.
  virtual std::string complete(const CompletionRequest& request) = 0;

  // Request for `prompt` carrying this client's generation parameters.
  // Throws PreconditionError for an empty prompt.
  CompletionRequest make_request(std::string prompt) const;

  const GenerationParams& params() const { return params_; }

 private:
  GenerationParams params_;
};

struct ScoreResult {
  double score = 0.0;
  std::string model_id;
  std::chrono::nanoseconds latency{0};
};

// Target classifier returning P(hateful) in [0, 1].
class ScoringClient {
 public:
  ScoringClient() = default;
  virtual ~ScoringClient() = default;

  ScoringClient(const ScoringClient&) = delete;
  ScoringClient& operator=(const ScoringClient&) = delete;

  // Throws PreconditionError on empty text, ClientFault on failure.
  virtual ScoreResult score_text(std::string_view text) = 0;
};

// One fresh client pair per trace; the argument is the corpus position.
struct ClientFactory {
  std::function<std::unique_ptr<CompletionClient>(std::size_t)> llm;
  std::function<std::unique_ptr<ScoringClient>(std::size_t)> classifier;
};

// ---------------------------------------------------------------------------
// Deterministic offline backends.

// Replays canned completions in order; throws ScriptExhausted afterwards.
class ScriptedCompletionClient final : public CompletionClient {
 public:
  explicit ScriptedCompletionClient(std::vector<std::string> outputs);

  std::string complete(const CompletionRequest& request) override;

  std::size_t remaining() const { return queue_.size(); }

 private:
  std::deque<std::string> queue_;
};

// Script file: one raw completion per line. Within a line "\n" encodes a
// newline, "\t" a tab and "\\" a backslash. Throws IoError.
std::vector<std::string> load_completion_script(
    const std::filesystem::path& path);
std::vector<std::string> parse_completion_script(std::string_view text);

using Lexicon = std::set<std::string>;
using LeetMap = std::map<char32_t, std::string>;

// a->@, e->3, i->!, l->1, o->0, u->#
LeetMap default_leet_map();

// Newline-delimited words; lowercased, surrounding whitespace trimmed, blank
// lines skipped. Throws IoError.
Lexicon load_lexicon(const std::filesystem::path& path);

// Splits on every non-alphanumeric scalar value (see utf8::is_alnum) and
// lowercases ASCII letters.
std::vector<std::string> tokenize(std::string_view text);

// One step of the rule-based stand-in for an attacker LLM: take the sample on
// the last step line of `prompt`, find the first token still in the lexicon,
// leet-substitute its first mappable character and return the result between
// '|' delimiters. With no lexicon token left (or none with a mappable
// character) a '*' goes before the final character instead.
// Throws UnparseablePrompt when the prompt has no step line.
std::string heuristic_perturber_step(
    std::string_view prompt, const Lexicon& lexicon, const LeetMap& leet_map,
    const PromptTemplate& tmpl = PromptTemplate::canonical());

class HeuristicPerturberClient final : public CompletionClient {
 public:
  HeuristicPerturberClient(Lexicon lexicon, LeetMap leet_map,
                           PromptTemplate tmpl = PromptTemplate::canonical());

  std::string complete(const CompletionRequest& request) override;

 private:
  Lexicon lexicon_;
  LeetMap leet_map_;
  PromptTemplate template_;
};

struct LexiconClassifierSpec {
  Lexicon lexicon;
  double base_score = 0.05;
  double per_hit = 0.15;
  double floor_on_hit = 0.5;
  double cap = 0.95;

  // Requires 0 <= base_score < floor_on_hit <= cap <= 1 and per_hit >= 0.
  void validate() const;
};

// Counts lexicon tokens: base_score with no hits, otherwise
// min(cap, floor_on_hit + per_hit * hits).
class LexiconClassifier final : public ScoringClient {
 public:
  explicit LexiconClassifier(LexiconClassifierSpec spec);

  ScoreResult score_text(std::string_view text) override;

  std::size_t count_hits(std::string_view text) const;
  const LexiconClassifierSpec& spec() const { return spec_; }

 private:
  LexiconClassifierSpec spec_;
};

}  // namespace advforge

#endif  // ADVFORGE_MODEL_CLIENTS_HPP_
