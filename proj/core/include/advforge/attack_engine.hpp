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

#ifndef ADVFORGE_ATTACK_ENGINE_HPP_
#define ADVFORGE_ATTACK_ENGINE_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "advforge/corpus.hpp"
#include "advforge/errors.hpp"
#include "advforge/model_clients.hpp"
#include "advforge/prompt_builder.hpp"

namespace advforge {

struct AttackConfig {
  // Success once a sample scores strictly below this.
  double success_threshold = 0.5;
  // Cap on accepted (valid) updates.
  int max_updates = 50;
  // Abort after this many rejected generations in a row.
  int max_consecutive_invalid = 25;
  // Per-step Levenshtein cap against the last accepted sample; unset = inf.
  std::optional<int> max_change;
  int score_precision = 4;

  // Throws ConfigError naming the offending field.
  void validate() const;

  // Stable 16-hex-digit FNV-1a digest of the fields above.
  std::string digest() const;

  friend bool operator==(const AttackConfig&, const AttackConfig&) = default;
};

struct StepRecord {
  int index = 0;  // 1-based count of valid updates
  std::string text;
  double score = 0.0;
  std::size_t distance_from_previous = 0;
  int invalid_attempts_before = 0;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

enum class Outcome { kSuccess, kMaxUpdates, kAborted, kClientError };

std::string_view to_string(Outcome outcome);
std::optional<Outcome> parse_outcome(std::string_view text);

struct AttackTrace {
  std::string sample_id;
  std::string original_text;
  double initial_score = 0.0;
  std::vector<StepRecord> steps;
  Outcome outcome = Outcome::kAborted;
  int llm_calls = 0;
  int classifier_calls = 0;
  std::string final_text;
  double final_score = 0.0;
  std::string config_digest;
  // Informational; not part of the optimization state.
  std::optional<int> max_change;
  std::string model;
  std::optional<std::string> error;
  std::optional<std::string> started_at;
  std::optional<std::string> finished_at;

  int rejected_generations() const {
    return llm_calls - static_cast<int>(steps.size());
  }

  friend bool operator==(const AttackTrace&, const AttackTrace&) = default;
};

struct EngineOptions {
  PromptTemplate prompt = PromptTemplate::canonical();
  // ISO-8601 UTC start/finish stamps; leave off for byte-stable logs.
  bool record_timestamps = false;
};

// Runs the prompt -> LLM -> gate -> classifier loop for one sample.
// Client faults end the trace with outcome kClientError; they never escape.
// Throws InvalidSample for empty or '|'-bearing input and ConfigError for an
// invalid config.
AttackTrace run_attack(std::string_view sample, const AttackConfig& config,
                       CompletionClient& llm, ScoringClient& classifier,
                       const EngineOptions& options = {});

using ProgressCallback =
    std::function<void(std::size_t index, const AttackTrace& trace)>;

// Raised when every trace of a campaign ended in kClientError; the traces
// remain available for logging.
class CampaignFailed : public Error {
 public:
  CampaignFailed(std::string what, std::vector<AttackTrace> traces)
      : Error(std::move(what)), traces_(std::move(traces)) {}

  const std::vector<AttackTrace>& traces() const { return traces_; }

 private:
  std::vector<AttackTrace> traces_;
};

// Runs one independent attack per record on up to `parallelism` threads.
// Each trace gets its own client pair from `clients`. The result is in corpus
// order. `progress` is called (serialized) as each trace completes.
std::vector<AttackTrace> run_campaign(std::span<const CorpusRecord> corpus,
                                      const AttackConfig& config,
                                      const ClientFactory& clients,
                                      int parallelism,
                                      const EngineOptions& options = {},
                                      const ProgressCallback& progress = {});

}  // namespace advforge

#endif  // ADVFORGE_ATTACK_ENGINE_HPP_
