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

#ifndef ADVFORGE_TESTS_SUPPORT_TEST_CLIENTS_HPP_
#define ADVFORGE_TESTS_SUPPORT_TEST_CLIENTS_HPP_

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "advforge/errors.hpp"
#include "advforge/model_clients.hpp"

namespace advforge::testing {

// Keeps every prompt it was sent, then delegates.
class RecordingCompletionClient final : public CompletionClient {
 public:
  explicit RecordingCompletionClient(std::unique_ptr<CompletionClient> inner)
      : CompletionClient(inner->params()), inner_(std::move(inner)) {}

  std::string complete(const CompletionRequest& request) override {
    prompts.push_back(request.prompt);
    return inner_->complete(request);
  }

  std::vector<std::string> prompts;

 private:
  std::unique_ptr<CompletionClient> inner_;
};

// Emits "|<prefix> <n>|" with a fresh n on each call.
class CountingCompletionClient final : public CompletionClient {
 public:
  explicit CountingCompletionClient(std::string prefix = "candidate")
      : prefix_(std::move(prefix)) {}

  std::string complete(const CompletionRequest&) override {
    return "|" + prefix_ + " " + std::to_string(++calls_) + "|";
  }

 private:
  std::string prefix_;
  int calls_ = 0;
};

class FailingCompletionClient final : public CompletionClient {
 public:
  std::string complete(const CompletionRequest&) override {
    throw TransportError("connection refused");
  }
};

// Constant score for any text.
class FixedScoreClassifier final : public ScoringClient {
 public:
  explicit FixedScoreClassifier(double score) : score_(score) {}

  ScoreResult score_text(std::string_view) override {
    ++calls;
    return ScoreResult{score_, "fixed", {}};
  }

  int calls = 0;

 private:
  double score_;
};

// Per-text scores with a default for anything unlisted.
class TableClassifier final : public ScoringClient {
 public:
  TableClassifier(std::map<std::string, double> table, double fallback)
      : table_(std::move(table)), fallback_(fallback) {}

  ScoreResult score_text(std::string_view text) override {
    const auto it = table_.find(std::string(text));
    return ScoreResult{it == table_.end() ? fallback_ : it->second, "table",
                       {}};
  }

 private:
  std::map<std::string, double> table_;
  double fallback_;
};

class FailingClassifier final : public ScoringClient {
 public:
  ScoreResult score_text(std::string_view) override {
    throw TransportError("classifier unreachable");
  }
};

}  // namespace advforge::testing

#endif  // ADVFORGE_TESTS_SUPPORT_TEST_CLIENTS_HPP_
