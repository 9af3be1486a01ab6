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

#include "advforge/attack_engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <exception>
#include <mutex>
#include <thread>
#include <variant>

#include "advforge/candidate_gate.hpp"
#include "advforge/numeric_format.hpp"
#include "advforge/text_metrics.hpp"

namespace advforge {
namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

void check_sample(std::string_view sample) {
  if (sample.empty()) throw InvalidSample("attack sample must not be empty");
  if (sample.find(kSampleDelimiter) != std::string_view::npos) {
    throw InvalidSample("attack sample contains the '|' delimiter");
  }
}

}  // namespace

void AttackConfig::validate() const {
  if (!(std::isfinite(success_threshold) && success_threshold > 0.0 &&
        success_threshold < 1.0)) {
    throw ConfigError("threshold must lie strictly between 0 and 1");
  }
  if (max_updates < 1) throw ConfigError("max-updates must be at least 1");
  if (max_consecutive_invalid < 1) {
    throw ConfigError("abort-after must be at least 1");
  }
  if (max_change && *max_change < 1) {
    throw ConfigError("max-change must be at least 1");
  }
  if (score_precision < 1 || score_precision > 12) {
    throw ConfigError("score precision must be between 1 and 12");
  }
}

std::string AttackConfig::digest() const {
  std::string canonical;
  canonical += "threshold=" + format_fixed(success_threshold, 9);
  canonical += ";max_updates=" + std::to_string(max_updates);
  canonical += ";abort_after=" + std::to_string(max_consecutive_invalid);
  canonical += ";max_change=" +
               (max_change ? std::to_string(*max_change) : std::string("inf"));
  canonical += ";score_precision=" + std::to_string(score_precision);
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a(canonical)));
  return hex;
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kSuccess:
      return "Success";
    case Outcome::kMaxUpdates:
      return "MaxUpdates";
    case Outcome::kAborted:
      return "Aborted";
    case Outcome::kClientError:
      return "ClientError";
  }
  return "Unknown";
}

std::optional<Outcome> parse_outcome(std::string_view text) {
  for (Outcome o : {Outcome::kSuccess, Outcome::kMaxUpdates,
                    Outcome::kAborted, Outcome::kClientError}) {
    if (to_string(o) == text) return o;
  }
  return std::nullopt;
}

AttackTrace run_attack(std::string_view sample, const AttackConfig& config,
                       CompletionClient& llm, ScoringClient& classifier,
                       const EngineOptions& options) {
  check_sample(sample);
  config.validate();

  PromptTemplate tmpl = options.prompt;
  tmpl.score_precision = config.score_precision;
  tmpl.validate();

  AttackTrace trace;
  trace.original_text = std::string(sample);
  trace.final_text = trace.original_text;
  trace.config_digest = config.digest();
  trace.max_change = config.max_change;
  trace.model = llm.params().model_id;
  if (options.record_timestamps) trace.started_at = utc_timestamp();

  try {
    trace.initial_score = classifier.score_text(sample).score;
    ++trace.classifier_calls;
    trace.final_score = trace.initial_score;

    StepHistory history(trace.original_text, trace.initial_score);
    std::vector<std::string> accepted{trace.original_text};

    // An input the classifier already considers benign needs no updates.
    if (trace.initial_score < config.success_threshold) {
      trace.outcome = Outcome::kSuccess;
    } else {
      trace.outcome = Outcome::kMaxUpdates;
      int consecutive_invalid = 0;
      while (static_cast<int>(trace.steps.size()) < config.max_updates) {
        const std::string raw =
            llm.complete(llm.make_request(build_prompt(tmpl, history)));
        ++trace.llm_calls;

        Extraction extracted = extract_candidate(raw);
        std::optional<RejectionReason> rejection;
        if (auto* reason = std::get_if<RejectionReason>(&extracted)) {
          rejection = std::move(*reason);
        } else {
          rejection = validate_candidate(std::get<std::string>(extracted),
                                         accepted, config.max_change);
        }
        if (rejection) {
          if (++consecutive_invalid >= config.max_consecutive_invalid) {
            trace.outcome = Outcome::kAborted;
            break;
          }
          continue;
        }

        std::string candidate = std::move(std::get<std::string>(extracted));
        const double score = classifier.score_text(candidate).score;
        ++trace.classifier_calls;

        StepRecord step;
        step.index = static_cast<int>(trace.steps.size()) + 1;
        step.score = score;
        step.distance_from_previous = levenshtein(candidate, accepted.back());
        step.invalid_attempts_before = consecutive_invalid;
        step.text = candidate;
        consecutive_invalid = 0;

        history.push(candidate, score);
        accepted.push_back(candidate);
        trace.final_text = std::move(candidate);
        trace.final_score = score;
        trace.steps.push_back(std::move(step));

        if (score < config.success_threshold) {
          trace.outcome = Outcome::kSuccess;
          break;
        }
      }
    }
  } catch (const ClientFault& fault) {
    trace.outcome = Outcome::kClientError;
    trace.error = fault.what();
  }

  if (options.record_timestamps) trace.finished_at = utc_timestamp();
  return trace;
}

std::vector<AttackTrace> run_campaign(std::span<const CorpusRecord> corpus,
                                      const AttackConfig& config,
                                      const ClientFactory& clients,
                                      int parallelism,
                                      const EngineOptions& options,
                                      const ProgressCallback& progress) {
  if (corpus.empty()) throw PreconditionError("campaign corpus is empty");
  if (parallelism < 1) throw ConfigError("parallelism must be at least 1");
  if (!clients.llm || !clients.classifier) {
    throw ConfigError("campaign requires both an LLM and a classifier factory");
  }
  config.validate();
  for (const CorpusRecord& record : corpus) {
    try {
      check_sample(record.text);
    } catch (const InvalidSample& e) {
      throw InvalidSample("record " + record.id + ": " + e.what());
    }
  }

  std::vector<AttackTrace> traces(corpus.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  std::mutex failure_mutex;
  std::exception_ptr failure;

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < corpus.size();
         i = next.fetch_add(1)) {
      AttackTrace trace;
      try {
        auto llm = clients.llm(i);
        auto classifier = clients.classifier(i);
        trace = run_attack(corpus[i].text, config, *llm, *classifier, options);
      } catch (const ClientFault& fault) {
        // Client construction failed before the loop could start.
        trace.original_text = corpus[i].text;
        trace.final_text = corpus[i].text;
        trace.config_digest = config.digest();
        trace.max_change = config.max_change;
        trace.outcome = Outcome::kClientError;
        trace.error = fault.what();
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(corpus.size());
        return;
      }
      trace.sample_id = corpus[i].id;
      traces[i] = std::move(trace);
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        progress(i, traces[i]);
      }
    }
  };

  const std::size_t threads =
      std::min<std::size_t>(static_cast<std::size_t>(parallelism),
                            corpus.size());
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  const bool all_failed =
      std::all_of(traces.begin(), traces.end(), [](const AttackTrace& t) {
        return t.outcome == Outcome::kClientError;
      });
  if (all_failed) {
    std::string message =
        "every trace in the campaign failed with a client error; first: " +
        traces.front().error.value_or("unknown");
    throw CampaignFailed(std::move(message), std::move(traces));
  }
  return traces;
}

}  // namespace advforge
