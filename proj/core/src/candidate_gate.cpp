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

#include "advforge/candidate_gate.hpp"

#include <algorithm>

#include "advforge/errors.hpp"
#include "advforge/prompt_builder.hpp"
#include "advforge/text_metrics.hpp"

namespace advforge {
namespace {

constexpr std::string_view kWhitespace = " \t\n\r\f\v";

}  // namespace

std::string_view to_string(RejectionKind kind) {
  switch (kind) {
    case RejectionKind::kNoDelimiters:
      return "NoDelimiters";
    case RejectionKind::kEmptyCandidate:
      return "EmptyCandidate";
    case RejectionKind::kDuplicateSample:
      return "DuplicateSample";
    case RejectionKind::kExceedsMaxChange:
      return "ExceedsMaxChange";
  }
  return "Unknown";
}

Extraction extract_candidate(std::string_view llm_output) {
  const auto open = llm_output.find(kSampleDelimiter);
  const auto close = open == std::string_view::npos
                         ? std::string_view::npos
                         : llm_output.find(kSampleDelimiter, open + 1);
  if (close == std::string_view::npos) {
    return RejectionReason{RejectionKind::kNoDelimiters,
                           "output lacks a |...| delimited span"};
  }
  std::string_view span = llm_output.substr(open + 1, close - open - 1);
  const auto first = span.find_first_not_of(kWhitespace);
  if (first == std::string_view::npos) {
    return RejectionReason{RejectionKind::kEmptyCandidate,
                           "delimited span is empty"};
  }
  const auto last = span.find_last_not_of(kWhitespace);
  return std::string(span.substr(first, last - first + 1));
}

std::optional<RejectionReason> validate_candidate(
    std::string_view candidate, std::span<const std::string> accepted_history,
    std::optional<int> max_change) {
  if (accepted_history.empty()) {
    throw PreconditionError(
        "accepted history must contain at least the original sample");
  }
  if (std::find(accepted_history.begin(), accepted_history.end(),
                candidate) != accepted_history.end()) {
    return RejectionReason{RejectionKind::kDuplicateSample,
                           "candidate repeats an earlier sample"};
  }
  if (max_change.has_value()) {
    const std::size_t distance =
        levenshtein(candidate, accepted_history.back());
    if (distance > static_cast<std::size_t>(*max_change)) {
      return RejectionReason{
          RejectionKind::kExceedsMaxChange,
          "distance " + std::to_string(distance) + " exceeds max change " +
              std::to_string(*max_change)};
    }
  }
  return std::nullopt;
}

}  // namespace advforge
