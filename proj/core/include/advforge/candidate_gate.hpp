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

#ifndef ADVFORGE_CANDIDATE_GATE_HPP_
#define ADVFORGE_CANDIDATE_GATE_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace advforge {

// Every kind is retryable: the engine re-queries the LLM after any of them.
enum class RejectionKind {
  kNoDelimiters,
  kEmptyCandidate,
  kDuplicateSample,
  kExceedsMaxChange,
};

std::string_view to_string(RejectionKind kind);

struct RejectionReason {
  RejectionKind kind;
  std::string detail;
};

// Either the extracted candidate or the reason it could not be extracted.
using Extraction = std::variant<std::string, RejectionReason>;

// Text between the first '|' and the next '|', whitespace-trimmed. Later
// delimited spans are ignored.
Extraction extract_candidate(std::string_view llm_output);

// Rejects a candidate equal (exact, case-sensitive) to any accepted sample,
// or one whose Levenshtein distance to the most recently accepted sample
// exceeds max_change. The threshold is inclusive. `accepted_history` must
// hold at least the original sample.
std::optional<RejectionReason> validate_candidate(
    std::string_view candidate, std::span<const std::string> accepted_history,
    std::optional<int> max_change);

}  // namespace advforge

#endif  // ADVFORGE_CANDIDATE_GATE_HPP_
