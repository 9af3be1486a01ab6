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

#ifndef ADVFORGE_PROMPT_BUILDER_HPP_
#define ADVFORGE_PROMPT_BUILDER_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace advforge {

inline constexpr char kSampleDelimiter = '|';

// The attack prompt in three instruction blocks followed by the running
// history. Every block may be overridden; canonical() is the default.
struct PromptTemplate {
  std::string definition_block;
  std::string task_block;
  std::string format_block;
  std::string history_header;
  // Must contain each of {index}, {sample} and {score} exactly once, in that
  // order, separated by non-empty literals.
  std::string step_line_pattern;
  int score_precision = 4;

  static PromptTemplate canonical();

  // Throws ConfigError describing the first problem found.
  void validate() const;
};

// Parses the template override format:
//
//   # comment lines and blank lines are ignored outside sections
//   score_precision = 4
//   [definition]
//   ...block text, verbatim...
//   [task]
//   ...
//
// Sections: definition, task, format, history_header, step_line. Leading and
// trailing blank lines of a section body are dropped; anything absent keeps
// its canonical value. Throws ConfigError.
PromptTemplate parse_prompt_template(std::string_view text);
PromptTemplate load_prompt_template(const std::filesystem::path& path);

struct StepEntry {
  std::size_t index = 0;
  std::string sample;
  double score = 0.0;

  friend bool operator==(const StepEntry&, const StepEntry&) = default;
};

// Prompt-side view of the optimization state. Indices are assigned
// consecutively from 0; entry 0 is the original sample.
class StepHistory {
 public:
  StepHistory() = default;
  StepHistory(std::string original, double score);

  // Throws DelimiterInSample or PreconditionError (score outside [0,1]).
  const StepEntry& push(std::string sample, double score);

  std::span<const StepEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const StepEntry& back() const { return entries_.back(); }

 private:
  std::vector<StepEntry> entries_;
};

// "Step {index}: |{sample}| - Prediction Score: {score};" with the score
// rounded half-up to four decimals, or per the given template.
std::string format_step_line(std::size_t index, std::string_view sample,
                             double score);
std::string format_step_line(const PromptTemplate& tmpl, std::size_t index,
                             std::string_view sample, double score);

// Throws EmptyHistory when there is nothing to render.
std::string build_prompt(const PromptTemplate& tmpl,
                         const StepHistory& history);

std::optional<StepEntry> parse_step_line(const PromptTemplate& tmpl,
                                         std::string_view line);

// Every rendered step in `text`, in order of appearance. Matches start at a
// line beginning; a sample may itself contain line breaks.
std::vector<StepEntry> parse_step_lines(const PromptTemplate& tmpl,
                                        std::string_view text);

}  // namespace advforge

#endif  // ADVFORGE_PROMPT_BUILDER_HPP_
