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

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "advforge/errors.hpp"
#include "advforge/utf8.hpp"

namespace advforge {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string unescape_script_line(std::string_view line) {
  std::string out;
  out.reserve(line.size());
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] != '\\' || i + 1 == line.size()) {
      out.push_back(line[i]);
      continue;
    }
    switch (line[i + 1]) {
      case 'n':
        out.push_back('\n');
        ++i;
        break;
      case 't':
        out.push_back('\t');
        ++i;
        break;
      case '\\':
        out.push_back('\\');
        ++i;
        break;
      default:
        out.push_back('\\');
    }
  }
  return out;
}

// Index range [begin, end) of one token inside a decoded sample.
struct TokenSpan {
  std::size_t begin;
  std::size_t end;
};

std::vector<TokenSpan> token_spans(std::u32string_view text) {
  std::vector<TokenSpan> spans;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !utf8::is_alnum(text[i])) ++i;
    const std::size_t begin = i;
    while (i < text.size() && utf8::is_alnum(text[i])) ++i;
    if (i > begin) spans.push_back({begin, i});
  }
  return spans;
}

std::string lowered(std::u32string_view token) {
  std::u32string out(token);
  std::transform(out.begin(), out.end(), out.begin(), utf8::to_lower_ascii);
  return utf8::encode(out);
}

GenerationParams mock_params(std::string model_id) {
  GenerationParams params;
  params.model_id = std::move(model_id);
  return params;
}

}  // namespace

CompletionRequest CompletionClient::make_request(std::string prompt) const {
  if (prompt.empty()) {
    throw PreconditionError("completion prompt must not be empty");
  }
  CompletionRequest request;
  request.prompt = std::move(prompt);
  request.model_id = params_.model_id;
  request.temperature = params_.temperature;
  request.max_tokens = params_.max_tokens;
  request.seed = params_.seed;
  return request;
}

ScriptedCompletionClient::ScriptedCompletionClient(
    std::vector<std::string> outputs)
    : CompletionClient(mock_params("mock-script")),
      queue_(std::make_move_iterator(outputs.begin()),
             std::make_move_iterator(outputs.end())) {}

std::string ScriptedCompletionClient::complete(const CompletionRequest&) {
  if (queue_.empty()) {
    throw ScriptExhausted("scripted completion client has no outputs left");
  }
  std::string out = std::move(queue_.front());
  queue_.pop_front();
  return out;
}

std::vector<std::string> parse_completion_script(std::string_view text) {
  std::vector<std::string> outputs;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos
                                           : eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    outputs.push_back(unescape_script_line(line));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return outputs;
}

std::vector<std::string> load_completion_script(
    const std::filesystem::path& path) {
  return parse_completion_script(read_file(path));
}

LeetMap default_leet_map() {
  return {{U'a', "@"}, {U'e', "3"}, {U'i', "!"},
          {U'l', "1"}, {U'o', "0"}, {U'u', "#"}};
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  Lexicon lexicon;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    lexicon.insert(lowered(utf8::decode(line.substr(first, last - first + 1))));
  }
  return lexicon;
}

std::vector<std::string> tokenize(std::string_view text) {
  const std::u32string decoded = utf8::decode(text);
  std::vector<std::string> tokens;
  for (const TokenSpan& span : token_spans(decoded)) {
    tokens.push_back(lowered(std::u32string_view(decoded).substr(
        span.begin, span.end - span.begin)));
  }
  return tokens;
}

std::string heuristic_perturber_step(std::string_view prompt,
                                     const Lexicon& lexicon,
                                     const LeetMap& leet_map,
                                     const PromptTemplate& tmpl) {
  const std::vector<StepEntry> steps = parse_step_lines(tmpl, prompt);
  if (steps.empty()) {
    throw UnparseablePrompt("prompt contains no step line");
  }
  std::u32string sample = utf8::decode(steps.back().sample);

  for (const TokenSpan& span : token_spans(sample)) {
    const std::u32string_view token =
        std::u32string_view(sample).substr(span.begin, span.end - span.begin);
    if (!lexicon.contains(lowered(token))) continue;
    for (std::size_t i = span.begin; i < span.end; ++i) {
      const auto it = leet_map.find(utf8::to_lower_ascii(sample[i]));
      if (it == leet_map.end()) continue;
      sample.replace(i, 1, utf8::decode(it->second));
      return "|" + utf8::encode(sample) + "|";
    }
  }

  const std::size_t at = sample.empty() ? 0 : sample.size() - 1;
  sample.insert(at, 1, U'*');
  return "|" + utf8::encode(sample) + "|";
}

HeuristicPerturberClient::HeuristicPerturberClient(Lexicon lexicon,
                                                   LeetMap leet_map,
                                                   PromptTemplate tmpl)
    : CompletionClient(mock_params("mock-heuristic")),
      lexicon_(std::move(lexicon)),
      leet_map_(std::move(leet_map)),
      template_(std::move(tmpl)) {}

std::string HeuristicPerturberClient::complete(
    const CompletionRequest& request) {
  return heuristic_perturber_step(request.prompt, lexicon_, leet_map_,
                                  template_);
}

void LexiconClassifierSpec::validate() const {
  if (!(0.0 <= base_score && base_score < floor_on_hit &&
        floor_on_hit <= cap && cap <= 1.0 && per_hit >= 0.0)) {
    throw ConfigError(
        "lexicon classifier requires 0 <= base_score < floor_on_hit <= cap "
        "<= 1 and per_hit >= 0");
  }
}

LexiconClassifier::LexiconClassifier(LexiconClassifierSpec spec)
    : spec_(std::move(spec)) {
  spec_.validate();
}

std::size_t LexiconClassifier::count_hits(std::string_view text) const {
  std::size_t hits = 0;
  for (const std::string& token : tokenize(text)) {
    if (spec_.lexicon.contains(token)) ++hits;
  }
  return hits;
}

ScoreResult LexiconClassifier::score_text(std::string_view text) {
  if (text.empty()) {
    throw PreconditionError("cannot score empty text");
  }
  const std::size_t hits = count_hits(text);
  ScoreResult result;
  result.model_id = "mock-lexicon";
  result.score =
      hits == 0 ? spec_.base_score
                : std::min(spec_.cap,
                           spec_.floor_on_hit +
                               spec_.per_hit * static_cast<double>(hits));
  return result;
}

}  // namespace advforge
