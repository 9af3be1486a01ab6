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

#ifndef ADVFORGE_CORPUS_HPP_
#define ADVFORGE_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace advforge {

struct CorpusRecord {
  std::string id;
  std::string text;
  // Every other column or field, passed through untouched.
  std::map<std::string, std::string> metadata;

  friend bool operator==(const CorpusRecord&, const CorpusRecord&) = default;
};

enum class CorpusFormat { kCsv, kJsonl };

std::optional<CorpusFormat> parse_corpus_format(std::string_view name);

// csv for ".csv", jsonl for ".jsonl"/".ndjson"; nullopt otherwise.
std::optional<CorpusFormat> corpus_format_from_extension(
    const std::filesystem::path& path);

// Loads records in file order. CSV requires a header row with a `text`
// column and optionally `id`; JSONL takes one object per line with string
// `text` and optional string/number `id`. Missing ids become zero-padded
// 1-based row numbers ("000001"). Rows whose text is blank are skipped with a
// warning. Throws IoError, ParseError (with line) or MissingTextField.
std::vector<CorpusRecord> load_corpus(const std::filesystem::path& path,
                                      CorpusFormat format);
std::vector<CorpusRecord> parse_corpus(std::string_view content,
                                       CorpusFormat format);

struct FilterResult {
  std::vector<CorpusRecord> kept;
  std::size_t dropped_count = 0;
};

// True when `text` holds a hashtag or mention: '#' or '@' immediately
// followed by a word character (ASCII letter, digit, '_' or any non-ASCII
// scalar value).
bool has_platform_marker(std::string_view text);

// Drops records with platform markers, preserving order.
FilterResult filter_platform_markers(std::span<const CorpusRecord> records);

}  // namespace advforge

#endif  // ADVFORGE_CORPUS_HPP_
