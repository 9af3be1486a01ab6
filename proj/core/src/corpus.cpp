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

#include "advforge/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "advforge/errors.hpp"
#include "advforge/log.hpp"

namespace advforge {
namespace {

using Json = nlohmann::json;

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

std::string row_id(std::size_t row) {
  char buffer[24];
  std::snprintf(buffer, sizeof(buffer), "%06zu", row);
  return buffer;
}

// Appends a record after the shared id/blank-text checks.
class RecordSink {
 public:
  void add(std::size_t line, std::size_t row, std::optional<std::string> id,
           std::string text, std::map<std::string, std::string> metadata) {
    if (is_blank(text)) {
      log_warning("corpus line " + std::to_string(line) +
                  ": empty text, row skipped");
      return;
    }
    CorpusRecord record;
    record.id = id && !id->empty() ? std::move(*id) : row_id(row);
    if (!seen_.insert(record.id).second) {
      throw ParseError(line, "duplicate id '" + record.id + "'");
    }
    record.text = std::move(text);
    record.metadata = std::move(metadata);
    records_.push_back(std::move(record));
  }

  std::vector<CorpusRecord> take() { return std::move(records_); }

 private:
  std::set<std::string> seen_;
  std::vector<CorpusRecord> records_;
};

struct CsvRow {
  std::size_t line = 0;  // line on which the row starts
  std::vector<std::string> fields;
};

// RFC 4180: comma separated, double-quoted fields may hold commas, quotes
// ("" escape) and line breaks. CRLF and LF both end a row.
std::vector<CsvRow> split_csv(std::string_view content) {
  std::vector<CsvRow> rows;
  std::size_t line = 1;
  std::size_t i = 0;
  if (content.starts_with("\xEF\xBB\xBF")) i = 3;

  while (i < content.size()) {
    CsvRow row;
    row.line = line;
    std::string field;
    bool row_done = false;
    while (!row_done) {
      if (i < content.size() && content[i] == '"') {
        ++i;
        bool closed = false;
        while (i < content.size()) {
          const char c = content[i++];
          if (c == '"') {
            if (i < content.size() && content[i] == '"') {
              field.push_back('"');
              ++i;
            } else {
              closed = true;
              break;
            }
          } else {
            if (c == '\n') ++line;
            field.push_back(c);
          }
        }
        if (!closed) throw ParseError(row.line, "unterminated quoted field");
        if (i < content.size() && content[i] != ',' && content[i] != '\n' &&
            content[i] != '\r') {
          throw ParseError(line, "unexpected character after quoted field");
        }
      } else {
        while (i < content.size() && content[i] != ',' && content[i] != '\n' &&
               content[i] != '\r') {
          if (content[i] == '"') {
            throw ParseError(line, "stray quote in unquoted field");
          }
          field.push_back(content[i++]);
        }
      }
      row.fields.push_back(std::move(field));
      field.clear();
      if (i < content.size() && content[i] == ',') {
        ++i;
        continue;
      }
      if (i < content.size() && content[i] == '\r') ++i;
      if (i < content.size() && content[i] == '\n') ++i;
      ++line;
      row_done = true;
    }
    const bool empty_line = row.fields.size() == 1 && row.fields[0].empty();
    if (!empty_line) rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CorpusRecord> parse_csv(std::string_view content) {
  const std::vector<CsvRow> rows = split_csv(content);
  if (rows.empty()) throw ParseError(1, "CSV header row is missing");

  const std::vector<std::string>& header = rows.front().fields;
  std::optional<std::size_t> text_col;
  std::optional<std::size_t> id_col;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "text") text_col = c;
    if (header[c] == "id") id_col = c;
  }
  if (!text_col) {
    throw MissingTextField(rows.front().line,
                           "CSV header has no 'text' column");
  }

  RecordSink sink;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    if (row.fields.size() != header.size()) {
      throw ParseError(row.line, "expected " + std::to_string(header.size()) +
                                     " fields, found " +
                                     std::to_string(row.fields.size()));
    }
    std::map<std::string, std::string> metadata;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c != *text_col && c != id_col) metadata[header[c]] = row.fields[c];
    }
    std::optional<std::string> id;
    if (id_col) id = row.fields[*id_col];
    sink.add(row.line, r, std::move(id), row.fields[*text_col],
             std::move(metadata));
  }
  return sink.take();
}

std::vector<CorpusRecord> parse_jsonl(std::string_view content) {
  RecordSink sink;
  std::size_t line_no = 0;
  std::size_t row = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    const auto eol = content.find('\n', pos);
    std::string_view line = content.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos
                                           : eol - pos);
    pos = eol == std::string_view::npos ? content.size() : eol + 1;
    ++line_no;
    if (is_blank(line)) continue;
    ++row;

    Json object = Json::parse(line, nullptr, false);
    if (object.is_discarded() || !object.is_object()) {
      throw ParseError(line_no, "not a JSON object");
    }
    if (!object.contains("text") || !object["text"].is_string()) {
      throw MissingTextField(line_no, "record has no string 'text' field");
    }
    std::optional<std::string> id;
    if (object.contains("id")) {
      const Json& value = object["id"];
      if (value.is_string()) {
        id = value.get<std::string>();
      } else if (value.is_number_integer()) {
        id = value.dump();
      } else if (!value.is_null()) {
        throw ParseError(line_no, "'id' must be a string or integer");
      }
    }
    std::map<std::string, std::string> metadata;
    for (auto it = object.begin(); it != object.end(); ++it) {
      if (it.key() == "text" || it.key() == "id") continue;
      metadata[it.key()] =
          it->is_string() ? it->get<std::string>() : it->dump();
    }
    sink.add(line_no, row, std::move(id), object["text"].get<std::string>(),
             std::move(metadata));
  }
  return sink.take();
}

bool is_word_byte_start(unsigned char c) {
  return std::isalnum(c) != 0 || c == '_' || c >= 0x80;
}

}  // namespace

std::optional<CorpusFormat> parse_corpus_format(std::string_view name) {
  if (name == "csv") return CorpusFormat::kCsv;
  if (name == "jsonl" || name == "ndjson") return CorpusFormat::kJsonl;
  return std::nullopt;
}

std::optional<CorpusFormat> corpus_format_from_extension(
    const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  if (!ext.empty()) ext.erase(0, 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return parse_corpus_format(ext);
}

std::vector<CorpusRecord> parse_corpus(std::string_view content,
                                       CorpusFormat format) {
  return format == CorpusFormat::kCsv ? parse_csv(content)
                                      : parse_jsonl(content);
}

std::vector<CorpusRecord> load_corpus(const std::filesystem::path& path,
                                      CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read corpus " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_corpus(buffer.str(), format);
}

bool has_platform_marker(std::string_view text) {
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if ((text[i] == '#' || text[i] == '@') &&
        is_word_byte_start(static_cast<unsigned char>(text[i + 1]))) {
      return true;
    }
  }
  return false;
}

FilterResult filter_platform_markers(std::span<const CorpusRecord> records) {
  FilterResult result;
  for (const CorpusRecord& record : records) {
    if (has_platform_marker(record.text)) {
      ++result.dropped_count;
    } else {
      result.kept.push_back(record);
    }
  }
  return result;
}

}  // namespace advforge
