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

#include "advforge/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numeric>
#include <sstream>

#include "advforge/errors.hpp"
#include "advforge/numeric_format.hpp"
#include "advforge/text_metrics.hpp"

namespace advforge {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kPlusMinus = " \xC2\xB1 ";

std::string stat_cell(const std::optional<MeanStd>& stat, double scale) {
  if (!stat) return "-";
  return format_fixed(stat->mean * scale, 2) + kPlusMinus +
         format_fixed(stat->std * scale, 2);
}

std::string csv_escape(std::string_view cell) {
  if (cell.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(cell);
  }
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string markdown_escape(std::string_view cell) {
  std::string out;
  for (char c : cell) {
    if (c == '|') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// Typed field access that reports the offending line.
class FieldReader {
 public:
  FieldReader(const Json& object, std::size_t line)
      : object_(object), line_(line) {}

  const Json& require(const char* key) const {
    if (!object_.contains(key)) missing(key);
    return object_[key];
  }

  std::string string(const char* key) const {
    const Json& v = require(key);
    if (!v.is_string()) wrong(key, "a string");
    return v.get<std::string>();
  }

  double number(const char* key) const {
    const Json& v = require(key);
    if (!v.is_number()) wrong(key, "a number");
    return v.get<double>();
  }

  long long integer(const char* key) const {
    const Json& v = require(key);
    if (!v.is_number_integer()) wrong(key, "an integer");
    return v.get<long long>();
  }

  std::optional<std::string> optional_string(const char* key) const {
    if (!object_.contains(key) || object_[key].is_null()) return std::nullopt;
    return string(key);
  }

  std::optional<int> optional_int(const char* key) const {
    if (!object_.contains(key) || object_[key].is_null()) return std::nullopt;
    return static_cast<int>(integer(key));
  }

  [[noreturn]] void missing(const char* key) const {
    throw ParseError(line_, std::string("missing field '") + key + "'");
  }
  [[noreturn]] void wrong(const char* key, const char* expected) const {
    throw ParseError(line_,
                     std::string("field '") + key + "' must be " + expected);
  }

 private:
  const Json& object_;
  std::size_t line_;
};

}  // namespace

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double squares = 0.0;
    for (double v : values) squares += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(squares / (n - 1.0));
  }
  return out;
}

CampaignSummary summarize(std::span<const AttackTrace> traces) {
  if (traces.empty()) {
    throw EmptyTraceList("cannot summarize an empty trace list");
  }
  std::vector<double> initial;
  std::vector<double> hate;
  std::vector<double> updates;
  std::vector<double> distance;
  std::vector<double> ratio;
  for (const AttackTrace& trace : traces) {
    initial.push_back(trace.initial_score);
    if (trace.outcome != Outcome::kSuccess) continue;
    const EditDistanceReport report =
        compare(trace.original_text, trace.final_text);
    hate.push_back(trace.final_score);
    updates.push_back(static_cast<double>(trace.steps.size()));
    distance.push_back(static_cast<double>(report.levenshtein));
    ratio.push_back(report.ratio);
  }

  CampaignSummary summary;
  summary.total = traces.size();
  summary.successes = hate.size();
  summary.success_rate = static_cast<double>(summary.successes) /
                         static_cast<double>(summary.total);
  summary.initial_score = mean_std(initial);
  if (summary.successes > 0) {
    summary.hate_score = mean_std(hate);
    summary.num_updates = mean_std(updates);
    summary.distance = mean_std(distance);
    summary.ratio = mean_std(ratio);
  }
  return summary;
}

std::vector<double> sorted_ratio_series(std::span<const AttackTrace> traces) {
  std::vector<double> series;
  for (const AttackTrace& trace : traces) {
    if (trace.outcome == Outcome::kSuccess) {
      series.push_back(distance_ratio(trace.original_text, trace.final_text));
    }
  }
  std::sort(series.begin(), series.end());
  return series;
}

std::string render_series_csv(std::span<const double> series) {
  std::string out = "rank,ratio\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += std::to_string(i + 1) + "," + format_fixed(series[i], 6) + "\n";
  }
  return out;
}

std::optional<ReportFormat> report_format_from_extension(
    const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".csv") return ReportFormat::kCsv;
  if (ext == ".md" || ext == ".markdown") return ReportFormat::kMarkdown;
  return std::nullopt;
}

std::string render_report(std::span<const ReportRow> rows,
                          ReportFormat format) {
  static const std::vector<std::string> kHeader = {
      "Model",      "Max Change", "Success Rate (%)",  "Hate Score",
      "Num. Updates", "Distance", "Distance Ratio (%)"};

  std::vector<std::vector<std::string>> table;
  for (const ReportRow& row : rows) {
    const CampaignSummary& s = row.summary;
    table.push_back({
        row.name,
        row.max_change ? std::to_string(*row.max_change) : "inf",
        format_fixed(s.success_rate * 100.0, 2),
        stat_cell(s.hate_score, 1.0),
        stat_cell(s.num_updates, 1.0),
        stat_cell(s.distance, 1.0),
        stat_cell(s.ratio, 100.0),
    });
  }

  std::string out;
  if (format == ReportFormat::kCsv) {
    auto emit = [&out](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out.push_back(',');
        out += csv_escape(cells[i]);
      }
      out.push_back('\n');
    };
    emit(kHeader);
    for (const auto& cells : table) emit(cells);
    return out;
  }

  auto emit = [&out](const std::vector<std::string>& cells) {
    out += "|";
    for (const std::string& cell : cells) out += " " + markdown_escape(cell) + " |";
    out.push_back('\n');
  };
  emit(kHeader);
  out += "|";
  for (std::size_t i = 0; i < kHeader.size(); ++i) {
    out += i == 0 ? " --- |" : " ---: |";
  }
  out.push_back('\n');
  for (const auto& cells : table) emit(cells);
  return out;
}

std::string serialize_trace(const AttackTrace& trace) {
  Json steps = Json::array();
  for (const StepRecord& step : trace.steps) {
    steps.push_back({
        {"index", step.index},
        {"text", step.text},
        {"score", step.score},
        {"distance_from_previous", step.distance_from_previous},
        {"invalid_attempts_before", step.invalid_attempts_before},
    });
  }
  Json record = {
      {"schema_version", kRunLogSchemaVersion},
      {"sample_id", trace.sample_id},
      {"original_text", trace.original_text},
      {"initial_score", trace.initial_score},
      {"steps", std::move(steps)},
      {"outcome", std::string(to_string(trace.outcome))},
      {"final_text", trace.final_text},
      {"final_score", trace.final_score},
      {"llm_calls", trace.llm_calls},
      {"classifier_calls", trace.classifier_calls},
      {"config_digest", trace.config_digest},
      {"max_change", trace.max_change ? Json(*trace.max_change) : Json()},
      {"model", trace.model},
  };
  if (trace.error) record["error"] = *trace.error;
  if (trace.started_at) record["started_at"] = *trace.started_at;
  if (trace.finished_at) record["finished_at"] = *trace.finished_at;
  return record.dump(-1, ' ', false, Json::error_handler_t::replace);
}

void write_run_log(std::span<const AttackTrace> traces,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open run log for writing: " + path.string());
  for (const AttackTrace& trace : traces) {
    out << serialize_trace(trace) << '\n';
  }
  out.flush();
  if (!out) throw IoError("failed writing run log " + path.string());
}

AttackTrace parse_trace(std::string_view line, std::size_t line_number) {
  const Json object = Json::parse(line, nullptr, false);
  if (object.is_discarded() || !object.is_object()) {
    throw ParseError(line_number, "run log record is not a JSON object");
  }
  const FieldReader fields(object, line_number);
  const long long version = fields.integer("schema_version");
  if (version != kRunLogSchemaVersion) {
    throw SchemaVersionMismatch(static_cast<int>(version),
                                kRunLogSchemaVersion);
  }

  AttackTrace trace;
  trace.sample_id = fields.string("sample_id");
  trace.original_text = fields.string("original_text");
  trace.initial_score = fields.number("initial_score");
  const Json& steps = fields.require("steps");
  if (!steps.is_array()) fields.wrong("steps", "an array");
  for (const Json& item : steps) {
    if (!item.is_object()) fields.wrong("steps", "an array of objects");
    const FieldReader step_fields(item, line_number);
    StepRecord step;
    step.index = static_cast<int>(step_fields.integer("index"));
    step.text = step_fields.string("text");
    step.score = step_fields.number("score");
    const long long distance = step_fields.integer("distance_from_previous");
    if (distance < 0) {
      step_fields.wrong("distance_from_previous", "non-negative");
    }
    step.distance_from_previous = static_cast<std::size_t>(distance);
    step.invalid_attempts_before =
        static_cast<int>(step_fields.integer("invalid_attempts_before"));
    trace.steps.push_back(std::move(step));
  }
  const auto outcome = parse_outcome(fields.string("outcome"));
  if (!outcome) fields.wrong("outcome", "a known outcome");
  trace.outcome = *outcome;
  trace.final_text = fields.string("final_text");
  trace.final_score = fields.number("final_score");
  trace.llm_calls = static_cast<int>(fields.integer("llm_calls"));
  trace.classifier_calls = static_cast<int>(fields.integer("classifier_calls"));
  trace.config_digest = fields.string("config_digest");
  trace.max_change = fields.optional_int("max_change");
  trace.model = fields.optional_string("model").value_or("");
  trace.error = fields.optional_string("error");
  trace.started_at = fields.optional_string("started_at");
  trace.finished_at = fields.optional_string("finished_at");
  return trace;
}

std::vector<AttackTrace> read_run_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read run log " + path.string());
  std::vector<AttackTrace> traces;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    traces.push_back(parse_trace(line, line_number));
  }
  return traces;
}

}  // namespace advforge
