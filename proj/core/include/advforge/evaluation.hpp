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

#ifndef ADVFORGE_EVALUATION_HPP_
#define ADVFORGE_EVALUATION_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "advforge/attack_engine.hpp"

namespace advforge {

struct MeanStd {
  double mean = 0.0;
  // Sample standard deviation (n - 1 divisor); 0 for a single value.
  double std = 0.0;

  friend bool operator==(const MeanStd&, const MeanStd&) = default;
};

// Empty input yields {0, 0}.
MeanStd mean_std(std::span<const double> values);

struct CampaignSummary {
  std::size_t total = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  MeanStd initial_score;
  // Over successful traces only; empty when nothing succeeded.
  std::optional<MeanStd> hate_score;
  std::optional<MeanStd> num_updates;
  std::optional<MeanStd> distance;
  std::optional<MeanStd> ratio;

  friend bool operator==(const CampaignSummary&,
                         const CampaignSummary&) = default;
};

// Throws EmptyTraceList.
CampaignSummary summarize(std::span<const AttackTrace> traces);

// distance_ratio(original, final) of every successful trace, ascending.
std::vector<double> sorted_ratio_series(std::span<const AttackTrace> traces);

// "rank,ratio" header then one 1-based row per entry.
std::string render_series_csv(std::span<const double> series);

struct ReportRow {
  std::string name;
  std::optional<int> max_change;
  CampaignSummary summary;
};

enum class ReportFormat { kCsv, kMarkdown };

// csv for ".csv", markdown for ".md"/".markdown".
std::optional<ReportFormat> report_format_from_extension(
    const std::filesystem::path& path);

// Columns: Model, Max Change, Success Rate (%), Hate Score, Num. Updates,
// Distance, Distance Ratio (%). Statistics render as "mean ± std", all
// rounded half-up to 2 decimals; unset Max Change renders "inf" and absent
// statistics "-".
std::string render_report(std::span<const ReportRow> rows,
                          ReportFormat format);

inline constexpr int kRunLogSchemaVersion = 1;

// One JSON object per line, keys in a fixed order, no timestamps unless the
// trace carries them. Throws IoError.
std::string serialize_trace(const AttackTrace& trace);
void write_run_log(std::span<const AttackTrace> traces,
                   const std::filesystem::path& path);

// Throws IoError, ParseError (with line number) or SchemaVersionMismatch.
AttackTrace parse_trace(std::string_view line, std::size_t line_number);
std::vector<AttackTrace> read_run_log(const std::filesystem::path& path);

}  // namespace advforge

#endif  // ADVFORGE_EVALUATION_HPP_
