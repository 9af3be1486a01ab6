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

#include "advforge/text_metrics.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "advforge/utf8.hpp"

namespace advforge {
namespace {

// Drops the shared prefix and suffix; neither changes any edit distance.
void trim_common_affixes(std::u32string_view& a, std::u32string_view& b) {
  std::size_t prefix = 0;
  while (prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) {
    ++prefix;
  }
  a.remove_prefix(prefix);
  b.remove_prefix(prefix);
  std::size_t suffix = 0;
  while (suffix < a.size() && suffix < b.size() &&
         a[a.size() - 1 - suffix] == b[b.size() - 1 - suffix]) {
    ++suffix;
  }
  a.remove_suffix(suffix);
  b.remove_suffix(suffix);
}

// Two-row Wagner-Fischer with unit insert/delete and the given substitution
// cost. Memory is O(min(|a|, |b|)).
std::size_t weighted_distance(std::u32string_view a, std::u32string_view b,
                              std::size_t substitution_cost) {
  trim_common_affixes(a, b);
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return a.size();

  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;

  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i + 1;
    const char32_t ca = a[i];
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t above = row[j + 1];
      const std::size_t replace =
          diagonal + (ca == b[j] ? 0 : substitution_cost);
      row[j + 1] = std::min({above + 1, row[j] + 1, replace});
      diagonal = above;
    }
  }
  return row[b.size()];
}

}  // namespace

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return weighted_distance(utf8::decode(a), utf8::decode(b), 1);
}

std::size_t indel_distance(std::string_view a, std::string_view b) {
  return weighted_distance(utf8::decode(a), utf8::decode(b), 2);
}

double distance_ratio(std::string_view a, std::string_view b) {
  return compare(a, b).ratio;
}

EditDistanceReport compare(std::string_view a, std::string_view b) {
  const std::u32string ua = utf8::decode(a);
  const std::u32string ub = utf8::decode(b);
  EditDistanceReport report;
  report.len_a = ua.size();
  report.len_b = ub.size();
  report.levenshtein = weighted_distance(ua, ub, 1);
  report.indel = weighted_distance(ua, ub, 2);
  const std::size_t total = report.len_a + report.len_b;
  report.ratio = total == 0 ? 1.0
                            : 1.0 - static_cast<double>(report.indel) /
                                        static_cast<double>(total);
  return report;
}

}  // namespace advforge
