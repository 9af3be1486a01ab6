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

#ifndef ADVFORGE_TEXT_METRICS_HPP_
#define ADVFORGE_TEXT_METRICS_HPP_

#include <cstddef>
#include <string_view>

// Exact edit-distance kernels over Unicode scalar values. Comparison is
// case-sensitive and performs no normalization: a perturbation the target
// classifier can see is a perturbation these metrics count.

namespace advforge {

struct EditDistanceReport {
  std::size_t levenshtein = 0;
  std::size_t indel = 0;
  double ratio = 1.0;
  std::size_t len_a = 0;
  std::size_t len_b = 0;
};

// Insert/delete/substitute edits, each of cost 1.
std::size_t levenshtein(std::string_view a, std::string_view b);

// Insert/delete edits only (a substitution costs 2).
// Equals len_a + len_b - 2 * LCS(a, b).
std::size_t indel_distance(std::string_view a, std::string_view b);

// 1 - indel_distance / (len_a + len_b); 1.0 for two empty strings.
// The indel convention is what reproduces published ratio values such as
// 0.8929 for three substitutions in a pair of 28-character strings.
double distance_ratio(std::string_view a, std::string_view b);

EditDistanceReport compare(std::string_view a, std::string_view b);

}  // namespace advforge

#endif  // ADVFORGE_TEXT_METRICS_HPP_
