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

#ifndef ADVFORGE_TESTS_SUPPORT_ORACLES_HPP_
#define ADVFORGE_TESTS_SUPPORT_ORACLES_HPP_

// Reference implementations that share no code path with the library
// kernels: plain recursion for edit distance and subsequence enumeration for
// LCS. Only usable on short strings.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace advforge::testing {

// Definition-level recursion over the first characters. Matching heads are
// consumed directly, which is always optimal for unit costs.
inline std::size_t recursive_levenshtein(std::string_view a,
                                         std::string_view b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  if (a.front() == b.front()) {
    return recursive_levenshtein(a.substr(1), b.substr(1));
  }
  return 1 + std::min({recursive_levenshtein(a.substr(1), b),
                       recursive_levenshtein(a, b.substr(1)),
                       recursive_levenshtein(a.substr(1), b.substr(1))});
}

inline bool is_subsequence(std::string_view needle, std::string_view hay) {
  std::size_t j = 0;
  for (char c : hay) {
    if (j < needle.size() && needle[j] == c) ++j;
  }
  return j == needle.size();
}

// Longest common subsequence by enumerating every subsequence of `a`.
inline std::size_t brute_force_lcs(std::string_view a, std::string_view b) {
  std::size_t best = 0;
  const std::uint32_t subsets = 1u << a.size();
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    std::string picked;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (mask & (1u << i)) picked.push_back(a[i]);
    }
    if (picked.size() > best && is_subsequence(picked, b)) {
      best = picked.size();
    }
  }
  return best;
}

inline std::string random_string(std::mt19937& rng, std::size_t max_len,
                                  std::string_view alphabet) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string s(len(rng), ' ');
  for (char& c : s) c = alphabet[pick(rng)];
  return s;
}

}  // namespace advforge::testing

#endif  // ADVFORGE_TESTS_SUPPORT_ORACLES_HPP_
