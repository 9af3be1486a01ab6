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

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

#include "support/oracles.hpp"

namespace advforge {
namespace {

using testing::brute_force_lcs;
using testing::random_string;
using testing::recursive_levenshtein;

constexpr const char* kOriginal = "Bro is a bitch, fucking cunt";
constexpr const char* kLeet = "Bro is a b!tch, f#cking c@nt";

TEST(LevenshteinTest, PureInsertions) { EXPECT_EQ(levenshtein("", "abc"), 3u); }

TEST(LevenshteinTest, KittenSitting) {
  // Frozen from the recursive oracle.
  ASSERT_EQ(recursive_levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
}

TEST(LevenshteinTest, ThreeSubstitutions) {
  // Frozen from an external DP oracle; the recursive one is too slow here.
  EXPECT_EQ(levenshtein(kOriginal, kLeet), 3u);
}

TEST(LevenshteinTest, EmptyStrings) {
  EXPECT_EQ(levenshtein("", ""), 0u);
  EXPECT_EQ(levenshtein("abc", ""), 3u);
}

TEST(LevenshteinTest, CountsScalarValuesNotBytes) {
  EXPECT_EQ(levenshtein("caf\xC3\xA9", "cafe"), 1u);
  EXPECT_EQ(levenshtein("\xF0\x9F\x98\x80", ""), 1u);
}

TEST(LevenshteinTest, CaseSensitive) { EXPECT_EQ(levenshtein("Ass", "ass"), 1u); }

TEST(IndelDistanceTest, Identity) { EXPECT_EQ(indel_distance("abc", "abc"), 0u); }

TEST(IndelDistanceTest, SubstitutionCostsTwo) {
  const std::size_t lcs = brute_force_lcs("ab", "ba");
  ASSERT_EQ(lcs, 1u);
  EXPECT_EQ(indel_distance("ab", "ba"), 2u);
  EXPECT_EQ(indel_distance(kOriginal, kLeet), 6u);
}

TEST(DistanceRatioTest, PublishedExamples) {
  EXPECT_NEAR(distance_ratio(kOriginal, kLeet), 0.8929, 5e-5);
  EXPECT_NEAR(distance_ratio(kOriginal, "Br0 is a b1tch, fvcking c*nt"),
              0.8571, 5e-5);
  const std::string obama =
      "If I trick a bitch and let her think I'm Obamaa to fuck, is that rape?";
  const std::string spaced =
      "If I trick a b itch and let her think I'm Obamaa to fuck, is that rape?";
  ASSERT_EQ(obama.size(), 70u);
  EXPECT_DOUBLE_EQ(distance_ratio(obama, spaced), 1.0 - 1.0 / 141.0);
}

TEST(DistanceRatioTest, BothEmptyIsOne) { EXPECT_EQ(distance_ratio("", ""), 1.0); }

TEST(DistanceRatioTest, DisjointIsZero) { EXPECT_EQ(distance_ratio("ab", "cd"), 0.0); }

TEST(CompareTest, FillsEveryField) {
  const EditDistanceReport r = compare(kOriginal, kLeet);
  EXPECT_EQ(r.levenshtein, 3u);
  EXPECT_EQ(r.indel, 6u);
  EXPECT_EQ(r.len_a, 28u);
  EXPECT_EQ(r.len_b, 28u);
  EXPECT_DOUBLE_EQ(r.ratio, 1.0 - 6.0 / 56.0);
}

TEST(TextMetricsPropertyTest, MatchesOraclesOnRandomPairs) {
  std::mt19937 rng(20240601);
  for (int i = 0; i < 1000; ++i) {
    const std::string a = random_string(rng, 8, "abcd");
    const std::string b = random_string(rng, 8, "abcd");
    ASSERT_EQ(levenshtein(a, b), recursive_levenshtein(a, b))
        << a << " / " << b;
    ASSERT_EQ(indel_distance(a, b),
              a.size() + b.size() - 2 * brute_force_lcs(a, b))
        << a << " / " << b;
  }
}

TEST(TextMetricsPropertyTest, ReportInvariants) {
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const std::string a = random_string(rng, 12, "abc");
    const std::string b = random_string(rng, 12, "abc");
    const EditDistanceReport r = compare(a, b);
    EXPECT_LE(r.levenshtein, r.indel);
    EXPECT_LE(r.indel, 2 * r.levenshtein);
    EXPECT_GE(r.levenshtein, r.len_a > r.len_b ? r.len_a - r.len_b
                                               : r.len_b - r.len_a);
    EXPECT_LE(r.levenshtein, std::max(r.len_a, r.len_b));
    EXPECT_GE(r.ratio, 0.0);
    EXPECT_LE(r.ratio, 1.0);
    EXPECT_EQ(r.ratio == 1.0, a == b);
  }
}

TEST(TextMetricsPropertyTest, SymmetricAndTriangular) {
  std::mt19937 rng(99);
  for (int i = 0; i < 1000; ++i) {
    const std::string a = random_string(rng, 10, "abcd");
    const std::string b = random_string(rng, 10, "abcd");
    const std::string c = random_string(rng, 10, "abcd");
    EXPECT_EQ(levenshtein(a, b), levenshtein(b, a));
    EXPECT_EQ(indel_distance(a, b), indel_distance(b, a));
    EXPECT_EQ(distance_ratio(a, b), distance_ratio(b, a));
    EXPECT_LE(levenshtein(a, c), levenshtein(a, b) + levenshtein(b, c));
    EXPECT_LE(indel_distance(a, c), indel_distance(a, b) + indel_distance(b, c));
  }
}

TEST(TextMetricsPerformanceTest, TenThousandCharactersUnderOneSecond) {
  std::mt19937 rng(3);
  std::string a(10000, ' ');
  std::string b(10000, ' ');
  for (char& c : a) c = static_cast<char>('a' + rng() % 26);
  for (char& c : b) c = static_cast<char>('a' + rng() % 26);
  const auto start = std::chrono::steady_clock::now();
  const EditDistanceReport r = compare(a, b);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_GT(r.levenshtein, 0u);
  // compare() runs both kernels; each must individually fit in a second.
  EXPECT_LT(std::chrono::duration<double>(elapsed).count(), 2.0);
  const auto start_single = std::chrono::steady_clock::now();
  levenshtein(a, b);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start_single)
                .count(),
            1.0);
}

}  // namespace
}  // namespace advforge
