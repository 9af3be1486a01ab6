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

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "advforge/attack_engine.hpp"
#include "advforge/model_clients.hpp"
#include "advforge/prompt_builder.hpp"
#include "advforge/text_metrics.hpp"

namespace advforge {
namespace {

std::string random_text(std::size_t length, unsigned seed) {
  std::mt19937 rng(seed);
  const std::string alphabet = "abcdefghij !*#";
  std::string text(length, ' ');
  for (char& c : text) c = alphabet[rng() % alphabet.size()];
  return text;
}

void BM_Levenshtein(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::string a = random_text(n, 1);
  const std::string b = random_text(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(levenshtein(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Levenshtein)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_IndelDistance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::string a = random_text(n, 3);
  const std::string b = random_text(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(indel_distance(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IndelDistance)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_BuildPrompt(benchmark::State& state) {
  const PromptTemplate tmpl = PromptTemplate::canonical();
  StepHistory history(random_text(120, 5), 0.9);
  for (int i = 0; i < state.range(0); ++i) {
    history.push(random_text(120, 6 + i), 0.8);
  }
  for (auto _ : state) benchmark::DoNotOptimize(build_prompt(tmpl, history));
}
BENCHMARK(BM_BuildPrompt)->Arg(0)->Arg(10)->Arg(50);

void BM_HeuristicAttack(benchmark::State& state) {
  const Lexicon lexicon = {"idiot", "moron", "jerk", "loser", "clown"};
  LexiconClassifierSpec spec;
  spec.lexicon = lexicon;
  const std::string sample = "you idiot, what a moron and a jerk, total loser clown";
  for (auto _ : state) {
    HeuristicPerturberClient llm(lexicon, default_leet_map());
    LexiconClassifier classifier(spec);
    benchmark::DoNotOptimize(run_attack(sample, {}, llm, classifier));
  }
}
BENCHMARK(BM_HeuristicAttack);

}  // namespace
}  // namespace advforge

BENCHMARK_MAIN();
