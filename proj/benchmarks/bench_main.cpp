#include <benchmark/benchmark.h>

#include <random>

#include "refgame/oed.hpp"
#include "refgame/rsa.hpp"
#include "synthetic.hpp"

namespace {

using namespace refgame;

Matrix<double> random_scores(std::size_t pairs, std::size_t adjectives) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  Matrix<double> m(pairs, adjectives);
  for (auto& v : m.values()) v = u(rng);
  return m;
}

// argument: number of nouns; pairs grow quadratically
void BM_PragmaticListener(benchmark::State& state) {
  const auto nouns = static_cast<std::size_t>(state.range(0));
  const auto scores = random_scores(nouns * (nouns - 1) / 2, 8);
  for (auto _ : state) benchmark::DoNotOptimize(pragmatic_listener(scores, 0, 1.0));
}
BENCHMARK(BM_PragmaticListener)->Arg(3)->Arg(5)->Arg(10);

void BM_PragmaticSpeaker(benchmark::State& state) {
  const auto nouns = static_cast<std::size_t>(state.range(0));
  const auto scores = random_scores(nouns * (nouns - 1) / 2, 8);
  for (auto _ : state) benchmark::DoNotOptimize(pragmatic_speaker(scores, 0, 1.0));
}
BENCHMARK(BM_PragmaticSpeaker)->Arg(3)->Arg(5)->Arg(10);

void BM_ResponseInformation(benchmark::State& state) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> per_model(static_cast<std::size_t>(state.range(0)),
                                             std::vector<double>(10));
  for (auto& p : per_model) {
    double z = 0;
    for (auto& v : p) z += (v = u(rng));
    for (auto& v : p) v /= z;
  }
  for (auto _ : state) benchmark::DoNotOptimize(model_response_information(per_model));
}
BENCHMARK(BM_ResponseInformation)->Arg(2)->Arg(4)->Arg(8);

void BM_JointSearch(benchmark::State& state) {
  const auto lex = testing::make_lexicon(40, 40);
  std::mt19937_64 rng(13);
  AssociationSet set(lex);
  set.add("bigram", testing::random_table(lex, rng));
  const std::vector<ModelSpec> models{parse_model_spec("bigram:literal", Role::listener),
                                      parse_model_spec("bigram:pragmatic:1.0", Role::listener)};
  SearchSettings settings;
  settings.mode = SearchMode::joint;
  settings.nouns = 3;
  settings.adjectives = 3;
  settings.iterations = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_search(set, models, settings));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_JointSearch)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
