#include <benchmark/benchmark.h>

#include "stylo/features.hpp"
#include "stylo/lexicon.hpp"
#include "stylo/rng.hpp"
#include "stylo/synth.hpp"
#include "stylo/text_stats.hpp"

namespace {

std::string sample_document(std::size_t sentences) {
  stylo::SynthConfig cfg;
  cfg.n_per_class = 1;
  cfg.seed = 7;
  cfg.human.mean_sentences = static_cast<double>(sentences);
  cfg.human.sentence_count_spread = 0.0;
  stylo::EmotionLexicon empty;
  return stylo::generate_synthetic_corpus(cfg, empty)[0].text;
}

void BM_ComputeStats(benchmark::State& state) {
  std::string text = sample_document(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(stylo::compute_stats(text));
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ComputeStats)->Arg(10)->Arg(100);

void BM_ExtractFeatures(benchmark::State& state) {
  std::string text = sample_document(static_cast<std::size_t>(state.range(0)));
  stylo::EmotionLexicon empty;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stylo::extract_features(text, empty));
  }
}
BENCHMARK(BM_ExtractFeatures)->Arg(10)->Arg(100);

void BM_Tokenize(benchmark::State& state) {
  std::string text = sample_document(100);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stylo::tokenize(text));
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Tokenize);

}  // namespace
