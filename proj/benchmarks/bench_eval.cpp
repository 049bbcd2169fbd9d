#include <benchmark/benchmark.h>

#include <vector>

#include "stylo/eval.hpp"
#include "stylo/rng.hpp"

namespace {

void BM_RocAuc(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  stylo::SeededRng rng(11);
  std::vector<double> scores(n);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = static_cast<int>(i % 2);
    scores[i] = rng.uniform01() + 0.3 * labels[i];
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(stylo::roc_auc(scores, labels));
  }
}
BENCHMARK(BM_RocAuc)->Arg(1000)->Arg(10000)->Arg(100000);

}  // namespace
