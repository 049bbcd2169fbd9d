#include <benchmark/benchmark.h>

#include <vector>

#include "stylo/models/gradient_boosting.hpp"
#include "stylo/models/random_forest.hpp"
#include "stylo/rng.hpp"

namespace {

// Two overlapping gaussian blobs in 24 dimensions.
std::pair<stylo::Matrix, std::vector<int>> blob_data(std::size_t n) {
  stylo::Matrix X(n, 24);
  std::vector<int> y(n);
  stylo::SeededRng rng(3);
  for (std::size_t r = 0; r < n; ++r) {
    y[r] = static_cast<int>(r % 2);
    for (std::size_t c = 0; c < 24; ++c) {
      X.at(r, c) = rng.normal() + (c < 3 ? 0.8 * y[r] : 0.0);
    }
  }
  return {std::move(X), std::move(y)};
}

void BM_RandomForestFit(benchmark::State& state) {
  auto [X, y] = blob_data(static_cast<std::size_t>(state.range(0)));
  stylo::ForestHyperparams hp;
  hp.n_trees = 100;
  hp.seed = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stylo::RandomForest::fit(X, y, hp));
  }
}
BENCHMARK(BM_RandomForestFit)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_GradientBoostingFit(benchmark::State& state) {
  auto [X, y] = blob_data(static_cast<std::size_t>(state.range(0)));
  stylo::BoostingHyperparams hp;
  hp.n_rounds = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stylo::GradientBoosting::fit(X, y, hp));
  }
}
BENCHMARK(BM_GradientBoostingFit)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

}  // namespace
