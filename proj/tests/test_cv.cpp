#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stylo/errors.hpp"
#include "stylo/models/cross_validation.hpp"
#include "stylo/models/logistic.hpp"
#include "stylo/models/svm_rbf.hpp"
#include "stylo/rng.hpp"

using namespace stylo;

namespace {

std::pair<Matrix, std::vector<int>> ring_data(std::size_t n, std::uint64_t seed) {
  // Class 1 inside a radius, class 0 outside: separable by rbf, not linearly.
  Matrix X(n, 2);
  std::vector<int> y(n);
  SeededRng rng(seed);
  for (std::size_t r = 0; r < n; ++r) {
    y[r] = static_cast<int>(r % 2);
    double radius = y[r] == 1 ? rng.uniform(0.0, 0.8) : rng.uniform(1.4, 2.2);
    double angle = rng.uniform(0.0, 6.283185307179586);
    X.at(r, 0) = radius * std::cos(angle);
    X.at(r, 1) = radius * std::sin(angle);
  }
  return {std::move(X), std::move(y)};
}

FitFunction logistic_fit(double lambda) {
  return [lambda](const Matrix& X, const std::vector<int>& y) {
    return std::make_unique<LogisticRegression>(
        LogisticRegression::fit(X, y, {.l2_lambda = lambda, .learning_rate = 0.3, .epochs = 150}));
  };
}

}  // namespace

TEST_CASE("stratified folds balance both classes") {
  std::vector<int> y;
  for (std::size_t i = 0; i < 100; ++i) y.push_back(static_cast<int>(i % 2));
  auto fold_of = stratified_folds(y, 5, 11);
  REQUIRE(fold_of.size() == 100);
  std::vector<std::size_t> human(5, 0), machine(5, 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    (y[i] == 0 ? human : machine)[fold_of[i]]++;
  }
  for (std::size_t f = 0; f < 5; ++f) {
    CHECK(human[f] == 10);
    CHECK(machine[f] == 10);
  }
}

TEST_CASE("a single-candidate grid returns that candidate") {
  auto [X, y] = ring_data(60, 1);
  std::vector<FitFunction> candidates;
  candidates.push_back(logistic_fit(0.01));
  auto result = cross_validate(X, y, candidates, 5, 3);
  CHECK(result.best_index == 0);
  CHECK(result.mean_auc.size() == 1);
}

TEST_CASE("cross-validation picks the candidate that can separate") {
  auto [X, y] = ring_data(150, 2);
  std::vector<FitFunction> candidates;
  // gamma far too small: the kernel is ~constant and cannot separate the ring
  candidates.push_back([](const Matrix& cx, const std::vector<int>& cy) {
    SvmHyperparams hp;
    hp.c = 1.0;
    hp.gamma = 1e-6;
    return std::make_unique<SvmRbf>(SvmRbf::fit(cx, cy, hp));
  });
  candidates.push_back([](const Matrix& cx, const std::vector<int>& cy) {
    SvmHyperparams hp;
    hp.c = 10.0;
    hp.gamma = 1.0;
    return std::make_unique<SvmRbf>(SvmRbf::fit(cx, cy, hp));
  });
  auto result = cross_validate(X, y, candidates, 5, 4);
  CHECK(result.best_index == 1);
  CHECK(result.mean_auc[1] > result.mean_auc[0]);
  CHECK(result.mean_auc[1] > 0.9);
}

TEST_CASE("fold counts and degenerate inputs") {
  auto [X, y] = ring_data(12, 5);
  std::vector<FitFunction> candidates = {logistic_fit(0.01)};
  CHECK_THROWS_AS(cross_validate(X, y, candidates, 1, 6), ConfigInvalidError);
  CHECK_THROWS_AS(cross_validate(X, y, candidates, 7, 6), TooFewRowsError);
  CHECK_THROWS_AS(cross_validate(X, y, {}, 5, 6), ConfigInvalidError);
}

TEST_CASE("cross-validation is deterministic given the seed") {
  auto [X, y] = ring_data(80, 7);
  std::vector<FitFunction> candidates = {logistic_fit(0.001), logistic_fit(0.1)};
  auto a = cross_validate(X, y, candidates, 4, 9);
  auto b = cross_validate(X, y, candidates, 4, 9);
  CHECK(a.best_index == b.best_index);
  CHECK(a.mean_auc == b.mean_auc);
}
