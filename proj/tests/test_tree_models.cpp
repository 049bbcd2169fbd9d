#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "stylo/errors.hpp"
#include "stylo/eval.hpp"
#include "stylo/models/decision_tree.hpp"
#include "stylo/models/gradient_boosting.hpp"
#include "stylo/models/random_forest.hpp"
#include "stylo/rng.hpp"

using namespace stylo;

namespace {

// Linearly separable blobs in 4 dimensions; only feature 0 carries signal.
std::pair<Matrix, std::vector<int>> blobs(std::size_t n, std::uint64_t seed, double gap = 2.0) {
  Matrix X(n, 4);
  std::vector<int> y(n);
  SeededRng rng(seed);
  for (std::size_t r = 0; r < n; ++r) {
    y[r] = static_cast<int>(r % 2);
    X.at(r, 0) = rng.normal() + gap * y[r];
    for (std::size_t c = 1; c < 4; ++c) X.at(r, c) = rng.normal();
  }
  return {std::move(X), std::move(y)};
}

}  // namespace

TEST_CASE("gini impurity formula cases") {
  CHECK(gini_impurity(2, 4) == doctest::Approx(0.5));
  CHECK(gini_impurity(0, 4) == 0.0);
  CHECK(gini_impurity(4, 4) == 0.0);
  CHECK(gini_impurity(1, 4) == doctest::Approx(0.375));
}

TEST_CASE("a perfectly separating feature yields a depth-1 tree") {
  Matrix X(8, 2);
  std::vector<int> y(8);
  for (std::size_t r = 0; r < 8; ++r) {
    y[r] = r < 4 ? 0 : 1;
    X.at(r, 0) = y[r] == 0 ? 1.0 + static_cast<double>(r) * 0.1 : 5.0 + static_cast<double>(r);
    X.at(r, 1) = static_cast<double>(r % 3);  // noise
  }
  SeededRng rng(1);
  auto tree = DecisionTree::fit(X, y, {}, rng);
  CHECK(tree.depth() == 1);
  CHECK(tree.predict(X) == y);
  auto importance = tree.feature_importance();
  REQUIRE(importance.has_value());
  CHECK((*importance)[0] == doctest::Approx(1.0));
  CHECK((*importance)[1] == 0.0);
}

TEST_CASE("max_depth zero gives a single base-rate leaf") {
  auto [X, y] = blobs(30, 2);
  SeededRng rng(3);
  TreeHyperparams hp;
  hp.max_depth = 0;
  auto tree = DecisionTree::fit(X, y, hp, rng);
  double base_rate = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  std::vector<double> probe = {0.0, 0.0, 0.0, 0.0};
  CHECK(tree.predict_proba(probe) == doctest::Approx(base_rate));
  CHECK(tree.nodes().size() == 1);
}

TEST_CASE("min_samples_leaf bounds the leaf sizes") {
  auto [X, y] = blobs(64, 4);
  SeededRng rng(5);
  TreeHyperparams hp;
  hp.min_samples_leaf = 8;
  auto tree = DecisionTree::fit(X, y, hp, rng);
  // Count samples reaching each leaf.
  std::vector<std::size_t> counts(tree.nodes().size(), 0);
  for (std::size_t r = 0; r < X.rows; ++r) {
    int node = 0;
    while (tree.nodes().feature[node] >= 0) {
      node = X.at(r, static_cast<std::size_t>(tree.nodes().feature[node])) <=
                     tree.nodes().threshold[node]
                 ? tree.nodes().left[node]
                 : tree.nodes().right[node];
    }
    counts[static_cast<std::size_t>(node)]++;
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (tree.nodes().feature[i] < 0) CHECK(counts[i] >= 8);
  }
}

TEST_CASE("single-tree forest without bootstrap equals the plain tree") {
  auto [X, y] = blobs(60, 6);
  ForestHyperparams fh;
  fh.n_trees = 1;
  fh.bootstrap = false;
  fh.seed = 123;
  fh.feature_subset_size = 4;  // all features
  auto forest = RandomForest::fit(X, y, fh);

  SeededRng rng(123 + 0);  // tree 0 stream
  TreeHyperparams th;
  th.feature_subset_size = 4;
  auto tree = DecisionTree::fit(X, y, th, rng);

  for (std::size_t r = 0; r < X.rows; ++r) {
    CHECK(forest.predict_proba(X.row(r)) == tree.predict_proba(X.row(r)));
  }
}

TEST_CASE("forest reaches high held-out accuracy on separable data") {
  auto [X, y] = blobs(200, 7, 5.0);
  auto [Xt, yt] = blobs(100, 8, 5.0);
  ForestHyperparams hp;
  hp.n_trees = 60;
  hp.seed = 9;
  auto forest = RandomForest::fit(X, y, hp);
  CHECK(accuracy(forest.predict(Xt), yt) >= 0.95);
}

TEST_CASE("forest probability is the mean of member trees") {
  auto [X, y] = blobs(80, 10);
  ForestHyperparams hp;
  hp.n_trees = 15;
  hp.seed = 77;
  auto forest = RandomForest::fit(X, y, hp);
  std::vector<double> probe = {0.4, -0.2, 1.0, 0.0};
  double mean = 0.0;
  for (const auto& tree : forest.trees()) mean += tree.predict_proba(probe);
  mean /= static_cast<double>(forest.trees().size());
  CHECK(forest.predict_proba(probe) == doctest::Approx(mean).epsilon(1e-15));
}

TEST_CASE("forest fits are identical across thread counts") {
  auto [X, y] = blobs(120, 11);
  ForestHyperparams hp;
  hp.n_trees = 24;
  hp.seed = 31;
  auto sequential = RandomForest::fit(X, y, hp, 1);
  auto parallel = RandomForest::fit(X, y, hp, 4);
  for (std::size_t r = 0; r < X.rows; ++r) {
    CHECK(sequential.predict_proba(X.row(r)) == parallel.predict_proba(X.row(r)));
  }
}

TEST_CASE("forest refit with the same seed is bit-identical") {
  auto [X, y] = blobs(90, 12);
  ForestHyperparams hp;
  hp.n_trees = 20;
  hp.seed = 4;
  auto a = RandomForest::fit(X, y, hp);
  auto b = RandomForest::fit(X, y, hp);
  for (std::size_t r = 0; r < X.rows; ++r) {
    CHECK(a.predict_proba(X.row(r)) == b.predict_proba(X.row(r)));
  }
}

TEST_CASE("boosting with zero rounds predicts the base rate") {
  Matrix X(10, 2);
  std::vector<int> y = {1, 0, 0, 0, 1, 0, 0, 0, 0, 0};  // base rate 0.2
  BoostingHyperparams hp;
  hp.n_rounds = 0;
  auto model = GradientBoosting::fit(X, y, hp);
  std::vector<double> probe = {3.0, -1.0};
  CHECK(model.predict_proba(probe) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("boosting training loss never increases") {
  SeededRng rng(13);
  for (std::uint64_t seed : {21ull, 22ull, 23ull}) {
    auto [X, y] = blobs(80, seed, 0.7);
    BoostingHyperparams hp;
    hp.n_rounds = 60;
    hp.learning_rate = 0.1;
    auto model = GradientBoosting::fit(X, y, hp);
    const auto& losses = model.training_loss();
    REQUIRE(losses.size() == 61);
    for (std::size_t i = 1; i < losses.size(); ++i) {
      CHECK(losses[i] <= losses[i - 1] + 1e-12);
    }
  }
}

TEST_CASE("boosting separates the blobs") {
  auto [X, y] = blobs(200, 14, 5.0);
  auto [Xt, yt] = blobs(100, 15, 5.0);
  BoostingHyperparams hp;
  hp.n_rounds = 80;
  auto model = GradientBoosting::fit(X, y, hp);
  CHECK(accuracy(model.predict(Xt), yt) >= 0.95);
}

TEST_CASE("tree-model importances are normalized and concentrated") {
  auto [X, y] = blobs(150, 16, 3.0);

  ForestHyperparams fh;
  fh.n_trees = 40;
  fh.seed = 18;
  auto forest = RandomForest::fit(X, y, fh);
  auto fi = forest.feature_importance();
  REQUIRE(fi.has_value());
  CHECK(std::accumulate(fi->begin(), fi->end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
  for (double v : *fi) CHECK(v >= 0.0);
  CHECK((*fi)[0] == *std::max_element(fi->begin(), fi->end()));

  BoostingHyperparams bh;
  bh.n_rounds = 40;
  auto boosted = GradientBoosting::fit(X, y, bh);
  auto bi = boosted.feature_importance();
  REQUIRE(bi.has_value());
  CHECK(std::accumulate(bi->begin(), bi->end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK((*bi)[0] == *std::max_element(bi->begin(), bi->end()));
}

TEST_CASE("a matrix where only one column shifts ranks that column first") {
  // Full-width matrix, pure noise except the coleman_liau_index slot.
  const std::size_t shifted_column = 14;
  Matrix X(240, 25);
  std::vector<int> y(240);
  SeededRng rng(40);
  for (std::size_t r = 0; r < X.rows; ++r) {
    y[r] = static_cast<int>(r % 2);
    for (std::size_t c = 0; c < X.cols; ++c) {
      X.at(r, c) = rng.normal() + (c == shifted_column ? 2.0 * y[r] : 0.0);
    }
  }

  ForestHyperparams fh;
  fh.n_trees = 60;
  fh.seed = 41;
  auto forest_importance = *RandomForest::fit(X, y, fh).feature_importance();
  CHECK(std::max_element(forest_importance.begin(), forest_importance.end()) -
            forest_importance.begin() ==
        static_cast<std::ptrdiff_t>(shifted_column));

  BoostingHyperparams bh;
  bh.n_rounds = 60;
  auto boost_importance = *GradientBoosting::fit(X, y, bh).feature_importance();
  CHECK(std::max_element(boost_importance.begin(), boost_importance.end()) -
            boost_importance.begin() ==
        static_cast<std::ptrdiff_t>(shifted_column));
}

TEST_CASE("tree and boosting persistence round-trips bit-exactly") {
  auto [X, y] = blobs(70, 19);

  ForestHyperparams fh;
  fh.n_trees = 8;
  fh.seed = 2;
  auto forest = RandomForest::fit(X, y, fh);
  std::stringstream fbuf;
  forest.save(fbuf);
  auto forest_back = Classifier::load(fbuf);
  CHECK(forest_back->family() == "random_forest");

  BoostingHyperparams bh;
  bh.n_rounds = 12;
  auto boosted = GradientBoosting::fit(X, y, bh);
  std::stringstream bbuf;
  boosted.save(bbuf);
  auto boosted_back = Classifier::load(bbuf);
  CHECK(boosted_back->family() == "gradient_boosting");

  for (std::size_t r = 0; r < X.rows; ++r) {
    CHECK(forest_back->predict_proba(X.row(r)) == forest.predict_proba(X.row(r)));
    CHECK(boosted_back->predict_proba(X.row(r)) == boosted.predict_proba(X.row(r)));
  }
}

TEST_CASE("loading a model against a different schema is rejected") {
  auto [X, y] = blobs(30, 20);
  ForestHyperparams hp;
  hp.n_trees = 3;
  hp.seed = 1;
  auto forest = RandomForest::fit(X, y, hp);
  std::stringstream buffer;
  forest.save(buffer);
  std::string text = buffer.str();
  auto pos = text.find("width:4");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 7, "width:9");
  std::istringstream in(text);
  CHECK_THROWS_AS(Classifier::load(in), SchemaMismatchError);
}
