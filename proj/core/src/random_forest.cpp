#include "stylo/models/random_forest.hpp"

#include <cmath>
#include <numeric>

#include "model_io.hpp"
#include "stylo/parallel.hpp"

namespace stylo {

namespace {
const std::string kFamily = "random_forest";
}

RandomForest RandomForest::fit(const Matrix& X, const std::vector<int>& y,
                               const ForestHyperparams& hp, unsigned threads) {
  if (X.rows != y.size()) throw LengthMismatchError(X.rows, y.size());
  if (X.rows == 0) throw TooFewRowsError("random forest needs training rows");
  if (hp.n_trees == 0) throw ConfigInvalidError("random forest needs at least one tree");

  RandomForest model;
  model.hp_ = hp;
  model.n_features_ = X.cols;
  model.schema_tag_ = schema_tag_for_width(X.cols);
  model.trees_.resize(hp.n_trees);

  TreeHyperparams tree_hp;
  tree_hp.max_depth = hp.max_depth;
  tree_hp.min_samples_leaf = hp.min_samples_leaf;
  tree_hp.feature_subset_size =
      hp.feature_subset_size != 0
          ? hp.feature_subset_size
          : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(X.cols))));

  const std::size_t n = X.rows;
  parallel_for(hp.n_trees, threads, [&](std::size_t t) {
    // Each tree owns the stream seeded with seed + t: bootstrap indices are
    // drawn first, then the split-time feature subsets.
    SeededRng rng(hp.seed + t);
    Matrix sample(n, X.cols);
    std::vector<int> sample_y(n);
    if (hp.bootstrap) {
      for (std::size_t i = 0; i < n; ++i) {
        auto r = static_cast<std::size_t>(rng.below(n));
        auto src = X.row(r);
        std::copy(src.begin(), src.end(), sample.row(i).begin());
        sample_y[i] = y[r];
      }
    } else {
      sample = X;
      sample_y = y;
    }
    model.trees_[t] = DecisionTree::fit(sample, sample_y, tree_hp, rng);
  });
  return model;
}

const std::string& RandomForest::family() const { return kFamily; }

double RandomForest::predict_proba(std::span<const double> x) const {
  if (x.size() != n_features_) {
    throw SchemaMismatchError("expected " + std::to_string(n_features_) + " features, got " +
                              std::to_string(x.size()));
  }
  double sum = 0.0;
  for (const auto& tree : trees_) sum += tree.predict_proba(x);
  return sum / static_cast<double>(trees_.size());
}

std::optional<std::vector<double>> RandomForest::feature_importance() const {
  std::vector<double> raw(n_features_, 0.0);
  for (const auto& tree : trees_) {
    for (std::size_t f = 0; f < n_features_; ++f) raw[f] += tree.raw_importance()[f];
  }
  double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (total > 0.0) {
    for (double& v : raw) v /= total;
  }
  return raw;
}

void RandomForest::save(std::ostream& out) const {
  auto j = detail::model_envelope(kFamily, schema_tag_);
  j["hyperparams"] = {{"n_trees", hp_.n_trees},
                      {"max_depth", hp_.max_depth},
                      {"min_samples_leaf", hp_.min_samples_leaf},
                      {"seed", hp_.seed},
                      {"bootstrap", hp_.bootstrap},
                      {"feature_subset_size", hp_.feature_subset_size}};
  nlohmann::ordered_json trees = nlohmann::ordered_json::array();
  for (const auto& tree : trees_) {
    trees.push_back({{"feature", tree.nodes().feature},
                     {"threshold", tree.nodes().threshold},
                     {"left", tree.nodes().left},
                     {"right", tree.nodes().right},
                     {"value", tree.nodes().value},
                     {"raw_importance", tree.raw_importance()}});
  }
  j["params"] = {{"n_features", n_features_}, {"trees", std::move(trees)}};
  out << j.dump(2) << '\n';
}

}  // namespace stylo
