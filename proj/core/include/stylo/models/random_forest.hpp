#pragma once

#include <cstdint>
#include <vector>

#include "stylo/models/decision_tree.hpp"

namespace stylo {

struct ForestHyperparams {
  std::size_t n_trees = 100;
  std::size_t max_depth = kNoDepthLimit;
  std::size_t min_samples_leaf = 1;
  std::uint64_t seed = 0;
  bool bootstrap = true;              // test hook; production forests always bootstrap
  std::size_t feature_subset_size = 0;  // 0 = ceil(sqrt(n_features))
};

/// Bagged CART ensemble. Each tree trains on a bootstrap sample (size n, with
/// replacement) with per-split feature subsampling; tree t draws from its own
/// stream seeded with seed + t, so fitting is independent of thread
/// scheduling. The forest probability is the mean of member leaf
/// probabilities.
class RandomForest : public Classifier {
 public:
  static RandomForest fit(const Matrix& X, const std::vector<int>& y,
                          const ForestHyperparams& hp, unsigned threads = 1);

  using Classifier::predict_proba;
  const std::string& family() const override;
  std::size_t feature_count() const override { return n_features_; }
  double predict_proba(std::span<const double> x) const override;
  std::optional<std::vector<double>> feature_importance() const override;
  void save(std::ostream& out) const override;

  const std::vector<DecisionTree>& trees() const { return trees_; }

 private:
  friend class ModelReader;
  std::vector<DecisionTree> trees_;
  std::size_t n_features_ = 0;
  ForestHyperparams hp_;
  std::string schema_tag_;
};

}  // namespace stylo
