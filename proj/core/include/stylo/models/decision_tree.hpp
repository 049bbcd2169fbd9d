#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "stylo/models/classifier.hpp"
#include "stylo/rng.hpp"

namespace stylo {

inline constexpr std::size_t kNoDepthLimit = std::numeric_limits<std::size_t>::max();

struct TreeHyperparams {
  std::size_t max_depth = kNoDepthLimit;
  std::size_t min_samples_leaf = 1;
  std::size_t feature_subset_size = 0;  // 0 = consider every feature at each split
};

/// Binary CART. Splits minimize weighted Gini impurity over midpoint
/// thresholds of the sorted distinct values within the candidate feature set;
/// ties go to the lowest feature index, then the lowest threshold. Leaves
/// predict the positive fraction of their samples.
class DecisionTree : public Classifier {
 public:
  static DecisionTree fit(const Matrix& X, const std::vector<int>& y, const TreeHyperparams& hp,
                          SeededRng& rng);

  using Classifier::predict_proba;
  const std::string& family() const override;
  std::size_t feature_count() const override { return n_features_; }
  double predict_proba(std::span<const double> x) const override;
  std::optional<std::vector<double>> feature_importance() const override;
  void save(std::ostream& out) const override;

  /// Flat node storage; index 0 is the root. feature == -1 marks a leaf.
  struct Nodes {
    std::vector<int> feature;
    std::vector<double> threshold;
    std::vector<int> left;
    std::vector<int> right;
    std::vector<double> value;  // leaf probability of class 1
    std::size_t size() const { return feature.size(); }
  };
  const Nodes& nodes() const { return nodes_; }
  std::size_t depth() const;

  /// Unnormalized per-feature impurity decrease, weighted by node sample
  /// fraction. The forest sums these across member trees.
  const std::vector<double>& raw_importance() const { return raw_importance_; }

 private:
  friend class ModelReader;
  friend class RandomForest;
  Nodes nodes_;
  std::vector<double> raw_importance_;
  std::size_t n_features_ = 0;
  TreeHyperparams hp_;
  std::string schema_tag_;
};

/// Gini impurity of a binary label multiset: 2p(1-p).
double gini_impurity(std::size_t positives, std::size_t total);

}  // namespace stylo
