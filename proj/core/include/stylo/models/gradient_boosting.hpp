#pragma once

#include <vector>

#include "stylo/models/classifier.hpp"

namespace stylo {

struct BoostingHyperparams {
  std::size_t n_rounds = 100;
  double learning_rate = 0.1;
  std::size_t max_depth = 3;
  double min_child_weight = 1.0;
  double reg_lambda = 1.0;  // L2 on leaf weights
};

/// Boosted regression trees on the logistic loss with second-order leaf
/// weights: each round fits a tree to (gradient, hessian), leaves take
/// -G/(H+lambda) shrunk by the learning rate, and the initial score is the
/// base-rate log-odds. Probability = sigmoid of the summed scores.
class GradientBoosting : public Classifier {
 public:
  static GradientBoosting fit(const Matrix& X, const std::vector<int>& y,
                              const BoostingHyperparams& hp);

  using Classifier::predict_proba;
  const std::string& family() const override;
  std::size_t feature_count() const override { return n_features_; }
  double predict_proba(std::span<const double> x) const override;
  std::optional<std::vector<double>> feature_importance() const override;
  void save(std::ostream& out) const override;

  /// Mean training log loss after each round (element 0 is the prior-only
  /// model), recorded during fit.
  const std::vector<double>& training_loss() const { return training_loss_; }

  double initial_score() const { return initial_score_; }

  struct TreeNodes {
    std::vector<int> feature;  // -1 marks a leaf
    std::vector<double> threshold;
    std::vector<int> left;
    std::vector<int> right;
    std::vector<double> value;  // leaf weight, shrinkage already applied
  };
  const std::vector<TreeNodes>& trees() const { return trees_; }

 private:
  friend class ModelReader;
  double score_of(std::span<const double> x) const;

  std::vector<TreeNodes> trees_;
  std::vector<double> gain_importance_;
  std::vector<double> training_loss_;
  double initial_score_ = 0.0;
  std::size_t n_features_ = 0;
  BoostingHyperparams hp_;
  std::string schema_tag_;
};

}  // namespace stylo
