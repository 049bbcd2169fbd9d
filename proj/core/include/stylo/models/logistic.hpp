#pragma once

#include <vector>

#include "stylo/models/classifier.hpp"

namespace stylo {

struct LogisticHyperparams {
  double l2_lambda = 0.01;
  double learning_rate = 0.1;
  std::size_t epochs = 500;
};

/// L2-regularized logistic regression trained with full-batch gradient
/// descent; the bias term is not regularized. Throws NonFiniteLossError when
/// the loss diverges (learning rate too large for the data).
class LogisticRegression : public Classifier {
 public:
  static LogisticRegression fit(const Matrix& X, const std::vector<int>& y,
                                const LogisticHyperparams& hp);

  using Classifier::predict_proba;
  const std::string& family() const override;
  std::size_t feature_count() const override { return weights_.size(); }
  double predict_proba(std::span<const double> x) const override;
  void save(std::ostream& out) const override;

  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }

  /// Overwrites the parameters (width must match); used by the persistence
  /// loader and numerical gradient checks.
  void set_params(std::vector<double> weights, double bias);

  /// Mean regularized log loss and its analytic gradient at the current
  /// parameters; exposed so the gradients can be checked numerically.
  struct LossGrad {
    double loss = 0.0;
    std::vector<double> d_weights;
    double d_bias = 0.0;
  };
  LossGrad loss_and_gradients(const Matrix& X, const std::vector<int>& y,
                              double l2_lambda) const;

 private:
  friend class ModelReader;
  std::vector<double> weights_;
  double bias_ = 0.0;
  LogisticHyperparams hp_;
  std::string schema_tag_;
};

}  // namespace stylo
