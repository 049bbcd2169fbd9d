#pragma once

#include <vector>

#include "stylo/models/classifier.hpp"

namespace stylo {

struct SvmHyperparams {
  double c = 1.0;
  double gamma = 0.1;
  double kkt_tolerance = 1e-3;
  std::size_t max_pair_updates = 1000000;  // iteration cap; NoConvergenceError beyond
};

/// Soft-margin SVM with an RBF kernel, K(u,v) = exp(-gamma * ||u-v||^2),
/// trained by sequential minimal optimization with second-order working-set
/// selection: the most violating index is paired with the partner of maximal
/// guaranteed gain, ties to the lowest index, so fits are deterministic.
/// Probabilities come from a two-parameter sigmoid fitted on out-of-fold
/// decision values over an internal stratified 5-fold split of the training
/// data.
class SvmRbf : public Classifier {
 public:
  static SvmRbf fit(const Matrix& X, const std::vector<int>& y, const SvmHyperparams& hp);

  using Classifier::predict_proba;
  const std::string& family() const override;
  std::size_t feature_count() const override { return n_features_; }
  double predict_proba(std::span<const double> x) const override;
  void save(std::ostream& out) const override;

  /// Kernel-space decision value f(x) = sum_i alpha_i y_i K(x_i, x) + b.
  double decision_value(std::span<const double> x) const;

  double sigmoid_a() const { return sigmoid_a_; }
  double sigmoid_b() const { return sigmoid_b_; }
  std::size_t support_vector_count() const { return support_vectors_.rows; }

 private:
  friend class ModelReader;
  Matrix support_vectors_;
  std::vector<double> dual_coefficients_;  // alpha_i * y_i, nonzero alphas only
  double bias_ = 0.0;
  double sigmoid_a_ = 0.0;  // p = 1 / (1 + exp(a * f + b))
  double sigmoid_b_ = 0.0;
  std::size_t n_features_ = 0;
  SvmHyperparams hp_;
  std::string schema_tag_;
};

double rbf_kernel(std::span<const double> u, std::span<const double> v, double gamma);

/// Platt-style sigmoid fit: minimizes the log loss of 1/(1+exp(a*f+b)) over
/// (decision value, label) pairs with regularized targets, by Newton's method.
/// Returns {a, b}.
std::pair<double, double> fit_platt_sigmoid(std::span<const double> decision_values,
                                            std::span<const int> labels);

}  // namespace stylo
