#pragma once

#include <cstdint>
#include <vector>

#include "stylo/models/classifier.hpp"

namespace stylo {

struct MlpHyperparams {
  std::vector<std::size_t> hidden_sizes = {16};
  double learning_rate = 0.1;
  std::size_t epochs = 200;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
};

/// Fully connected feedforward network: ReLU hidden layers, sigmoid output,
/// log loss, mini-batch gradient descent. Weights initialize uniformly in
/// +-sqrt(6/(fan_in+fan_out)) from the seeded stream; biases start at zero.
class Mlp : public Classifier {
 public:
  static Mlp fit(const Matrix& X, const std::vector<int>& y, const MlpHyperparams& hp);

  using Classifier::predict_proba;
  const std::string& family() const override;
  std::size_t feature_count() const override { return n_features_; }
  double predict_proba(std::span<const double> x) const override;
  void save(std::ostream& out) const override;

  /// One dense layer; weights are row-major (outputs x inputs).
  struct Layer {
    std::size_t inputs = 0;
    std::size_t outputs = 0;
    std::vector<double> weights;
    std::vector<double> biases;
  };
  const std::vector<Layer>& layers() const { return layers_; }

  struct Gradients {
    double loss = 0.0;
    std::vector<Layer> layer_grads;  // same shapes as layers()
  };
  /// Mean log loss and analytic gradients over the given rows at the current
  /// weights; used by the training loop and by numerical gradient checks.
  Gradients loss_and_gradients(const Matrix& X, const std::vector<int>& y,
                               std::span<const std::size_t> rows) const;

  /// Fresh unfitted network with seeded initial weights (training start
  /// state); exposed for gradient checking.
  static Mlp initialize(std::size_t n_features, const MlpHyperparams& hp);

  /// Replaces the layer stack; shapes must chain from feature_count() to one
  /// output. Used by the persistence loader and numerical gradient checks.
  void set_layers(std::vector<Layer> layers);

 private:
  friend class ModelReader;
  std::vector<Layer> layers_;
  std::size_t n_features_ = 0;
  MlpHyperparams hp_;
  std::string schema_tag_;
};

}  // namespace stylo
