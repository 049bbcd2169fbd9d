#include "stylo/models/mlp.hpp"

#include <cmath>
#include <numeric>

#include "math_util.hpp"
#include "model_io.hpp"
#include "stylo/rng.hpp"

namespace stylo {

namespace {

const std::string kFamily = "mlp";

void init_layer(Mlp::Layer& layer, std::size_t inputs, std::size_t outputs, SeededRng& rng) {
  layer.inputs = inputs;
  layer.outputs = outputs;
  layer.weights.resize(outputs * inputs);
  layer.biases.assign(outputs, 0.0);
  const double r = std::sqrt(6.0 / static_cast<double>(inputs + outputs));
  for (double& w : layer.weights) w = rng.uniform(-r, r);
}

std::vector<Mlp::Layer> init_layers(std::size_t n_features, const MlpHyperparams& hp,
                                    SeededRng& rng) {
  std::vector<Mlp::Layer> layers;
  std::size_t inputs = n_features;
  for (std::size_t hidden : hp.hidden_sizes) {
    Mlp::Layer layer;
    init_layer(layer, inputs, hidden, rng);
    layers.push_back(std::move(layer));
    inputs = hidden;
  }
  Mlp::Layer output;
  init_layer(output, inputs, 1, rng);
  layers.push_back(std::move(output));
  return layers;
}

void affine(const Mlp::Layer& layer, const std::vector<double>& input,
            std::vector<double>& output) {
  output.assign(layer.outputs, 0.0);
  for (std::size_t o = 0; o < layer.outputs; ++o) {
    double z = layer.biases[o];
    const double* w = layer.weights.data() + o * layer.inputs;
    for (std::size_t i = 0; i < layer.inputs; ++i) z += w[i] * input[i];
    output[o] = z;
  }
}

}  // namespace

Mlp Mlp::initialize(std::size_t n_features, const MlpHyperparams& hp) {
  Mlp model;
  model.hp_ = hp;
  model.n_features_ = n_features;
  model.schema_tag_ = schema_tag_for_width(n_features);
  SeededRng rng(hp.seed);
  model.layers_ = init_layers(n_features, hp, rng);
  return model;
}

Mlp::Gradients Mlp::loss_and_gradients(const Matrix& X, const std::vector<int>& y,
                                       std::span<const std::size_t> rows) const {
  Gradients out;
  out.layer_grads.resize(layers_.size());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    out.layer_grads[l].inputs = layers_[l].inputs;
    out.layer_grads[l].outputs = layers_[l].outputs;
    out.layer_grads[l].weights.assign(layers_[l].weights.size(), 0.0);
    out.layer_grads[l].biases.assign(layers_[l].biases.size(), 0.0);
  }

  const std::size_t depth = layers_.size();
  std::vector<std::vector<double>> activations(depth + 1);  // a[0] = input
  std::vector<std::vector<double>> pre_activations(depth);

  for (std::size_t row : rows) {
    auto x = X.row(row);
    activations[0].assign(x.begin(), x.end());
    for (std::size_t l = 0; l < depth; ++l) {
      affine(layers_[l], activations[l], pre_activations[l]);
      activations[l + 1] = pre_activations[l];
      if (l + 1 < depth) {
        for (double& v : activations[l + 1]) v = v > 0.0 ? v : 0.0;  // ReLU
      }
    }
    const double z = pre_activations[depth - 1][0];
    out.loss += detail::logistic_loss(z, y[row]);

    // dL/dz at the sigmoid output collapses to (p - y).
    std::vector<double> delta = {detail::sigmoid(z) - static_cast<double>(y[row])};
    for (std::size_t l = depth; l-- > 0;) {
      auto& grad = out.layer_grads[l];
      const auto& input = activations[l];
      for (std::size_t o = 0; o < layers_[l].outputs; ++o) {
        grad.biases[o] += delta[o];
        double* gw = grad.weights.data() + o * layers_[l].inputs;
        for (std::size_t i = 0; i < layers_[l].inputs; ++i) gw[i] += delta[o] * input[i];
      }
      if (l == 0) break;
      std::vector<double> prev_delta(layers_[l].inputs, 0.0);
      for (std::size_t i = 0; i < layers_[l].inputs; ++i) {
        double sum = 0.0;
        for (std::size_t o = 0; o < layers_[l].outputs; ++o) {
          sum += layers_[l].weights[o * layers_[l].inputs + i] * delta[o];
        }
        prev_delta[i] = pre_activations[l - 1][i] > 0.0 ? sum : 0.0;
      }
      delta = std::move(prev_delta);
    }
  }

  const double scale = 1.0 / static_cast<double>(rows.size());
  out.loss *= scale;
  for (auto& grad : out.layer_grads) {
    for (double& w : grad.weights) w *= scale;
    for (double& b : grad.biases) b *= scale;
  }
  return out;
}

Mlp Mlp::fit(const Matrix& X, const std::vector<int>& y, const MlpHyperparams& hp) {
  if (X.rows != y.size()) throw LengthMismatchError(X.rows, y.size());
  if (X.rows == 0) throw TooFewRowsError("mlp needs training rows");
  if (hp.batch_size == 0) throw ConfigInvalidError("mlp batch size must be >= 1");

  Mlp model;
  model.hp_ = hp;
  model.n_features_ = X.cols;
  model.schema_tag_ = schema_tag_for_width(X.cols);

  // One stream drives both the weight init and the epoch shuffles, in that
  // order, so a fit is reproducible from the seed alone.
  SeededRng rng(hp.seed);
  model.layers_ = init_layers(X.cols, hp, rng);

  std::vector<std::size_t> order(X.rows);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t epoch = 0; epoch < hp.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t start = 0; start < order.size(); start += hp.batch_size) {
      std::size_t count = std::min(hp.batch_size, order.size() - start);
      std::span<const std::size_t> batch(order.data() + start, count);
      Gradients grads = model.loss_and_gradients(X, y, batch);
      if (!std::isfinite(grads.loss)) {
        throw NonFiniteLossError("mlp diverged at epoch " + std::to_string(epoch));
      }
      for (std::size_t l = 0; l < model.layers_.size(); ++l) {
        auto& layer = model.layers_[l];
        const auto& grad = grads.layer_grads[l];
        for (std::size_t k = 0; k < layer.weights.size(); ++k) {
          layer.weights[k] -= hp.learning_rate * grad.weights[k];
        }
        for (std::size_t k = 0; k < layer.biases.size(); ++k) {
          layer.biases[k] -= hp.learning_rate * grad.biases[k];
        }
      }
    }
  }
  return model;
}

void Mlp::set_layers(std::vector<Layer> layers) {
  std::size_t inputs = n_features_;
  for (const auto& layer : layers) {
    if (layer.inputs != inputs || layer.weights.size() != layer.outputs * layer.inputs ||
        layer.biases.size() != layer.outputs) {
      throw SchemaMismatchError("mlp layer shapes do not chain");
    }
    inputs = layer.outputs;
  }
  if (layers.empty() || inputs != 1) throw SchemaMismatchError("mlp must end in one output");
  layers_ = std::move(layers);
}

const std::string& Mlp::family() const { return kFamily; }

double Mlp::predict_proba(std::span<const double> x) const {
  if (x.size() != n_features_) {
    throw SchemaMismatchError("expected " + std::to_string(n_features_) + " features, got " +
                              std::to_string(x.size()));
  }
  std::vector<double> current(x.begin(), x.end());
  std::vector<double> next;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    affine(layers_[l], current, next);
    if (l + 1 < layers_.size()) {
      for (double& v : next) v = v > 0.0 ? v : 0.0;
    }
    current = std::move(next);
  }
  return detail::sigmoid(current[0]);
}

void Mlp::save(std::ostream& out) const {
  auto j = detail::model_envelope(kFamily, schema_tag_);
  j["hyperparams"] = {{"hidden_sizes", hp_.hidden_sizes},
                      {"learning_rate", hp_.learning_rate},
                      {"epochs", hp_.epochs},
                      {"batch_size", hp_.batch_size},
                      {"seed", hp_.seed}};
  nlohmann::ordered_json layers = nlohmann::ordered_json::array();
  for (const auto& layer : layers_) {
    layers.push_back({{"inputs", layer.inputs},
                      {"outputs", layer.outputs},
                      {"weights", layer.weights},
                      {"biases", layer.biases}});
  }
  j["params"] = {{"n_features", n_features_}, {"layers", std::move(layers)}};
  out << j.dump(2) << '\n';
}

}  // namespace stylo
