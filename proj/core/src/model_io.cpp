#include "model_io.hpp"

#include "stylo/models/decision_tree.hpp"
#include "stylo/models/gradient_boosting.hpp"
#include "stylo/models/logistic.hpp"
#include "stylo/models/mlp.hpp"
#include "stylo/models/random_forest.hpp"
#include "stylo/models/svm_rbf.hpp"

namespace stylo {

namespace {

using nlohmann::json;

DecisionTree::Nodes read_nodes(const json& j) {
  DecisionTree::Nodes nodes;
  nodes.feature = j.at("feature").get<std::vector<int>>();
  nodes.threshold = j.at("threshold").get<std::vector<double>>();
  nodes.left = j.at("left").get<std::vector<int>>();
  nodes.right = j.at("right").get<std::vector<int>>();
  nodes.value = j.at("value").get<std::vector<double>>();
  return nodes;
}

}  // namespace

std::unique_ptr<Classifier> ModelReader::read(const json& j) {
  auto family = j.at("family").get<std::string>();
  if (family == "logistic_regression") return read_logistic(j);
  if (family == "decision_tree") return read_tree(j);
  if (family == "random_forest") return read_forest(j);
  if (family == "gradient_boosting") return read_boosting(j);
  if (family == "svm_rbf") return read_svm(j);
  if (family == "mlp") return read_mlp(j);
  throw SchemaMismatchError("unknown model family '" + family + "'");
}

std::unique_ptr<Classifier> ModelReader::read_logistic(const json& j) {
  const auto& p = j.at("params");
  auto model = std::make_unique<LogisticRegression>();
  model->weights_ = p.at("weights").get<std::vector<double>>();
  model->bias_ = p.at("bias").get<double>();
  detail::check_envelope(j, model->weights_.size());
  model->schema_tag_ = j.at("feature_schema").get<std::string>();
  const auto& hp = j.at("hyperparams");
  model->hp_.l2_lambda = hp.at("l2_lambda").get<double>();
  model->hp_.learning_rate = hp.at("learning_rate").get<double>();
  model->hp_.epochs = hp.at("epochs").get<std::size_t>();
  return model;
}

std::unique_ptr<Classifier> ModelReader::read_tree(const json& j) {
  const auto& p = j.at("params");
  auto model = std::make_unique<DecisionTree>();
  model->n_features_ = p.at("n_features").get<std::size_t>();
  detail::check_envelope(j, model->n_features_);
  model->schema_tag_ = j.at("feature_schema").get<std::string>();
  model->nodes_ = read_nodes(p);
  model->raw_importance_ = p.at("raw_importance").get<std::vector<double>>();
  const auto& hp = j.at("hyperparams");
  model->hp_.max_depth = hp.at("max_depth").get<std::size_t>();
  model->hp_.min_samples_leaf = hp.at("min_samples_leaf").get<std::size_t>();
  model->hp_.feature_subset_size = hp.at("feature_subset_size").get<std::size_t>();
  return model;
}

std::unique_ptr<Classifier> ModelReader::read_forest(const json& j) {
  const auto& p = j.at("params");
  auto model = std::make_unique<RandomForest>();
  model->n_features_ = p.at("n_features").get<std::size_t>();
  detail::check_envelope(j, model->n_features_);
  model->schema_tag_ = j.at("feature_schema").get<std::string>();
  const auto& hp = j.at("hyperparams");
  model->hp_.n_trees = hp.at("n_trees").get<std::size_t>();
  model->hp_.max_depth = hp.at("max_depth").get<std::size_t>();
  model->hp_.min_samples_leaf = hp.at("min_samples_leaf").get<std::size_t>();
  model->hp_.seed = hp.at("seed").get<std::uint64_t>();
  model->hp_.bootstrap = hp.at("bootstrap").get<bool>();
  model->hp_.feature_subset_size = hp.at("feature_subset_size").get<std::size_t>();
  for (const auto& tree_json : p.at("trees")) {
    DecisionTree tree;
    tree.n_features_ = model->n_features_;
    tree.schema_tag_ = model->schema_tag_;
    tree.nodes_ = read_nodes(tree_json);
    tree.raw_importance_ = tree_json.at("raw_importance").get<std::vector<double>>();
    model->trees_.push_back(std::move(tree));
  }
  return model;
}

std::unique_ptr<Classifier> ModelReader::read_boosting(const json& j) {
  const auto& p = j.at("params");
  auto model = std::make_unique<GradientBoosting>();
  model->n_features_ = p.at("n_features").get<std::size_t>();
  detail::check_envelope(j, model->n_features_);
  model->schema_tag_ = j.at("feature_schema").get<std::string>();
  model->initial_score_ = p.at("initial_score").get<double>();
  model->gain_importance_ = p.at("gain_importance").get<std::vector<double>>();
  const auto& hp = j.at("hyperparams");
  model->hp_.n_rounds = hp.at("n_rounds").get<std::size_t>();
  model->hp_.learning_rate = hp.at("learning_rate").get<double>();
  model->hp_.max_depth = hp.at("max_depth").get<std::size_t>();
  model->hp_.min_child_weight = hp.at("min_child_weight").get<double>();
  model->hp_.reg_lambda = hp.at("reg_lambda").get<double>();
  for (const auto& tree_json : p.at("trees")) {
    GradientBoosting::TreeNodes tree;
    tree.feature = tree_json.at("feature").get<std::vector<int>>();
    tree.threshold = tree_json.at("threshold").get<std::vector<double>>();
    tree.left = tree_json.at("left").get<std::vector<int>>();
    tree.right = tree_json.at("right").get<std::vector<int>>();
    tree.value = tree_json.at("value").get<std::vector<double>>();
    model->trees_.push_back(std::move(tree));
  }
  return model;
}

std::unique_ptr<Classifier> ModelReader::read_svm(const json& j) {
  const auto& p = j.at("params");
  auto model = std::make_unique<SvmRbf>();
  model->n_features_ = p.at("n_features").get<std::size_t>();
  detail::check_envelope(j, model->n_features_);
  model->schema_tag_ = j.at("feature_schema").get<std::string>();
  auto vectors = p.at("support_vectors").get<std::vector<std::vector<double>>>();
  model->support_vectors_ = Matrix(vectors.size(), model->n_features_);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != model->n_features_) {
      throw SchemaMismatchError("support vector width mismatch");
    }
    std::copy(vectors[i].begin(), vectors[i].end(), model->support_vectors_.row(i).begin());
  }
  model->dual_coefficients_ = p.at("dual_coefficients").get<std::vector<double>>();
  model->bias_ = p.at("bias").get<double>();
  model->sigmoid_a_ = p.at("sigmoid_a").get<double>();
  model->sigmoid_b_ = p.at("sigmoid_b").get<double>();
  const auto& hp = j.at("hyperparams");
  model->hp_.c = hp.at("c").get<double>();
  model->hp_.gamma = hp.at("gamma").get<double>();
  model->hp_.kkt_tolerance = hp.at("kkt_tolerance").get<double>();
  model->hp_.max_pair_updates = hp.at("max_pair_updates").get<std::size_t>();
  return model;
}

std::unique_ptr<Classifier> ModelReader::read_mlp(const json& j) {
  const auto& p = j.at("params");
  auto model = std::make_unique<Mlp>();
  model->n_features_ = p.at("n_features").get<std::size_t>();
  detail::check_envelope(j, model->n_features_);
  model->schema_tag_ = j.at("feature_schema").get<std::string>();
  const auto& hp = j.at("hyperparams");
  model->hp_.hidden_sizes = hp.at("hidden_sizes").get<std::vector<std::size_t>>();
  model->hp_.learning_rate = hp.at("learning_rate").get<double>();
  model->hp_.epochs = hp.at("epochs").get<std::size_t>();
  model->hp_.batch_size = hp.at("batch_size").get<std::size_t>();
  model->hp_.seed = hp.at("seed").get<std::uint64_t>();
  std::vector<Mlp::Layer> layers;
  for (const auto& layer_json : p.at("layers")) {
    Mlp::Layer layer;
    layer.inputs = layer_json.at("inputs").get<std::size_t>();
    layer.outputs = layer_json.at("outputs").get<std::size_t>();
    layer.weights = layer_json.at("weights").get<std::vector<double>>();
    layer.biases = layer_json.at("biases").get<std::vector<double>>();
    layers.push_back(std::move(layer));
  }
  model->set_layers(std::move(layers));
  return model;
}

}  // namespace stylo
