#include "stylo/models/gradient_boosting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "math_util.hpp"
#include "model_io.hpp"

namespace stylo {

namespace {

const std::string kFamily = "gradient_boosting";

struct RegressionSplit {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;
};

// One boosting round: a regression tree over (gradient, hessian) maximizing
// the second-order gain 0.5*(GL^2/(HL+l) + GR^2/(HR+l) - G^2/(H+l)).
class RoundTreeBuilder {
 public:
  RoundTreeBuilder(const Matrix& X, const std::vector<double>& grad,
                   const std::vector<double>& hess, const BoostingHyperparams& hp,
                   std::vector<double>& gain_importance)
      : x_(X), grad_(grad), hess_(hess), hp_(hp), gain_importance_(gain_importance) {}

  GradientBoosting::TreeNodes build() {
    std::vector<std::size_t> rows(x_.rows);
    std::iota(rows.begin(), rows.end(), 0);
    grow(add_node(), std::move(rows), 0);
    return std::move(nodes_);
  }

 private:
  std::size_t add_node() {
    nodes_.feature.push_back(-1);
    nodes_.threshold.push_back(0.0);
    nodes_.left.push_back(-1);
    nodes_.right.push_back(-1);
    nodes_.value.push_back(0.0);
    return nodes_.feature.size() - 1;
  }

  double leaf_weight(double g, double h) const { return -g / (h + hp_.reg_lambda); }

  RegressionSplit find_split(const std::vector<std::size_t>& rows, double g_total,
                             double h_total) const {
    RegressionSplit best;
    const std::size_t n = rows.size();
    const double parent_score = g_total * g_total / (h_total + hp_.reg_lambda);
    std::vector<std::tuple<double, double, double>> sorted(n);  // value, g, h
    for (std::size_t f = 0; f < x_.cols; ++f) {
      for (std::size_t i = 0; i < n; ++i) {
        sorted[i] = {x_.at(rows[i], f), grad_[rows[i]], hess_[rows[i]]};
      }
      std::sort(sorted.begin(), sorted.end(),
                [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
      double gl = 0.0, hl = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        gl += std::get<1>(sorted[i]);
        hl += std::get<2>(sorted[i]);
        if (std::get<0>(sorted[i]) == std::get<0>(sorted[i + 1])) continue;
        double gr = g_total - gl, hr = h_total - hl;
        if (hl < hp_.min_child_weight || hr < hp_.min_child_weight) continue;
        double gain = 0.5 * (gl * gl / (hl + hp_.reg_lambda) + gr * gr / (hr + hp_.reg_lambda) -
                             parent_score);
        if (gain > best.gain) {
          best = {true, f, (std::get<0>(sorted[i]) + std::get<0>(sorted[i + 1])) * 0.5, gain};
        }
      }
    }
    return best;
  }

  void grow(std::size_t node, std::vector<std::size_t> rows, std::size_t depth) {
    double g_total = 0.0, h_total = 0.0;
    for (std::size_t r : rows) {
      g_total += grad_[r];
      h_total += hess_[r];
    }
    nodes_.value[node] = hp_.learning_rate * leaf_weight(g_total, h_total);
    if (depth >= hp_.max_depth || rows.size() < 2) return;

    RegressionSplit split = find_split(rows, g_total, h_total);
    if (!split.found || split.gain <= 0.0) return;
    gain_importance_[split.feature] += split.gain;

    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t r : rows) {
      (x_.at(r, split.feature) <= split.threshold ? left_rows : right_rows).push_back(r);
    }
    nodes_.feature[node] = static_cast<int>(split.feature);
    nodes_.threshold[node] = split.threshold;
    std::size_t left = add_node();
    std::size_t right = add_node();
    nodes_.left[node] = static_cast<int>(left);
    nodes_.right[node] = static_cast<int>(right);
    grow(left, std::move(left_rows), depth + 1);
    grow(right, std::move(right_rows), depth + 1);
  }

  const Matrix& x_;
  const std::vector<double>& grad_;
  const std::vector<double>& hess_;
  const BoostingHyperparams& hp_;
  std::vector<double>& gain_importance_;
  GradientBoosting::TreeNodes nodes_;
};

double tree_value(const GradientBoosting::TreeNodes& tree, std::span<const double> x) {
  int node = 0;
  while (tree.feature[node] >= 0) {
    node = x[static_cast<std::size_t>(tree.feature[node])] <= tree.threshold[node]
               ? tree.left[node]
               : tree.right[node];
  }
  return tree.value[node];
}

}  // namespace

GradientBoosting GradientBoosting::fit(const Matrix& X, const std::vector<int>& y,
                                       const BoostingHyperparams& hp) {
  if (X.rows != y.size()) throw LengthMismatchError(X.rows, y.size());
  if (X.rows == 0) throw TooFewRowsError("gradient boosting needs training rows");

  GradientBoosting model;
  model.hp_ = hp;
  model.n_features_ = X.cols;
  model.schema_tag_ = schema_tag_for_width(X.cols);
  model.gain_importance_.assign(X.cols, 0.0);

  const std::size_t n = X.rows;
  double base_rate = 0.0;
  for (int label : y) base_rate += static_cast<double>(label);
  base_rate = std::clamp(base_rate / static_cast<double>(n), 1e-12, 1.0 - 1e-12);
  model.initial_score_ = std::log(base_rate / (1.0 - base_rate));

  std::vector<double> scores(n, model.initial_score_);
  auto mean_loss = [&] {
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) loss += detail::logistic_loss(scores[i], y[i]);
    return loss / static_cast<double>(n);
  };
  model.training_loss_.push_back(mean_loss());

  std::vector<double> grad(n), hess(n);
  for (std::size_t round = 0; round < hp.n_rounds; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      double p = detail::sigmoid(scores[i]);
      grad[i] = p - static_cast<double>(y[i]);
      hess[i] = p * (1.0 - p);
    }
    RoundTreeBuilder builder(X, grad, hess, hp, model.gain_importance_);
    model.trees_.push_back(builder.build());
    const auto& tree = model.trees_.back();
    for (std::size_t i = 0; i < n; ++i) scores[i] += tree_value(tree, X.row(i));
    model.training_loss_.push_back(mean_loss());
  }
  return model;
}

const std::string& GradientBoosting::family() const { return kFamily; }

double GradientBoosting::score_of(std::span<const double> x) const {
  double score = initial_score_;
  for (const auto& tree : trees_) score += tree_value(tree, x);
  return score;
}

double GradientBoosting::predict_proba(std::span<const double> x) const {
  if (x.size() != n_features_) {
    throw SchemaMismatchError("expected " + std::to_string(n_features_) + " features, got " +
                              std::to_string(x.size()));
  }
  return detail::sigmoid(score_of(x));
}

std::optional<std::vector<double>> GradientBoosting::feature_importance() const {
  std::vector<double> normalized = gain_importance_;
  double total = std::accumulate(normalized.begin(), normalized.end(), 0.0);
  if (total > 0.0) {
    for (double& v : normalized) v /= total;
  }
  return normalized;
}

void GradientBoosting::save(std::ostream& out) const {
  auto j = detail::model_envelope(kFamily, schema_tag_);
  j["hyperparams"] = {{"n_rounds", hp_.n_rounds},
                      {"learning_rate", hp_.learning_rate},
                      {"max_depth", hp_.max_depth},
                      {"min_child_weight", hp_.min_child_weight},
                      {"reg_lambda", hp_.reg_lambda}};
  nlohmann::ordered_json trees = nlohmann::ordered_json::array();
  for (const auto& tree : trees_) {
    trees.push_back({{"feature", tree.feature},
                     {"threshold", tree.threshold},
                     {"left", tree.left},
                     {"right", tree.right},
                     {"value", tree.value}});
  }
  j["params"] = {{"n_features", n_features_},
                 {"initial_score", initial_score_},
                 {"gain_importance", gain_importance_},
                 {"trees", std::move(trees)}};
  out << j.dump(2) << '\n';
}

}  // namespace stylo
