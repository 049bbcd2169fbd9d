#include "stylo/models/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "model_io.hpp"

namespace stylo {

namespace {

const std::string kFamily = "decision_tree";

struct SplitChoice {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;  // unnormalized: n * impurity_decrease
};

}  // namespace

double gini_impurity(std::size_t positives, std::size_t total) {
  if (total == 0) return 0.0;
  double p = static_cast<double>(positives) / static_cast<double>(total);
  return 2.0 * p * (1.0 - p);
}

DecisionTree DecisionTree::fit(const Matrix& X, const std::vector<int>& y,
                               const TreeHyperparams& hp, SeededRng& rng) {
  if (X.rows != y.size()) throw LengthMismatchError(X.rows, y.size());
  if (X.rows == 0) throw TooFewRowsError("decision tree needs training rows");

  DecisionTree model;
  model.hp_ = hp;
  model.n_features_ = X.cols;
  model.schema_tag_ = schema_tag_for_width(X.cols);
  model.raw_importance_.assign(X.cols, 0.0);

  const std::size_t total_rows = X.rows;
  std::vector<std::size_t> all_features(X.cols);
  std::iota(all_features.begin(), all_features.end(), 0);

  // Candidate features for one split: a sorted sample without replacement
  // when subsampling is on, otherwise every feature.
  auto candidate_features = [&](std::vector<std::size_t>& scratch) -> const std::vector<std::size_t>& {
    if (hp.feature_subset_size == 0 || hp.feature_subset_size >= X.cols) return all_features;
    scratch = all_features;
    for (std::size_t i = 0; i < hp.feature_subset_size; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng.below(scratch.size() - i));
      std::swap(scratch[i], scratch[j]);
    }
    scratch.resize(hp.feature_subset_size);
    std::sort(scratch.begin(), scratch.end());
    return scratch;
  };

  auto find_split = [&](const std::vector<std::size_t>& rows) {
    SplitChoice best;
    const std::size_t n = rows.size();
    std::size_t positives = 0;
    for (std::size_t r : rows) positives += static_cast<std::size_t>(y[r]);
    const double parent = static_cast<double>(n) * gini_impurity(positives, n);

    std::vector<std::size_t> scratch;
    std::vector<std::pair<double, int>> sorted(n);
    for (std::size_t f : candidate_features(scratch)) {
      for (std::size_t i = 0; i < n; ++i) sorted[i] = {X.at(rows[i], f), y[rows[i]]};
      std::sort(sorted.begin(), sorted.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      std::size_t left_pos = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left_pos += static_cast<std::size_t>(sorted[i].second);
        if (sorted[i].first == sorted[i + 1].first) continue;
        const std::size_t left_n = i + 1;
        const std::size_t right_n = n - left_n;
        if (left_n < hp.min_samples_leaf || right_n < hp.min_samples_leaf) continue;
        double weighted = static_cast<double>(left_n) * gini_impurity(left_pos, left_n) +
                          static_cast<double>(right_n) * gini_impurity(positives - left_pos, right_n);
        double gain = parent - weighted;
        if (gain > best.gain) {
          best = {true, f, (sorted[i].first + sorted[i + 1].first) * 0.5, gain};
        }
      }
    }
    return best;
  };

  auto add_node = [&]() {
    model.nodes_.feature.push_back(-1);
    model.nodes_.threshold.push_back(0.0);
    model.nodes_.left.push_back(-1);
    model.nodes_.right.push_back(-1);
    model.nodes_.value.push_back(0.0);
    return model.nodes_.size() - 1;
  };

  // Iterative preorder build; children are constructed left before right so
  // the node layout (and any rng draws) are a pure function of the inputs.
  struct Pending {
    std::size_t node;
    std::vector<std::size_t> rows;
    std::size_t depth;
  };
  std::vector<std::size_t> root_rows(X.rows);
  std::iota(root_rows.begin(), root_rows.end(), 0);
  std::vector<Pending> stack;
  stack.push_back({add_node(), std::move(root_rows), 0});

  while (!stack.empty()) {
    Pending item = std::move(stack.back());
    stack.pop_back();
    const std::size_t n = item.rows.size();
    std::size_t positives = 0;
    for (std::size_t r : item.rows) positives += static_cast<std::size_t>(y[r]);
    model.nodes_.value[item.node] = static_cast<double>(positives) / static_cast<double>(n);

    bool pure = positives == 0 || positives == n;
    if (item.depth >= hp.max_depth || pure || n < 2 * hp.min_samples_leaf) continue;

    SplitChoice split = find_split(item.rows);
    if (!split.found || split.gain <= 0.0) continue;

    model.raw_importance_[split.feature] += split.gain / static_cast<double>(total_rows);
    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t r : item.rows) {
      (X.at(r, split.feature) <= split.threshold ? left_rows : right_rows).push_back(r);
    }
    model.nodes_.feature[item.node] = static_cast<int>(split.feature);
    model.nodes_.threshold[item.node] = split.threshold;

    std::size_t left = add_node();
    std::size_t right = add_node();
    model.nodes_.left[item.node] = static_cast<int>(left);
    model.nodes_.right[item.node] = static_cast<int>(right);
    // Push right first so the left child is processed (and draws from the
    // rng) first.
    stack.push_back({right, std::move(right_rows), item.depth + 1});
    stack.push_back({left, std::move(left_rows), item.depth + 1});
  }
  return model;
}

const std::string& DecisionTree::family() const { return kFamily; }

double DecisionTree::predict_proba(std::span<const double> x) const {
  if (x.size() != n_features_) {
    throw SchemaMismatchError("expected " + std::to_string(n_features_) + " features, got " +
                              std::to_string(x.size()));
  }
  int node = 0;
  while (nodes_.feature[node] >= 0) {
    node = x[static_cast<std::size_t>(nodes_.feature[node])] <= nodes_.threshold[node]
               ? nodes_.left[node]
               : nodes_.right[node];
  }
  return nodes_.value[node];
}

std::optional<std::vector<double>> DecisionTree::feature_importance() const {
  double total = std::accumulate(raw_importance_.begin(), raw_importance_.end(), 0.0);
  std::vector<double> normalized(raw_importance_.size(), 0.0);
  if (total > 0.0) {
    for (std::size_t f = 0; f < raw_importance_.size(); ++f) {
      normalized[f] = raw_importance_[f] / total;
    }
  }
  return normalized;
}

std::size_t DecisionTree::depth() const {
  // Depth of the flat tree by walking from the root.
  std::vector<std::pair<int, std::size_t>> stack = {{0, 0}};
  std::size_t depth = 0;
  while (!stack.empty()) {
    auto [node, d] = stack.back();
    stack.pop_back();
    depth = std::max(depth, d);
    if (nodes_.feature[node] >= 0) {
      stack.push_back({nodes_.left[node], d + 1});
      stack.push_back({nodes_.right[node], d + 1});
    }
  }
  return depth;
}

void DecisionTree::save(std::ostream& out) const {
  auto j = detail::model_envelope(kFamily, schema_tag_);
  j["hyperparams"] = {{"max_depth", hp_.max_depth},
                      {"min_samples_leaf", hp_.min_samples_leaf},
                      {"feature_subset_size", hp_.feature_subset_size}};
  j["params"] = {{"n_features", n_features_},
                 {"feature", nodes_.feature},
                 {"threshold", nodes_.threshold},
                 {"left", nodes_.left},
                 {"right", nodes_.right},
                 {"value", nodes_.value},
                 {"raw_importance", raw_importance_}};
  out << j.dump(2) << '\n';
}

}  // namespace stylo
