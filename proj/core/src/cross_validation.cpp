#include "stylo/models/cross_validation.hpp"

#include <algorithm>

#include "stylo/errors.hpp"
#include "stylo/eval.hpp"
#include "stylo/rng.hpp"

namespace stylo {

std::vector<std::size_t> stratified_folds(std::span<const int> y, std::size_t folds,
                                          std::uint64_t seed) {
  std::vector<std::size_t> fold_of(y.size());
  SeededRng rng(seed);
  for (int cls : {0, 1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] == cls) members.push_back(i);
    }
    rng.shuffle(members);
    for (std::size_t i = 0; i < members.size(); ++i) fold_of[members[i]] = i % folds;
  }
  return fold_of;
}

CrossValidationResult cross_validate(const Matrix& X, const std::vector<int>& y,
                                     std::span<const FitFunction> candidates, std::size_t folds,
                                     std::uint64_t seed) {
  if (folds < 2) throw ConfigInvalidError("cross-validation needs k >= 2");
  if (candidates.empty()) throw ConfigInvalidError("cross-validation needs candidates");
  std::size_t class0 = 0, class1 = 0;
  for (int label : y) (label == 1 ? class1 : class0)++;
  if (class0 < folds || class1 < folds) {
    throw TooFewRowsError("each class needs at least k rows for " + std::to_string(folds) +
                          "-fold validation");
  }

  const auto fold_of = stratified_folds(y, folds, seed);

  CrossValidationResult result;
  result.mean_auc.assign(candidates.size(), 0.0);
  for (std::size_t fold = 0; fold < folds; ++fold) {
    std::vector<std::size_t> train_rows, val_rows;
    for (std::size_t i = 0; i < y.size(); ++i) {
      (fold_of[i] == fold ? val_rows : train_rows).push_back(i);
    }
    Matrix train_x(train_rows.size(), X.cols);
    std::vector<int> train_y(train_rows.size());
    for (std::size_t i = 0; i < train_rows.size(); ++i) {
      auto src = X.row(train_rows[i]);
      std::copy(src.begin(), src.end(), train_x.row(i).begin());
      train_y[i] = y[train_rows[i]];
    }
    Matrix val_x(val_rows.size(), X.cols);
    std::vector<int> val_y(val_rows.size());
    for (std::size_t i = 0; i < val_rows.size(); ++i) {
      auto src = X.row(val_rows[i]);
      std::copy(src.begin(), src.end(), val_x.row(i).begin());
      val_y[i] = y[val_rows[i]];
    }

    for (std::size_t k = 0; k < candidates.size(); ++k) {
      auto model = candidates[k](train_x, train_y);
      auto scores = model->predict_proba(val_x);
      result.mean_auc[k] += roc_auc(scores, val_y).auc;
    }
  }
  for (double& auc : result.mean_auc) auc /= static_cast<double>(folds);

  result.best_index = 0;
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    if (result.mean_auc[k] > result.mean_auc[result.best_index]) result.best_index = k;
  }
  return result;
}

}  // namespace stylo
