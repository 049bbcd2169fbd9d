#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "stylo/models/classifier.hpp"

namespace stylo {

using FitFunction =
    std::function<std::unique_ptr<Classifier>(const Matrix&, const std::vector<int>&)>;

struct CrossValidationResult {
  std::size_t best_index = 0;          // into the candidate list; ties go to the earliest
  std::vector<double> mean_auc;        // per candidate, averaged over folds
};

/// Stratified k-fold selection on the training partition: folds are dealt
/// per class from a seeded shuffle (identical folds for every candidate),
/// each candidate is scored by mean validation AUC. Throws TooFewRowsError
/// when any class has fewer rows than folds.
CrossValidationResult cross_validate(const Matrix& X, const std::vector<int>& y,
                                     std::span<const FitFunction> candidates, std::size_t folds,
                                     std::uint64_t seed);

/// The fold assignment used by cross_validate: fold_of[i] in [0, folds).
std::vector<std::size_t> stratified_folds(std::span<const int> y, std::size_t folds,
                                          std::uint64_t seed);

}  // namespace stylo
