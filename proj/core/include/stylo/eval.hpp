#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stylo/dataset.hpp"

namespace stylo {

/// ROC curve and its area. Points are (FPR, TPR), start at (0,0), end at
/// (1,1), and are non-decreasing in both coordinates; tied scores collapse to
/// one point, so the trapezoidal area equals the tie-aware pairwise
/// probability that a positive outscores a negative.
struct RocResult {
  std::vector<std::pair<double, double>> points;
  double auc = 0.0;
};

/// Fraction of positions where predicted == truth. Throws LengthMismatchError.
double accuracy(std::span<const int> predicted, std::span<const int> truth);

/// ROC by sweeping unique score thresholds in descending order; positives are
/// label 1. Throws SingleClassError unless both classes are present.
RocResult roc_auc(std::span<const double> scores, std::span<const int> labels);

struct FeatureAuc {
  std::string feature;
  double raw_auc = 0.0;       // feature value as score, positive class = Ai
  double oriented_auc = 0.0;  // max(raw, 1 - raw)
};

/// Discriminative power of each raw feature column on its own.
std::vector<FeatureAuc> per_feature_auc(const FeatureMatrix& m, unsigned threads = 1);

struct ImportanceEntry {
  std::string feature;
  double importance = 0.0;  // normalized, sums to 1 over all features
  double scaled = 0.0;      // 100 * importance / max importance
};

/// Scaled importance ranking, descending; ties broken by feature name.
std::vector<ImportanceEntry> importance_report(std::span<const std::string> names,
                                               std::span<const double> importances);

/// Class-conditional histogram densities over shared equal-width bins
/// spanning the pooled value range. Each class's density integrates to 1.
struct DensityReport {
  std::string feature;
  std::vector<double> bin_edges;  // bins + 1 entries
  std::vector<double> human_density;
  std::vector<double> ai_density;
  double human_mean = 0.0;
  double ai_mean = 0.0;
};

DensityReport class_density(const FeatureMatrix& m, std::string_view feature, std::size_t bins);

}  // namespace stylo
