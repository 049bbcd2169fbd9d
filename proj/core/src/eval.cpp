#include "stylo/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stylo/errors.hpp"
#include "stylo/parallel.hpp"

namespace stylo {

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    throw LengthMismatchError(predicted.size(), truth.size());
  }
  if (predicted.empty()) throw TooFewRowsError("accuracy needs at least one prediction");
  std::size_t matches = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == truth[i]) ++matches;
  }
  return static_cast<double>(matches) / static_cast<double>(predicted.size());
}

RocResult roc_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw LengthMismatchError(scores.size(), labels.size());
  }
  std::size_t positives = 0, negatives = 0;
  for (int label : labels) (label == 1 ? positives : negatives)++;
  if (positives == 0 || negatives == 0) throw SingleClassError();

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocResult result;
  result.points.emplace_back(0.0, 0.0);
  const double pos = static_cast<double>(positives);
  const double neg = static_cast<double>(negatives);
  std::size_t tp = 0, fp = 0, i = 0;
  while (i < order.size()) {
    double threshold = scores[order[i]];
    while (i < order.size() && scores[order[i]] == threshold) {
      (labels[order[i]] == 1 ? tp : fp)++;
      ++i;
    }
    result.points.emplace_back(static_cast<double>(fp) / neg, static_cast<double>(tp) / pos);
  }

  double auc = 0.0;
  for (std::size_t k = 1; k < result.points.size(); ++k) {
    const auto& [x0, y0] = result.points[k - 1];
    const auto& [x1, y1] = result.points[k];
    auc += (x1 - x0) * (y1 + y0) * 0.5;
  }
  result.auc = auc;
  return result;
}

std::vector<FeatureAuc> per_feature_auc(const FeatureMatrix& m, unsigned threads) {
  std::vector<int> labels(m.labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    labels[i] = static_cast<int>(m.labels[i]);
  }
  std::vector<FeatureAuc> out(m.features.cols);
  parallel_for(m.features.cols, threads, [&](std::size_t c) {
    std::vector<double> column(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) column[r] = m.features.at(r, c);
    double raw = roc_auc(column, labels).auc;
    out[c] = {m.feature_names[c], raw, std::max(raw, 1.0 - raw)};
  });
  return out;
}

std::vector<ImportanceEntry> importance_report(std::span<const std::string> names,
                                               std::span<const double> importances) {
  if (names.size() != importances.size()) {
    throw LengthMismatchError(names.size(), importances.size());
  }
  double max_importance = 0.0;
  for (double v : importances) max_importance = std::max(max_importance, v);

  std::vector<ImportanceEntry> entries(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    double scaled = max_importance > 0.0 ? 100.0 * importances[i] / max_importance : 0.0;
    entries[i] = {names[i], importances[i], scaled};
  }
  std::sort(entries.begin(), entries.end(), [](const ImportanceEntry& a, const ImportanceEntry& b) {
    if (a.importance != b.importance) return a.importance > b.importance;
    return a.feature < b.feature;
  });
  return entries;
}

DensityReport class_density(const FeatureMatrix& m, std::string_view feature, std::size_t bins) {
  if (bins < 2) throw ConfigInvalidError("density needs at least 2 bins");
  std::size_t column = m.features.cols;
  for (std::size_t c = 0; c < m.feature_names.size(); ++c) {
    if (m.feature_names[c] == feature) {
      column = c;
      break;
    }
  }
  if (column == m.features.cols) throw UnknownFeatureError(std::string(feature));

  std::vector<double> human_values, ai_values;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    (m.labels[r] == ClassLabel::Human ? human_values : ai_values).push_back(m.features.at(r, column));
  }
  if (human_values.empty() || ai_values.empty()) throw SingleClassError();

  double lo = m.features.at(0, column), hi = lo;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    lo = std::min(lo, m.features.at(r, column));
    hi = std::max(hi, m.features.at(r, column));
  }
  if (lo == hi) {  // degenerate range: one bin row would have zero width
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / static_cast<double>(bins);

  DensityReport report;
  report.feature = std::string(feature);
  report.bin_edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) {
    report.bin_edges[b] = lo + width * static_cast<double>(b);
  }
  report.bin_edges.back() = hi;

  auto densify = [&](const std::vector<double>& values, std::vector<double>& density) {
    density.assign(bins, 0.0);
    for (double v : values) {
      auto b = static_cast<std::size_t>((v - lo) / width);
      if (b >= bins) b = bins - 1;  // right edge belongs to the last bin
      density[b] += 1.0;
    }
    const double scale = static_cast<double>(values.size()) * width;
    for (double& d : density) d /= scale;
  };
  densify(human_values, report.human_density);
  densify(ai_values, report.ai_density);

  report.human_mean = std::accumulate(human_values.begin(), human_values.end(), 0.0) /
                      static_cast<double>(human_values.size());
  report.ai_mean = std::accumulate(ai_values.begin(), ai_values.end(), 0.0) /
                   static_cast<double>(ai_values.size());
  return report;
}

}  // namespace stylo
