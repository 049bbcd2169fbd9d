#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylo/matrix.hpp"

namespace stylo {

/// Uniform contract shared by the five learners and the ensemble: a fitted,
/// immutable model that maps a feature vector to a probability of the
/// positive (machine-generated) class. Fitted models are safe to share across
/// threads for prediction.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual const std::string& family() const = 0;
  virtual std::size_t feature_count() const = 0;

  /// Probability of class 1 for one row; throws SchemaMismatchError when the
  /// width differs from the training data.
  virtual double predict_proba(std::span<const double> x) const = 0;

  std::vector<double> predict_proba(const Matrix& X) const;
  std::vector<int> predict(const Matrix& X, double threshold = 0.5) const;

  /// Normalized per-feature importances for the tree-based families;
  /// nullopt for families without a model-based importance.
  virtual std::optional<std::vector<double>> feature_importance() const { return std::nullopt; }

  /// Serializes the model as a versioned JSON document.
  virtual void save(std::ostream& out) const = 0;
  void save_file(const std::string& path) const;

  /// Loads any known family, dispatching on the stored "family" field. Throws
  /// SchemaMismatchError when the stored feature schema hash does not match
  /// the schema this build extracts.
  static std::unique_ptr<Classifier> load(std::istream& in);
  static std::unique_ptr<Classifier> load_file(const std::string& path);
};

/// Schema tag persisted with a model: the library schema hash for full-width
/// models, a width marker otherwise (toy fixtures, ablations).
std::string schema_tag_for_width(std::size_t width);

}  // namespace stylo
