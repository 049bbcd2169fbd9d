#pragma once

// Internal JSON (de)serialization for model files. Not installed.

#include <istream>
#include <memory>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "stylo/errors.hpp"
#include "stylo/models/classifier.hpp"

namespace stylo {

inline constexpr int kModelSchemaVersion = 1;

class ModelReader {
 public:
  static std::unique_ptr<Classifier> read(const nlohmann::json& j);

 private:
  static std::unique_ptr<Classifier> read_logistic(const nlohmann::json& j);
  static std::unique_ptr<Classifier> read_tree(const nlohmann::json& j);
  static std::unique_ptr<Classifier> read_forest(const nlohmann::json& j);
  static std::unique_ptr<Classifier> read_boosting(const nlohmann::json& j);
  static std::unique_ptr<Classifier> read_svm(const nlohmann::json& j);
  static std::unique_ptr<Classifier> read_mlp(const nlohmann::json& j);
};

namespace detail {

/// Envelope shared by every model file.
inline nlohmann::ordered_json model_envelope(const std::string& family,
                                             const std::string& schema_tag) {
  nlohmann::ordered_json j;
  j["schema_version"] = kModelSchemaVersion;
  j["family"] = family;
  j["feature_schema"] = schema_tag;
  return j;
}

/// Validates the envelope and the stored schema tag against what this build
/// would produce for the stored width.
void check_envelope(const nlohmann::json& j, std::size_t width);

}  // namespace detail

}  // namespace stylo
