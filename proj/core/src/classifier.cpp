#include "stylo/models/classifier.hpp"

#include <fstream>

#include "model_io.hpp"
#include "stylo/features.hpp"

namespace stylo {

std::vector<double> Classifier::predict_proba(const Matrix& X) const {
  std::vector<double> probs(X.rows);
  for (std::size_t r = 0; r < X.rows; ++r) probs[r] = predict_proba(X.row(r));
  return probs;
}

std::vector<int> Classifier::predict(const Matrix& X, double threshold) const {
  std::vector<int> labels(X.rows);
  for (std::size_t r = 0; r < X.rows; ++r) {
    labels[r] = predict_proba(X.row(r)) > threshold ? 1 : 0;
  }
  return labels;
}

void Classifier::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model file '" + path + "'");
  save(out);
}

std::unique_ptr<Classifier> Classifier::load(std::istream& in) {
  nlohmann::json j = nlohmann::json::parse(in);
  return ModelReader::read(j);
}

std::unique_ptr<Classifier> Classifier::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file '" + path + "'");
  return load(in);
}

std::string schema_tag_for_width(std::size_t width) {
  if (width == kFeatureCount) return feature_schema_hash();
  return "width:" + std::to_string(width);
}

namespace detail {

void check_envelope(const nlohmann::json& j, std::size_t width) {
  int version = j.at("schema_version").get<int>();
  if (version != kModelSchemaVersion) {
    throw SchemaMismatchError("unsupported model schema_version " + std::to_string(version));
  }
  auto stored = j.at("feature_schema").get<std::string>();
  auto expected = schema_tag_for_width(width);
  if (stored != expected) {
    throw SchemaMismatchError("model was trained against feature schema '" + stored +
                              "', this build expects '" + expected + "'");
  }
}

}  // namespace detail

}  // namespace stylo
