#include "stylo/ensemble.hpp"

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "stylo/errors.hpp"

namespace stylo {

namespace {
const std::string kFamily = "ensemble";
}

SoftVotingEnsemble::SoftVotingEnsemble(std::vector<std::shared_ptr<const Classifier>> members,
                                       double threshold)
    : members_(std::move(members)), threshold_(threshold) {
  if (members_.size() < 2) throw ConfigInvalidError("ensemble needs at least 2 members");
  if (!(threshold_ > 0.0 && threshold_ < 1.0)) {
    throw ConfigInvalidError("ensemble threshold must be in (0,1)");
  }
  for (const auto& member : members_) {
    if (!member) throw UnfittedMemberError();
    if (member->feature_count() != members_.front()->feature_count()) {
      throw SchemaMismatchError("ensemble members disagree on feature width");
    }
  }
}

const std::string& SoftVotingEnsemble::family() const { return kFamily; }

std::size_t SoftVotingEnsemble::feature_count() const { return members_.front()->feature_count(); }

double SoftVotingEnsemble::predict_proba(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& member : members_) sum += member->predict_proba(x);
  return sum / static_cast<double>(members_.size());
}

void SoftVotingEnsemble::save(std::ostream& out) const {
  nlohmann::ordered_json j;
  j["threshold"] = threshold_;
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const auto& member : members_) files.push_back(member->family() + ".json");
  j["members"] = std::move(files);
  out << j.dump(2) << '\n';
}

void write_ensemble_manifest(const std::string& path, const EnsembleManifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write ensemble manifest '" + path + "'");
  nlohmann::ordered_json j;
  j["threshold"] = manifest.threshold;
  j["members"] = manifest.member_files;
  out << j.dump(2) << '\n';
}

EnsembleManifest read_ensemble_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open ensemble manifest '" + path + "'");
  nlohmann::json j = nlohmann::json::parse(in);
  EnsembleManifest manifest;
  manifest.threshold = j.at("threshold").get<double>();
  manifest.member_files = j.at("members").get<std::vector<std::string>>();
  return manifest;
}

SoftVotingEnsemble load_ensemble(const std::string& manifest_path) {
  EnsembleManifest manifest = read_ensemble_manifest(manifest_path);
  auto dir = std::filesystem::path(manifest_path).parent_path();
  std::vector<std::shared_ptr<const Classifier>> members;
  members.reserve(manifest.member_files.size());
  for (const auto& file : manifest.member_files) {
    members.push_back(Classifier::load_file((dir / file).string()));
  }
  return SoftVotingEnsemble(std::move(members), manifest.threshold);
}

}  // namespace stylo
