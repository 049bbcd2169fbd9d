#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stylo/models/classifier.hpp"

namespace stylo {

/// Classifies by thresholding a probability: class 1 iff p > threshold, so a
/// probability exactly at the threshold goes to class 0.
inline int classify(double probability, double threshold) {
  return probability > threshold ? 1 : 0;
}

/// Soft-voting aggregate: the unweighted arithmetic mean of the member
/// probabilities. Member order never affects the output.
class SoftVotingEnsemble : public Classifier {
 public:
  /// Throws ConfigInvalidError unless there are >= 2 members and the
  /// threshold is in (0,1); throws UnfittedMemberError on a null member and
  /// SchemaMismatchError when members disagree on feature width.
  SoftVotingEnsemble(std::vector<std::shared_ptr<const Classifier>> members, double threshold);

  using Classifier::predict_proba;
  const std::string& family() const override;
  std::size_t feature_count() const override;
  double predict_proba(std::span<const double> x) const override;
  void save(std::ostream& out) const override;

  double threshold() const { return threshold_; }
  const std::vector<std::shared_ptr<const Classifier>>& members() const { return members_; }

 private:
  std::vector<std::shared_ptr<const Classifier>> members_;
  double threshold_;
};

/// On-disk description of an ensemble: member model files (relative to the
/// manifest's directory) and the decision threshold.
struct EnsembleManifest {
  double threshold = 0.5;
  std::vector<std::string> member_files;
};

void write_ensemble_manifest(const std::string& path, const EnsembleManifest& manifest);
EnsembleManifest read_ensemble_manifest(const std::string& path);

/// Loads every member file named by the manifest and assembles the ensemble.
SoftVotingEnsemble load_ensemble(const std::string& manifest_path);

}  // namespace stylo
