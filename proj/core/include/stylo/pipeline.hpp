#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stylo/dataset.hpp"
#include "stylo/ensemble.hpp"
#include "stylo/eval.hpp"
#include "stylo/models/gradient_boosting.hpp"
#include "stylo/models/logistic.hpp"
#include "stylo/models/mlp.hpp"
#include "stylo/models/random_forest.hpp"
#include "stylo/models/svm_rbf.hpp"
#include "stylo/synth.hpp"

namespace stylo {

/// The base learner families, in canonical (report) order.
inline constexpr std::array<std::string_view, 5> kModelFamilies = {
    "logistic_regression", "random_forest", "gradient_boosting", "svm_rbf", "mlp",
};

/// Candidate hyperparameter settings per family, tried by cross-validation in
/// list order (ties in validation AUC go to the earlier entry).
struct ModelGrids {
  std::vector<LogisticHyperparams> logistic;
  std::vector<ForestHyperparams> forest;
  std::vector<BoostingHyperparams> boosting;
  std::vector<SvmHyperparams> svm;
  std::vector<MlpHyperparams> mlp;

  static ModelGrids defaults();
};

struct RunConfig {
  std::string corpus_path;
  std::string lexicon_path;
  std::string out_dir;
  std::uint64_t seed = 42;
  double train_fraction = 0.8;
  double threshold = 0.5;
  std::size_t cv_folds = 5;
  std::vector<std::string> models;  // empty = all five families
  bool pair_safe = false;
  unsigned threads = 1;
  std::size_t density_bins = 30;
  std::vector<std::string> density_features = {"coleman_liau_index"};
  ModelGrids grids = ModelGrids::defaults();
};

struct CvSelection {
  std::vector<std::string> candidates;  // printable settings, grid order
  std::vector<double> mean_auc;
  std::size_t best_index = 0;
};

struct ModelEvaluation {
  std::string family;
  double accuracy = 0.0;
  double auc = 0.0;
  std::vector<double> test_probabilities;
};

/// Everything one run produces, as written to the output directory.
struct PipelineReport {
  std::uint64_t seed = 0;
  double train_fraction = 0.0;
  double threshold = 0.0;
  std::size_t cv_folds = 0;
  bool pair_safe = false;
  std::size_t dropped_rows = 0;
  SplitManifest manifest;
  std::map<std::string, CvSelection> cv;
  std::vector<ModelEvaluation> models;  // base families then "ensemble"
  std::vector<FeatureAuc> feature_aucs;
  std::map<std::string, std::vector<ImportanceEntry>> importances;
  std::vector<DensityReport> densities;
  std::vector<std::string> test_ids;
  std::vector<int> test_labels;
};

/// Full run: load -> extract -> split -> standardize (train-fitted) ->
/// cross-validated selection -> fit -> ensemble -> evaluate -> write reports,
/// split manifest and model files under cfg.out_dir. Inputs are validated
/// before the output directory is touched; if writing fails midway a FAILED
/// marker lands next to the partial artifacts.
PipelineReport run_pipeline(const RunConfig& cfg);

// ---------------------------------------------------------------------------
// Subcommand entry points. Each writes byte-identical artifacts to what a
// full pipeline run would produce for the same stage and seed.

void cmd_synth(const SynthConfig& cfg, const std::string& lexicon_path,
               const std::string& out_csv);

void cmd_extract(const std::string& corpus_path, const std::string& lexicon_path,
                 const std::string& out_csv, unsigned threads);

struct TrainOptions {
  std::string features_path;
  std::string out_dir;
  std::uint64_t seed = 42;
  double train_fraction = 0.8;
  double threshold = 0.5;
  std::size_t cv_folds = 5;
  std::vector<std::string> models;
  bool pair_safe = false;
  std::string corpus_path;  // required with pair_safe to recover pair ids
  unsigned threads = 1;
  ModelGrids grids = ModelGrids::defaults();
};

void cmd_train(const TrainOptions& options);

void cmd_evaluate(const std::string& features_path, const std::string& train_dir,
                  const std::string& out_dir);

void cmd_feature_auc(const std::string& features_path, const std::string& out_csv,
                     unsigned threads);

void cmd_importance(const std::string& models_dir, const std::string& out_dir);

void cmd_density(const std::string& features_path, const std::string& feature, std::size_t bins,
                 const std::string& out_csv);

/// Parses a synthesis config JSON document (class styles keyed "human"/"ai",
/// emotion rates keyed by category name).
SynthConfig load_synth_config(const std::string& path);

}  // namespace stylo
