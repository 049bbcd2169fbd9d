#include "stylo/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>

#include <nlohmann/json.hpp>

#include "stylo/csv.hpp"
#include "stylo/errors.hpp"
#include "stylo/models/cross_validation.hpp"
#include "stylo/rng.hpp"

namespace stylo {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Seed streams hanging off the user-facing seed; one knob reproduces the
// whole run.
enum SeedStream : std::uint64_t {
  kSplitStream = 1,
  kCvStream = 2,
  kForestStream = 3,
  kMlpStream = 4,
};

std::string fmt(double value) { return csv::format_double(value); }

std::string fmt_depth(std::size_t depth) {
  return depth == kNoDepthLimit ? "none" : std::to_string(depth);
}

std::vector<std::string> resolve_families(const std::vector<std::string>& requested) {
  if (requested.empty()) {
    return {kModelFamilies.begin(), kModelFamilies.end()};
  }
  for (const auto& name : requested) {
    if (std::find(kModelFamilies.begin(), kModelFamilies.end(), name) == kModelFamilies.end()) {
      throw ConfigInvalidError("unknown model family '" + name + "'");
    }
  }
  std::vector<std::string> families;
  for (auto family : kModelFamilies) {
    if (std::find(requested.begin(), requested.end(), family) != requested.end()) {
      families.emplace_back(family);
    }
  }
  return families;
}

// -- per-family grid plumbing -------------------------------------------------

struct FamilySelection {
  CvSelection cv;
  std::shared_ptr<const Classifier> model;
};

template <typename Hp>
FamilySelection select_and_fit(const std::vector<Hp>& settings,
                               const std::function<std::string(const Hp&)>& describe,
                               const std::function<std::unique_ptr<Classifier>(
                                   const Hp&, const Matrix&, const std::vector<int>&)>& fit,
                               const Matrix& X, const std::vector<int>& y, std::size_t folds,
                               std::uint64_t cv_seed) {
  if (settings.empty()) throw ConfigInvalidError("hyperparameter grid is empty");
  std::vector<FitFunction> candidates;
  FamilySelection out;
  for (const Hp& hp : settings) {
    out.cv.candidates.push_back(describe(hp));
    candidates.push_back(
        [&fit, hp](const Matrix& cx, const std::vector<int>& cy) { return fit(hp, cx, cy); });
  }
  auto result = cross_validate(X, y, candidates, folds, cv_seed);
  out.cv.mean_auc = std::move(result.mean_auc);
  out.cv.best_index = result.best_index;
  out.model = fit(settings[result.best_index], X, y);
  return out;
}

struct TrainedState {
  SplitResult split;  // raw (unstandardized) feature rows
  StandardizationParams standardizer;
  std::map<std::string, CvSelection> cv;
  std::vector<std::pair<std::string, std::shared_ptr<const Classifier>>> models;
  double threshold = 0.5;
  SplitManifest manifest;
};

TrainedState train_on_matrix(const FeatureMatrix& matrix,
                             std::span<const std::string> pair_ids, std::uint64_t seed,
                             double train_fraction, std::size_t folds, double threshold,
                             const std::vector<std::string>& requested_models,
                             const ModelGrids& grids, bool pair_safe, unsigned threads) {
  TrainedState state;
  state.threshold = threshold;

  const std::uint64_t split_seed = derive_seed(seed, kSplitStream);
  if (pair_safe) {
    if (pair_ids.size() != matrix.rows()) {
      throw ConfigInvalidError("pair-safe split needs a pair id per row");
    }
    state.split = split_train_test_pairs(matrix, train_fraction, split_seed, pair_ids);
  } else {
    state.split = split_train_test(matrix, train_fraction, split_seed);
  }
  state.manifest = make_manifest(state.split, seed, train_fraction, pair_safe);

  // Leakage guard: the standardizer only ever sees the training partition.
  state.standardizer = fit_standardizer(state.split.train);
  FeatureMatrix train_s = apply_standardizer(state.standardizer, state.split.train);

  const Matrix& X = train_s.features;
  std::vector<int> y(train_s.labels.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = static_cast<int>(train_s.labels[i]);

  const std::uint64_t cv_seed = derive_seed(seed, kCvStream);
  const std::uint64_t forest_seed = derive_seed(seed, kForestStream);
  const std::uint64_t mlp_seed = derive_seed(seed, kMlpStream);

  for (const std::string& family : resolve_families(requested_models)) {
    FamilySelection selection;
    if (family == "logistic_regression") {
      selection = select_and_fit<LogisticHyperparams>(
          grids.logistic,
          [](const LogisticHyperparams& hp) { return "l2_lambda=" + fmt(hp.l2_lambda); },
          [](const LogisticHyperparams& hp, const Matrix& cx, const std::vector<int>& cy) {
            return std::make_unique<LogisticRegression>(LogisticRegression::fit(cx, cy, hp));
          },
          X, y, folds, cv_seed);
    } else if (family == "random_forest") {
      auto settings = grids.forest;
      for (auto& hp : settings) hp.seed = forest_seed;
      selection = select_and_fit<ForestHyperparams>(
          settings,
          [](const ForestHyperparams& hp) {
            return "n_trees=" + std::to_string(hp.n_trees) + ",max_depth=" + fmt_depth(hp.max_depth);
          },
          [threads](const ForestHyperparams& hp, const Matrix& cx, const std::vector<int>& cy) {
            return std::make_unique<RandomForest>(RandomForest::fit(cx, cy, hp, threads));
          },
          X, y, folds, cv_seed);
    } else if (family == "gradient_boosting") {
      selection = select_and_fit<BoostingHyperparams>(
          grids.boosting,
          [](const BoostingHyperparams& hp) {
            return "n_rounds=" + std::to_string(hp.n_rounds) +
                   ",learning_rate=" + fmt(hp.learning_rate) +
                   ",max_depth=" + std::to_string(hp.max_depth);
          },
          [](const BoostingHyperparams& hp, const Matrix& cx, const std::vector<int>& cy) {
            return std::make_unique<GradientBoosting>(GradientBoosting::fit(cx, cy, hp));
          },
          X, y, folds, cv_seed);
    } else if (family == "svm_rbf") {
      selection = select_and_fit<SvmHyperparams>(
          grids.svm,
          [](const SvmHyperparams& hp) { return "c=" + fmt(hp.c) + ",gamma=" + fmt(hp.gamma); },
          [](const SvmHyperparams& hp, const Matrix& cx, const std::vector<int>& cy) {
            return std::make_unique<SvmRbf>(SvmRbf::fit(cx, cy, hp));
          },
          X, y, folds, cv_seed);
    } else {  // mlp
      auto settings = grids.mlp;
      for (auto& hp : settings) hp.seed = mlp_seed;
      selection = select_and_fit<MlpHyperparams>(
          settings,
          [](const MlpHyperparams& hp) { return "learning_rate=" + fmt(hp.learning_rate); },
          [](const MlpHyperparams& hp, const Matrix& cx, const std::vector<int>& cy) {
            return std::make_unique<Mlp>(Mlp::fit(cx, cy, hp));
          },
          X, y, folds, cv_seed);
    }
    state.cv.emplace(family, std::move(selection.cv));
    state.models.emplace_back(family, std::move(selection.model));
  }
  return state;
}

std::vector<ModelEvaluation> evaluate_on_test(
    const std::vector<std::pair<std::string, std::shared_ptr<const Classifier>>>& models,
    double threshold, const FeatureMatrix& test_raw, const StandardizationParams& standardizer) {
  FeatureMatrix test = apply_standardizer(standardizer, test_raw);
  std::vector<int> labels(test.labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(test.labels[i]);

  std::vector<ModelEvaluation> evaluations;
  auto evaluate_one = [&](const std::string& name, const Classifier& model) {
    ModelEvaluation eval;
    eval.family = name;
    eval.test_probabilities = model.predict_proba(test.features);
    std::vector<int> predicted(eval.test_probabilities.size());
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      predicted[i] = classify(eval.test_probabilities[i], threshold);
    }
    eval.accuracy = accuracy(predicted, labels);
    eval.auc = roc_auc(eval.test_probabilities, labels).auc;
    evaluations.push_back(std::move(eval));
  };

  for (const auto& [family, model] : models) evaluate_one(family, *model);
  if (models.size() >= 2) {
    std::vector<std::shared_ptr<const Classifier>> members;
    for (const auto& [family, model] : models) members.push_back(model);
    SoftVotingEnsemble ensemble(std::move(members), threshold);
    evaluate_one("ensemble", ensemble);
  }
  return evaluations;
}

// -- artifact writers ---------------------------------------------------------

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

void write_standardizer_file(const fs::path& path, const StandardizationParams& params) {
  ordered_json j;
  j["means"] = params.means;
  j["stds"] = params.stds;
  j["fitted_on"] = params.fitted_on;
  open_out(path) << j.dump(2) << '\n';
}

StandardizationParams read_standardizer_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open standardizer '" + path.string() + "'");
  json j = json::parse(in);
  StandardizationParams params;
  params.means = j.at("means").get<std::vector<double>>();
  params.stds = j.at("stds").get<std::vector<double>>();
  params.fitted_on = j.at("fitted_on").get<std::size_t>();
  return params;
}

void write_cv_file(const fs::path& path, std::size_t folds,
                   const std::map<std::string, CvSelection>& cv) {
  ordered_json j;
  j["folds"] = folds;
  ordered_json families;
  for (const auto& [family, selection] : cv) {
    families[family] = {{"candidates", selection.candidates},
                        {"mean_auc", selection.mean_auc},
                        {"selected_index", selection.best_index},
                        {"selected", selection.candidates[selection.best_index]}};
  }
  j["families"] = std::move(families);
  open_out(path) << j.dump(2) << '\n';
}

void write_model_files(const fs::path& models_dir, const TrainedState& state) {
  fs::create_directories(models_dir);
  EnsembleManifest manifest;
  manifest.threshold = state.threshold;
  for (const auto& [family, model] : state.models) {
    std::string file = family + ".json";
    model->save_file((models_dir / file).string());
    manifest.member_files.push_back(file);
  }
  if (state.models.size() >= 2) {
    write_ensemble_manifest((models_dir / "ensemble.json").string(), manifest);
  }
}

void write_metrics_csv(const fs::path& path, const std::vector<ModelEvaluation>& evaluations) {
  auto out = open_out(path);
  csv::write_record(out, {"model", "accuracy", "auc"});
  for (const auto& eval : evaluations) {
    csv::write_record(out, {eval.family, fmt(eval.accuracy), fmt(eval.auc)});
  }
}

void write_feature_auc_csv(const fs::path& path, const std::vector<FeatureAuc>& aucs) {
  auto out = open_out(path);
  csv::write_record(out, {"feature", "raw_auc", "oriented_auc"});
  for (const auto& entry : aucs) {
    csv::write_record(out, {entry.feature, fmt(entry.raw_auc), fmt(entry.oriented_auc)});
  }
}

void write_importance_csv(const fs::path& path, const std::vector<ImportanceEntry>& entries) {
  auto out = open_out(path);
  csv::write_record(out, {"feature", "importance", "scaled"});
  for (const auto& entry : entries) {
    csv::write_record(out, {entry.feature, fmt(entry.importance), fmt(entry.scaled)});
  }
}

void write_density_csv(const fs::path& path, const DensityReport& report) {
  auto out = open_out(path);
  csv::write_record(out, {"bin_low", "bin_high", "human_density", "ai_density"});
  for (std::size_t b = 0; b + 1 < report.bin_edges.size(); ++b) {
    csv::write_record(out, {fmt(report.bin_edges[b]), fmt(report.bin_edges[b + 1]),
                            fmt(report.human_density[b]), fmt(report.ai_density[b])});
  }
}

void write_report_json(const fs::path& path, const PipelineReport& report,
                       const std::vector<std::string>& families) {
  ordered_json j;
  j["metadata"] = {{"seed", report.seed},
                   {"train_fraction", report.train_fraction},
                   {"threshold", report.threshold},
                   {"cv_folds", report.cv_folds},
                   {"pair_safe", report.pair_safe},
                   {"dropped_rows", report.dropped_rows},
                   {"models", families}};
  ordered_json cv;
  for (const auto& [family, selection] : report.cv) {
    cv[family] = {{"candidates", selection.candidates},
                  {"mean_auc", selection.mean_auc},
                  {"selected_index", selection.best_index},
                  {"selected", selection.candidates[selection.best_index]}};
  }
  j["cv"] = std::move(cv);
  ordered_json models;
  for (const auto& eval : report.models) {
    models[eval.family] = {{"accuracy", eval.accuracy}, {"auc", eval.auc}};
  }
  j["models"] = std::move(models);
  ordered_json probabilities;
  for (const auto& eval : report.models) {
    probabilities[eval.family] = eval.test_probabilities;
  }
  j["predictions"] = {{"ids", report.test_ids},
                      {"labels", report.test_labels},
                      {"probabilities", std::move(probabilities)}};
  ordered_json feature_auc = ordered_json::array();
  for (const auto& entry : report.feature_aucs) {
    feature_auc.push_back({{"feature", entry.feature},
                           {"raw_auc", entry.raw_auc},
                           {"oriented_auc", entry.oriented_auc}});
  }
  j["per_feature_auc"] = std::move(feature_auc);
  ordered_json importance;
  for (const auto& [family, entries] : report.importances) {
    ordered_json rows = ordered_json::array();
    for (const auto& entry : entries) {
      rows.push_back({{"feature", entry.feature},
                      {"importance", entry.importance},
                      {"scaled", entry.scaled}});
    }
    importance[family] = std::move(rows);
  }
  j["importance"] = std::move(importance);
  ordered_json density;
  for (const auto& d : report.densities) {
    density[d.feature] = {{"bin_edges", d.bin_edges},
                          {"human_density", d.human_density},
                          {"ai_density", d.ai_density},
                          {"human_mean", d.human_mean},
                          {"ai_mean", d.ai_mean}};
  }
  j["density"] = std::move(density);
  open_out(path) << j.dump(2) << '\n';
}

std::vector<std::string> importance_feature_names(const Classifier& model) {
  if (model.feature_count() == kFeatureCount) {
    return {feature_names().begin(), feature_names().end()};
  }
  std::vector<std::string> names;
  for (std::size_t f = 0; f < model.feature_count(); ++f) names.push_back("f" + std::to_string(f));
  return names;
}

}  // namespace

ModelGrids ModelGrids::defaults() {
  ModelGrids grids;
  for (double lambda : {0.001, 0.01, 0.1}) {
    grids.logistic.push_back({.l2_lambda = lambda, .learning_rate = 0.1, .epochs = 500});
  }
  for (std::size_t trees : {100u, 300u}) {
    for (std::size_t depth : {std::size_t{6}, kNoDepthLimit}) {
      grids.forest.push_back({.n_trees = trees, .max_depth = depth});
    }
  }
  for (std::size_t rounds : {100u, 300u}) {
    for (double lr : {0.05, 0.1}) {
      for (std::size_t depth : {3u, 4u}) {
        grids.boosting.push_back({.n_rounds = rounds, .learning_rate = lr, .max_depth = depth});
      }
    }
  }
  for (double c : {0.1, 1.0, 10.0}) {
    for (double gamma : {0.01, 0.1, 1.0}) {
      grids.svm.push_back({.c = c, .gamma = gamma});
    }
  }
  for (double lr : {0.01, 0.1}) {
    grids.mlp.push_back({.hidden_sizes = {16}, .learning_rate = lr, .epochs = 200});
  }
  return grids;
}

PipelineReport run_pipeline(const RunConfig& cfg) {
  if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) {
    throw ConfigInvalidError("threshold must be in (0,1)");
  }
  // Everything is loaded and computed before the output directory is touched.
  EmotionLexicon lexicon = EmotionLexicon::load_file(cfg.lexicon_path);
  CorpusLoadResult corpus = load_corpus_file(cfg.corpus_path);
  if (corpus.documents.empty()) throw TooFewRowsError("corpus has no usable rows");

  FeatureMatrix matrix = build_matrix(corpus.documents, lexicon, cfg.threads);
  std::vector<std::string> pair_ids;
  pair_ids.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) pair_ids.push_back(doc.pair_id);

  const auto families = resolve_families(cfg.models);
  TrainedState state =
      train_on_matrix(matrix, pair_ids, cfg.seed, cfg.train_fraction, cfg.cv_folds, cfg.threshold,
                      families, cfg.grids, cfg.pair_safe, cfg.threads);

  PipelineReport report;
  report.seed = cfg.seed;
  report.train_fraction = cfg.train_fraction;
  report.threshold = cfg.threshold;
  report.cv_folds = cfg.cv_folds;
  report.pair_safe = cfg.pair_safe;
  report.dropped_rows = corpus.dropped_count;
  report.manifest = state.manifest;
  report.cv = state.cv;
  report.models = evaluate_on_test(state.models, cfg.threshold, state.split.test, state.standardizer);
  report.test_ids = state.split.test.ids;
  report.test_labels.resize(state.split.test.labels.size());
  for (std::size_t i = 0; i < report.test_labels.size(); ++i) {
    report.test_labels[i] = static_cast<int>(state.split.test.labels[i]);
  }

  // Feature-level views use the raw (unstandardized) full corpus: per-feature
  // AUC is invariant to the affine scaling and needs no fitted model.
  report.feature_aucs = per_feature_auc(matrix, cfg.threads);
  for (const auto& [family, model] : state.models) {
    if (auto importance = model->feature_importance()) {
      auto names = importance_feature_names(*model);
      report.importances.emplace(family, importance_report(names, *importance));
    }
  }
  for (const auto& feature : cfg.density_features) {
    report.densities.push_back(class_density(matrix, feature, cfg.density_bins));
  }

  const fs::path out_dir(cfg.out_dir);
  fs::create_directories(out_dir);
  try {
    {
      auto out = open_out(out_dir / "features.csv");
      write_features_csv(out, matrix);
    }
    {
      auto out = open_out(out_dir / "split_manifest.json");
      write_manifest(out, state.manifest);
    }
    write_standardizer_file(out_dir / "standardizer.json", state.standardizer);
    write_cv_file(out_dir / "cv.json", cfg.cv_folds, state.cv);
    write_model_files(out_dir / "models", state);
    write_metrics_csv(out_dir / "metrics.csv", report.models);
    write_feature_auc_csv(out_dir / "feature_auc.csv", report.feature_aucs);
    for (const auto& [family, entries] : report.importances) {
      write_importance_csv(out_dir / ("importance_" + family + ".csv"), entries);
    }
    for (const auto& d : report.densities) {
      write_density_csv(out_dir / ("density_" + d.feature + ".csv"), d);
    }
    write_report_json(out_dir / "report.json", report, families);
  } catch (const std::exception& e) {
    std::ofstream marker(out_dir / "FAILED", std::ios::binary);
    marker << e.what() << '\n';
    throw;
  }
  return report;
}

void cmd_synth(const SynthConfig& cfg, const std::string& lexicon_path,
               const std::string& out_csv) {
  EmotionLexicon lexicon;
  if (!lexicon_path.empty()) lexicon = EmotionLexicon::load_file(lexicon_path);
  auto docs = generate_synthetic_corpus(cfg, lexicon);
  auto out = open_out(out_csv);
  write_corpus(out, docs);
}

void cmd_extract(const std::string& corpus_path, const std::string& lexicon_path,
                 const std::string& out_csv, unsigned threads) {
  EmotionLexicon lexicon = EmotionLexicon::load_file(lexicon_path);
  CorpusLoadResult corpus = load_corpus_file(corpus_path);
  if (corpus.documents.empty()) throw TooFewRowsError("corpus has no usable rows");
  FeatureMatrix matrix = build_matrix(corpus.documents, lexicon, threads);
  auto out = open_out(out_csv);
  write_features_csv(out, matrix);
}

void cmd_train(const TrainOptions& options) {
  FeatureMatrix matrix = load_features_csv_file(options.features_path);
  std::vector<std::string> pair_ids;
  if (options.pair_safe) {
    if (options.corpus_path.empty()) {
      throw ConfigInvalidError("--pair-safe training needs --corpus to recover pair ids");
    }
    CorpusLoadResult corpus = load_corpus_file(options.corpus_path);
    std::map<std::string, std::string> by_id;
    for (const auto& doc : corpus.documents) by_id[doc.id] = doc.pair_id;
    for (const auto& id : matrix.ids) {
      auto it = by_id.find(id);
      if (it == by_id.end()) {
        throw SchemaMismatchError("feature row '" + id + "' not present in corpus");
      }
      pair_ids.push_back(it->second);
    }
  }

  const auto families = resolve_families(options.models);
  TrainedState state = train_on_matrix(matrix, pair_ids, options.seed, options.train_fraction,
                                       options.cv_folds, options.threshold, families,
                                       options.grids, options.pair_safe, options.threads);

  const fs::path out_dir(options.out_dir);
  fs::create_directories(out_dir);
  {
    auto out = open_out(out_dir / "split_manifest.json");
    write_manifest(out, state.manifest);
  }
  write_standardizer_file(out_dir / "standardizer.json", state.standardizer);
  write_cv_file(out_dir / "cv.json", options.cv_folds, state.cv);
  write_model_files(out_dir / "models", state);
}

void cmd_evaluate(const std::string& features_path, const std::string& train_dir,
                  const std::string& out_dir) {
  FeatureMatrix matrix = load_features_csv_file(features_path);
  const fs::path in_dir(train_dir);
  SplitManifest manifest = load_manifest_file((in_dir / "split_manifest.json").string());
  StandardizationParams standardizer = read_standardizer_file(in_dir / "standardizer.json");
  EnsembleManifest ensemble_manifest =
      read_ensemble_manifest((in_dir / "models" / "ensemble.json").string());

  std::vector<std::pair<std::string, std::shared_ptr<const Classifier>>> models;
  for (const auto& file : ensemble_manifest.member_files) {
    std::shared_ptr<const Classifier> model =
        Classifier::load_file((in_dir / "models" / file).string());
    models.emplace_back(model->family(), std::move(model));
  }

  SplitResult split = apply_manifest(matrix, manifest);
  auto evaluations =
      evaluate_on_test(models, ensemble_manifest.threshold, split.test, standardizer);

  fs::create_directories(out_dir);
  write_metrics_csv(fs::path(out_dir) / "metrics.csv", evaluations);
}

void cmd_feature_auc(const std::string& features_path, const std::string& out_csv,
                     unsigned threads) {
  FeatureMatrix matrix = load_features_csv_file(features_path);
  write_feature_auc_csv(out_csv, per_feature_auc(matrix, threads));
}

void cmd_importance(const std::string& models_dir, const std::string& out_dir) {
  bool found = false;
  fs::create_directories(out_dir);
  for (const char* family : {"random_forest", "gradient_boosting"}) {
    fs::path model_path = fs::path(models_dir) / (std::string(family) + ".json");
    if (!fs::exists(model_path)) continue;
    auto model = Classifier::load_file(model_path.string());
    auto importance = model->feature_importance();
    if (!importance) throw UnsupportedModelError(model->family());
    auto names = importance_feature_names(*model);
    write_importance_csv(fs::path(out_dir) / ("importance_" + std::string(family) + ".csv"),
                         importance_report(names, *importance));
    found = true;
  }
  if (!found) {
    throw UnsupportedModelError("no tree-based model files in '" + models_dir + "'");
  }
}

void cmd_density(const std::string& features_path, const std::string& feature, std::size_t bins,
                 const std::string& out_csv) {
  FeatureMatrix matrix = load_features_csv_file(features_path);
  write_density_csv(out_csv, class_density(matrix, feature, bins));
}

SynthConfig load_synth_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open synth config '" + path + "'");
  json j = json::parse(in);

  auto read_style = [](const json& s, ClassStyle style) {
    if (s.contains("vocab_size")) style.vocab_size = s.at("vocab_size").get<std::size_t>();
    if (s.contains("mean_sentence_len")) style.mean_sentence_len = s.at("mean_sentence_len").get<double>();
    if (s.contains("sentence_len_spread")) style.sentence_len_spread = s.at("sentence_len_spread").get<double>();
    if (s.contains("mean_word_len")) style.mean_word_len = s.at("mean_word_len").get<double>();
    if (s.contains("word_len_spread")) style.word_len_spread = s.at("word_len_spread").get<double>();
    if (s.contains("polysyllable_rate")) style.polysyllable_rate = s.at("polysyllable_rate").get<double>();
    if (s.contains("mean_sentences")) style.mean_sentences = s.at("mean_sentences").get<double>();
    if (s.contains("sentence_count_spread")) style.sentence_count_spread = s.at("sentence_count_spread").get<double>();
    if (s.contains("emotion_rates")) {
      for (const auto& [name, rate] : s.at("emotion_rates").items()) {
        bool known = false;
        for (std::size_t c = 0; c < kEmotionCount; ++c) {
          if (kEmotionNames[c] == name) {
            style.emotion_rates[c] = rate.get<double>();
            known = true;
            break;
          }
        }
        if (!known) throw ConfigInvalidError("unknown emotion category '" + name + "'");
      }
    }
    return style;
  };

  SynthConfig cfg;
  if (j.contains("n_per_class")) cfg.n_per_class = j.at("n_per_class").get<std::size_t>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("human")) cfg.human = read_style(j.at("human"), cfg.human);
  if (j.contains("ai")) cfg.ai = read_style(j.at("ai"), cfg.ai);
  return cfg;
}

}  // namespace stylo
