#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stylo/ensemble.hpp"
#include "stylo/errors.hpp"
#include "stylo/eval.hpp"
#include "stylo/pipeline.hpp"
#include "test_support.hpp"

using namespace stylo;
namespace fs = std::filesystem;
using stylo::testing::data_path;
using stylo::testing::shifted_config;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& child = "") const {
    return child.empty() ? path.string() : (path / child).string();
  }
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Small grids keep the test suite quick; both sides of every comparison use
// the same grids so artifact equality is meaningful.
ModelGrids tiny_grids() {
  ModelGrids grids;
  grids.logistic = {{.l2_lambda = 0.01, .learning_rate = 0.3, .epochs = 150}};
  grids.forest = {{.n_trees = 30, .max_depth = 6}};
  grids.boosting = {{.n_rounds = 40, .learning_rate = 0.1, .max_depth = 3}};
  grids.svm = {{.c = 1.0, .gamma = 0.1}};
  grids.mlp = {{.hidden_sizes = {8}, .learning_rate = 0.1, .epochs = 80}};
  return grids;
}

void write_test_corpus(const std::string& path, std::size_t n_per_class, std::uint64_t seed) {
  auto lex = stylo::testing::fixture_lexicon();
  auto docs = generate_synthetic_corpus(shifted_config(n_per_class, seed), lex);
  std::ofstream out(path, std::ios::binary);
  write_corpus(out, docs);
}

RunConfig base_config(const TempDir& dir, const std::string& corpus, const std::string& out) {
  RunConfig cfg;
  cfg.corpus_path = corpus;
  cfg.lexicon_path = data_path("fixture_lexicon.txt");
  cfg.out_dir = dir.str(out);
  cfg.seed = 7;
  cfg.cv_folds = 5;
  cfg.grids = tiny_grids();
  return cfg;
}

const std::vector<std::string> kExpectedFiles = {
    "features.csv",
    "split_manifest.json",
    "standardizer.json",
    "cv.json",
    "metrics.csv",
    "feature_auc.csv",
    "importance_random_forest.csv",
    "importance_gradient_boosting.csv",
    "density_coleman_liau_index.csv",
    "report.json",
    "models/logistic_regression.json",
    "models/random_forest.json",
    "models/gradient_boosting.json",
    "models/svm_rbf.json",
    "models/mlp.json",
    "models/ensemble.json",
};

}  // namespace

TEST_CASE("pipeline writes the full report directory") {
  TempDir dir("stylo_pipeline_full");
  write_test_corpus(dir.str("corpus.csv"), 40, 100);
  RunConfig cfg = base_config(dir, dir.str("corpus.csv"), "out");

  PipelineReport report = run_pipeline(cfg);

  for (const auto& file : kExpectedFiles) {
    INFO("missing ", file);
    CHECK(fs::exists(fs::path(cfg.out_dir) / file));
  }
  CHECK(!fs::exists(fs::path(cfg.out_dir) / "FAILED"));

  REQUIRE(report.models.size() == 6);  // five families + ensemble
  CHECK(report.models.back().family == "ensemble");
  for (const auto& eval : report.models) {
    CHECK(eval.accuracy >= 0.0);
    CHECK(eval.accuracy <= 1.0);
    CHECK(eval.auc >= 0.0);
    CHECK(eval.auc <= 1.0);
    CHECK(eval.test_probabilities.size() == report.test_ids.size());
    for (double p : eval.test_probabilities) {
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
  CHECK(report.manifest.train_ids.size() == 64);
  CHECK(report.manifest.test_ids.size() == 16);
  CHECK(report.feature_aucs.size() == kFeatureCount);
  CHECK(report.importances.count("random_forest") == 1);
  CHECK(report.importances.count("gradient_boosting") == 1);
  REQUIRE(report.densities.size() == 1);
  CHECK(report.densities[0].feature == "coleman_liau_index");
}

TEST_CASE("report is self-consistent: stored probabilities reproduce the metrics") {
  TempDir dir("stylo_pipeline_consistency");
  write_test_corpus(dir.str("corpus.csv"), 30, 200);
  RunConfig cfg = base_config(dir, dir.str("corpus.csv"), "out");
  PipelineReport report = run_pipeline(cfg);

  const auto& ensemble = report.models.back();
  std::vector<int> predicted(ensemble.test_probabilities.size());
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    predicted[i] = classify(ensemble.test_probabilities[i], report.threshold);
  }
  CHECK(accuracy(predicted, report.test_labels) == ensemble.accuracy);
  CHECK(roc_auc(ensemble.test_probabilities, report.test_labels).auc ==
        doctest::Approx(ensemble.auc).epsilon(1e-15));

  // The ensemble probability is the mean of the five member probabilities.
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    double mean = 0.0;
    for (std::size_t m = 0; m + 1 < report.models.size(); ++m) {
      mean += report.models[m].test_probabilities[i];
    }
    mean /= static_cast<double>(report.models.size() - 1);
    CHECK(ensemble.test_probabilities[i] == doctest::Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("same seed twice gives byte-identical artifacts") {
  TempDir dir("stylo_pipeline_determinism");
  write_test_corpus(dir.str("corpus.csv"), 30, 300);

  RunConfig cfg_a = base_config(dir, dir.str("corpus.csv"), "out_a");
  RunConfig cfg_b = base_config(dir, dir.str("corpus.csv"), "out_b");
  run_pipeline(cfg_a);
  run_pipeline(cfg_b);

  for (const auto& file : kExpectedFiles) {
    INFO("file ", file);
    CHECK(read_file(fs::path(cfg_a.out_dir) / file) == read_file(fs::path(cfg_b.out_dir) / file));
  }

  RunConfig cfg_c = base_config(dir, dir.str("corpus.csv"), "out_c");
  cfg_c.seed = 8;
  run_pipeline(cfg_c);
  CHECK(read_file(fs::path(cfg_a.out_dir) / "split_manifest.json") !=
        read_file(fs::path(cfg_c.out_dir) / "split_manifest.json"));
}

TEST_CASE("results are independent of the thread count") {
  TempDir dir("stylo_pipeline_threads");
  write_test_corpus(dir.str("corpus.csv"), 30, 400);

  RunConfig one = base_config(dir, dir.str("corpus.csv"), "out_one");
  RunConfig four = base_config(dir, dir.str("corpus.csv"), "out_four");
  four.threads = 4;
  run_pipeline(one);
  run_pipeline(four);
  for (const auto& file : kExpectedFiles) {
    INFO("file ", file);
    CHECK(read_file(fs::path(one.out_dir) / file) == read_file(fs::path(four.out_dir) / file));
  }
}

TEST_CASE("missing inputs fail before touching the output directory") {
  TempDir dir("stylo_pipeline_missing");
  write_test_corpus(dir.str("corpus.csv"), 10, 500);

  RunConfig cfg = base_config(dir, dir.str("corpus.csv"), "out");
  cfg.lexicon_path = dir.str("nope.txt");
  CHECK_THROWS_AS(run_pipeline(cfg), IoError);
  CHECK(!fs::exists(cfg.out_dir));

  cfg = base_config(dir, dir.str("missing_corpus.csv"), "out2");
  CHECK_THROWS_AS(run_pipeline(cfg), IoError);
  CHECK(!fs::exists(cfg.out_dir));
}

TEST_CASE("bad config is rejected") {
  TempDir dir("stylo_pipeline_badcfg");
  write_test_corpus(dir.str("corpus.csv"), 10, 600);
  RunConfig cfg = base_config(dir, dir.str("corpus.csv"), "out");
  cfg.models = {"logistic_regression", "quantum"};
  CHECK_THROWS_AS(run_pipeline(cfg), ConfigInvalidError);
  cfg = base_config(dir, dir.str("corpus.csv"), "out");
  cfg.threshold = 1.0;
  CHECK_THROWS_AS(run_pipeline(cfg), ConfigInvalidError);
}

TEST_CASE("subcommands chain to the same artifacts as the pipeline") {
  TempDir dir("stylo_pipeline_chain");
  write_test_corpus(dir.str("corpus.csv"), 30, 700);

  RunConfig cfg = base_config(dir, dir.str("corpus.csv"), "pipeline_out");
  run_pipeline(cfg);
  const fs::path pipeline_out(cfg.out_dir);

  const fs::path chained(dir.str("chained"));
  fs::create_directories(chained);

  cmd_extract(dir.str("corpus.csv"), cfg.lexicon_path, (chained / "features.csv").string(), 1);

  TrainOptions train;
  train.features_path = (chained / "features.csv").string();
  train.out_dir = chained.string();
  train.seed = cfg.seed;
  train.train_fraction = cfg.train_fraction;
  train.threshold = cfg.threshold;
  train.cv_folds = cfg.cv_folds;
  train.grids = cfg.grids;
  cmd_train(train);

  cmd_evaluate((chained / "features.csv").string(), chained.string(), chained.string());
  cmd_feature_auc((chained / "features.csv").string(), (chained / "feature_auc.csv").string(), 1);
  cmd_importance((chained / "models").string(), chained.string());
  cmd_density((chained / "features.csv").string(), "coleman_liau_index", 30,
              (chained / "density_coleman_liau_index.csv").string());

  for (const auto& file : kExpectedFiles) {
    if (file == "report.json") continue;  // unified report is pipeline-only
    INFO("artifact ", file);
    CHECK(read_file(pipeline_out / file) == read_file(chained / file));
  }
}

TEST_CASE("a model subset trains only that subset") {
  TempDir dir("stylo_pipeline_subset");
  write_test_corpus(dir.str("corpus.csv"), 20, 900);
  RunConfig cfg = base_config(dir, dir.str("corpus.csv"), "out");
  cfg.models = {"svm_rbf", "logistic_regression"};  // order should not matter
  PipelineReport report = run_pipeline(cfg);

  REQUIRE(report.models.size() == 3);  // the two members + ensemble
  CHECK(report.models[0].family == "logistic_regression");  // canonical order
  CHECK(report.models[1].family == "svm_rbf");
  CHECK(report.models[2].family == "ensemble");
  CHECK(report.importances.empty());  // no tree models trained
  CHECK(fs::exists(fs::path(cfg.out_dir) / "models/logistic_regression.json"));
  CHECK(!fs::exists(fs::path(cfg.out_dir) / "models/random_forest.json"));
  CHECK(!fs::exists(fs::path(cfg.out_dir) / "importance_random_forest.csv"));
}

TEST_CASE("pair-safe training keeps pairs in one partition") {
  TempDir dir("stylo_pipeline_pairsafe");
  write_test_corpus(dir.str("corpus.csv"), 20, 800);
  RunConfig cfg = base_config(dir, dir.str("corpus.csv"), "out");
  cfg.pair_safe = true;
  PipelineReport report = run_pipeline(cfg);

  auto side_of = [&](const std::string& id) {
    for (const auto& train_id : report.manifest.train_ids) {
      if (train_id == id) return 0;
    }
    return 1;
  };
  for (std::size_t i = 1; i <= 20; ++i) {
    std::string number = std::to_string(i);
    std::string padded = std::string(5 - number.size(), '0') + number;
    CHECK(side_of("h" + padded) == side_of("a" + padded));
  }
}

TEST_CASE("cli binary runs end to end") {
  TempDir dir("stylo_cli_smoke");
  const std::string binary = STYLO_BIN;
  const std::string lexicon = data_path("fixture_lexicon.txt");

  auto run = [](const std::string& command) { return std::system(command.c_str()); };

  std::string synth_cmd = binary + " synth --out " + dir.str("corpus.csv") +
                          " --seed 11 --n-per-class 20 --lexicon " + lexicon +
                          " > /dev/null";
  REQUIRE(run(synth_cmd) == 0);
  CHECK(fs::exists(dir.str("corpus.csv")));

  std::string pipeline_cmd = binary + " pipeline --corpus " + dir.str("corpus.csv") +
                             " --lexicon " + lexicon + " --out " + dir.str("out") +
                             " --seed 11 > " + dir.str("stdout.txt");
  REQUIRE(run(pipeline_cmd) == 0);
  CHECK(fs::exists(dir.str("out/metrics.csv")));
  CHECK(fs::exists(dir.str("out/report.json")));
  std::string stdout_text = read_file(dir.str("stdout.txt"));
  CHECK(stdout_text.find("ensemble") != std::string::npos);

  // Missing lexicon: nonzero exit, no output directory.
  std::string bad_cmd = binary + " pipeline --corpus " + dir.str("corpus.csv") + " --lexicon " +
                        dir.str("nope.txt") + " --out " + dir.str("bad_out") + " 2> /dev/null";
  CHECK(run(bad_cmd) != 0);
  CHECK(!fs::exists(dir.str("bad_out")));
}
