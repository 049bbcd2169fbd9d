#include <algorithm>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stylo/pipeline.hpp"

namespace {

struct CommonArgs {
  std::uint64_t seed = 42;
  double split = 0.8;
  double threshold = 0.5;
  std::size_t folds = 5;
  unsigned threads = 1;
  bool pair_safe = false;
  std::vector<std::string> models;
};

void add_model_flag(CLI::App* cmd, std::vector<std::string>& models) {
  cmd->add_option("--models", models,
                  "model families to train (default: all five)")
      ->delimiter(',');
}

void print_report(const stylo::PipelineReport& report, const std::string& out_dir) {
  std::printf("%-22s %10s %10s\n", "model", "accuracy", "auc");
  for (const auto& eval : report.models) {
    std::printf("%-22s %10.4f %10.4f\n", eval.family.c_str(), eval.accuracy, eval.auc);
  }
  std::printf("\ntop features by oriented AUC:\n");
  auto sorted = report.feature_aucs;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.oriented_auc > b.oriented_auc;
  });
  for (std::size_t i = 0; i < sorted.size() && i < 5; ++i) {
    std::printf("  %-22s %.4f\n", sorted[i].feature.c_str(), sorted[i].oriented_auc);
  }
  if (report.dropped_rows > 0) {
    std::printf("\ndropped %zu empty-text rows during load\n", report.dropped_rows);
  }
  std::printf("\nreports written to %s\n", out_dir.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stylometric human-vs-machine news classification toolkit"};
  app.require_subcommand(1);

  // synth ---------------------------------------------------------------
  auto* synth = app.add_subcommand("synth", "generate a seeded synthetic paired corpus");
  std::string synth_out, synth_config, synth_lexicon;
  synth->add_option("--out", synth_out, "corpus CSV to write")->required();
  synth->add_option("--config", synth_config, "synthesis config JSON");
  synth->add_option("--lexicon", synth_lexicon, "emotion lexicon (needed for emotion injection)");
  std::uint64_t synth_seed = 0;
  std::size_t synth_n = 250;
  std::size_t human_vocab = 0, ai_vocab = 0;
  double human_word_len = 0, ai_word_len = 0;
  double human_sentence_len = 0, ai_sentence_len = 0;
  double human_poly = 0, ai_poly = 0;
  double emotion_rate = 0;
  auto* seed_opt = synth->add_option("--seed", synth_seed, "generator seed");
  auto* n_opt = synth->add_option("--n-per-class", synth_n, "documents per class");
  auto* hv_opt = synth->add_option("--human-vocab", human_vocab, "human vocabulary size");
  auto* av_opt = synth->add_option("--ai-vocab", ai_vocab, "machine vocabulary size");
  auto* hw_opt = synth->add_option("--human-word-len", human_word_len, "human mean word length");
  auto* aw_opt = synth->add_option("--ai-word-len", ai_word_len, "machine mean word length");
  auto* hs_opt =
      synth->add_option("--human-sentence-len", human_sentence_len, "human mean sentence length");
  auto* as_opt =
      synth->add_option("--ai-sentence-len", ai_sentence_len, "machine mean sentence length");
  auto* hp_opt = synth->add_option("--human-polysyllable-rate", human_poly,
                                   "human polysyllabic word probability");
  auto* ap_opt = synth->add_option("--ai-polysyllable-rate", ai_poly,
                                   "machine polysyllabic word probability");
  auto* er_opt = synth->add_option("--emotion-rate", emotion_rate,
                                   "uniform per-category injection rate for both classes");

  // extract -------------------------------------------------------------
  auto* extract = app.add_subcommand("extract", "extract the feature matrix from a corpus");
  std::string ex_corpus, ex_lexicon, ex_out;
  unsigned ex_threads = 1;
  extract->add_option("--corpus", ex_corpus, "corpus CSV")->required();
  extract->add_option("--lexicon", ex_lexicon, "emotion lexicon file")->required();
  extract->add_option("--out", ex_out, "feature CSV to write")->required();
  extract->add_option("--threads", ex_threads, "worker threads");

  // train ---------------------------------------------------------------
  auto* train = app.add_subcommand("train", "split, standardize, select and fit models");
  stylo::TrainOptions train_opts;
  train->add_option("--features", train_opts.features_path, "feature CSV")->required();
  train->add_option("--out", train_opts.out_dir, "output directory")->required();
  train->add_option("--seed", train_opts.seed, "run seed");
  train->add_option("--split", train_opts.train_fraction, "train fraction");
  train->add_option("--threshold", train_opts.threshold, "decision threshold");
  train->add_option("--folds", train_opts.cv_folds, "cross-validation folds");
  train->add_option("--threads", train_opts.threads, "worker threads");
  train->add_flag("--pair-safe", train_opts.pair_safe, "keep article pairs in one partition");
  train->add_option("--corpus", train_opts.corpus_path, "corpus CSV (pair ids for --pair-safe)");
  add_model_flag(train, train_opts.models);

  // evaluate ------------------------------------------------------------
  auto* evaluate = app.add_subcommand("evaluate", "score trained models on the held-out split");
  std::string ev_features, ev_train_dir, ev_out;
  evaluate->add_option("--features", ev_features, "feature CSV")->required();
  evaluate->add_option("--train-dir", ev_train_dir, "directory written by train")->required();
  evaluate->add_option("--out", ev_out, "output directory")->required();

  // feature-auc ----------------------------------------------------------
  auto* fauc = app.add_subcommand("feature-auc", "per-feature discrimination report");
  std::string fa_features, fa_out;
  unsigned fa_threads = 1;
  fauc->add_option("--features", fa_features, "feature CSV")->required();
  fauc->add_option("--out", fa_out, "CSV file to write")->required();
  fauc->add_option("--threads", fa_threads, "worker threads");

  // importance -----------------------------------------------------------
  auto* importance = app.add_subcommand("importance", "model-based feature importance report");
  std::string im_models, im_out;
  importance->add_option("--models-dir", im_models, "directory of model files")->required();
  importance->add_option("--out", im_out, "output directory")->required();

  // density --------------------------------------------------------------
  auto* density = app.add_subcommand("density", "class-conditional density of one feature");
  std::string de_features, de_feature = "coleman_liau_index", de_out;
  std::size_t de_bins = 30;
  density->add_option("--features", de_features, "feature CSV")->required();
  density->add_option("--feature", de_feature, "feature name");
  density->add_option("--bins", de_bins, "histogram bins");
  density->add_option("--out", de_out, "CSV file to write")->required();

  // pipeline ---------------------------------------------------------------
  auto* pipeline = app.add_subcommand("pipeline", "full run: extract, train, evaluate, report");
  stylo::RunConfig run_cfg;
  CommonArgs pl;
  pipeline->add_option("--corpus", run_cfg.corpus_path, "corpus CSV")->required();
  pipeline->add_option("--lexicon", run_cfg.lexicon_path, "emotion lexicon file")->required();
  pipeline->add_option("--out", run_cfg.out_dir, "output directory")->required();
  pipeline->add_option("--seed", pl.seed, "run seed");
  pipeline->add_option("--split", pl.split, "train fraction");
  pipeline->add_option("--threshold", pl.threshold, "decision threshold");
  pipeline->add_option("--folds", pl.folds, "cross-validation folds");
  pipeline->add_option("--threads", pl.threads, "worker threads");
  pipeline->add_flag("--pair-safe", pl.pair_safe, "keep article pairs in one partition");
  add_model_flag(pipeline, pl.models);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      stylo::SynthConfig cfg =
          synth_config.empty() ? stylo::SynthConfig{} : stylo::load_synth_config(synth_config);
      if (seed_opt->count()) cfg.seed = synth_seed;
      if (n_opt->count()) cfg.n_per_class = synth_n;
      if (hv_opt->count()) cfg.human.vocab_size = human_vocab;
      if (av_opt->count()) cfg.ai.vocab_size = ai_vocab;
      if (hw_opt->count()) cfg.human.mean_word_len = human_word_len;
      if (aw_opt->count()) cfg.ai.mean_word_len = ai_word_len;
      if (hs_opt->count()) cfg.human.mean_sentence_len = human_sentence_len;
      if (as_opt->count()) cfg.ai.mean_sentence_len = ai_sentence_len;
      if (hp_opt->count()) cfg.human.polysyllable_rate = human_poly;
      if (ap_opt->count()) cfg.ai.polysyllable_rate = ai_poly;
      if (er_opt->count()) {
        for (std::size_t c = 0; c < stylo::kEmotionCount; ++c) {
          cfg.human.emotion_rates[c] = emotion_rate;
          cfg.ai.emotion_rates[c] = emotion_rate;
        }
      }
      stylo::cmd_synth(cfg, synth_lexicon, synth_out);
      std::printf("wrote %zu documents to %s\n", 2 * cfg.n_per_class, synth_out.c_str());
    } else if (*extract) {
      stylo::cmd_extract(ex_corpus, ex_lexicon, ex_out, ex_threads);
      std::printf("wrote %s\n", ex_out.c_str());
    } else if (*train) {
      stylo::cmd_train(train_opts);
      std::printf("models written to %s\n", train_opts.out_dir.c_str());
    } else if (*evaluate) {
      stylo::cmd_evaluate(ev_features, ev_train_dir, ev_out);
      std::printf("metrics written to %s\n", ev_out.c_str());
    } else if (*fauc) {
      stylo::cmd_feature_auc(fa_features, fa_out, fa_threads);
      std::printf("wrote %s\n", fa_out.c_str());
    } else if (*importance) {
      stylo::cmd_importance(im_models, im_out);
      std::printf("importance reports written to %s\n", im_out.c_str());
    } else if (*density) {
      stylo::cmd_density(de_features, de_feature, de_bins, de_out);
      std::printf("wrote %s\n", de_out.c_str());
    } else if (*pipeline) {
      run_cfg.seed = pl.seed;
      run_cfg.train_fraction = pl.split;
      run_cfg.threshold = pl.threshold;
      run_cfg.cv_folds = pl.folds;
      run_cfg.threads = pl.threads;
      run_cfg.pair_safe = pl.pair_safe;
      run_cfg.models = pl.models;
      stylo::PipelineReport report = stylo::run_pipeline(run_cfg);
      print_report(report, run_cfg.out_dir);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
