#pragma once

// Shared fixtures for the test suites.

#include <string>

#include "stylo/lexicon.hpp"
#include "stylo/synth.hpp"

namespace stylo::testing {

inline std::string data_path(const std::string& name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

inline EmotionLexicon fixture_lexicon() {
  return EmotionLexicon::load_file(data_path("fixture_lexicon.txt"));
}

/// Corpus configuration with a +2.0 Coleman-Liau shift toward the human
/// class (longer words, longer sentences), a mild type-token-ratio shift
/// (larger human vocabulary) and identical emotion injection rates. The
/// knob values are calibrated against the extractor; see test_synth.cpp.
inline SynthConfig shifted_config(std::size_t n_per_class, std::uint64_t seed) {
  SynthConfig cfg;
  cfg.n_per_class = n_per_class;
  cfg.seed = seed;

  cfg.human.vocab_size = 1000;
  cfg.human.mean_sentence_len = 12.5;
  cfg.human.sentence_len_spread = 3.0;
  cfg.human.mean_word_len = 5.4;
  cfg.human.word_len_spread = 0.9;
  cfg.human.polysyllable_rate = 0.15;
  cfg.human.mean_sentences = 10.0;
  cfg.human.sentence_count_spread = 2.0;

  cfg.ai = cfg.human;
  cfg.ai.vocab_size = 700;
  cfg.ai.mean_sentence_len = 11.0;
  cfg.ai.mean_word_len = 4.6;

  for (std::size_t c = 0; c < kEmotionCount; ++c) {
    cfg.human.emotion_rates[c] = 0.02;
    cfg.ai.emotion_rates[c] = 0.02;
  }
  return cfg;
}

}  // namespace stylo::testing
