#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "stylo/dataset.hpp"
#include "stylo/lexicon.hpp"

namespace stylo {

/// Style knobs for one class of generated documents. Documents are built
/// from pronounceable pseudo-words composed of consonant-vowel syllable
/// templates, so word length (letters), syllable counts and vocabulary size
/// are controlled by construction and move the extracted features directly.
struct ClassStyle {
  std::size_t vocab_size = 600;
  double mean_sentence_len = 12.0;  // words per sentence
  double sentence_len_spread = 3.0;
  double mean_word_len = 4.6;  // letters per word
  double word_len_spread = 1.2;
  double polysyllable_rate = 0.15;  // probability a word gets >= 3 syllables
  double mean_sentences = 10.0;     // sentences per document
  double sentence_count_spread = 2.0;
  std::array<double, kEmotionCount> emotion_rates{};  // per-word injection probability
};

struct SynthConfig {
  std::size_t n_per_class = 250;
  std::uint64_t seed = 0;
  ClassStyle human;
  ClassStyle ai;

  /// Identical class parameters: no stylistic signal separates the labels.
  static SynthConfig null_config(std::size_t n_per_class, std::uint64_t seed);
};

/// Deterministically generates a paired corpus: n_per_class documents per
/// label, emitted as human/machine pairs sharing a pair id. Emotion words are
/// injected from `lex` at the configured per-category rates; the class
/// vocabularies never collide with lexicon entries. Throws ConfigInvalidError
/// on out-of-range knobs or on an injection rate with no lexicon words to
/// draw from.
std::vector<RawDocument> generate_synthetic_corpus(const SynthConfig& cfg,
                                                   const EmotionLexicon& lex);

}  // namespace stylo
