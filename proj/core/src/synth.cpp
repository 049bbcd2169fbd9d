#include "stylo/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string_view>
#include <unordered_set>

#include "stylo/errors.hpp"
#include "stylo/rng.hpp"

namespace stylo {

namespace {

constexpr std::string_view kConsonants = "bcdfghjklmnprstvwz";
constexpr std::string_view kVowels = "aeiou";
// A trailing 'e' would trip the silent-e rule of the syllable counter, so the
// vowel of a word-final open syllable avoids it.
constexpr std::string_view kFinalOpenVowels = "aiou";

char pick(std::string_view alphabet, SeededRng& rng) {
  return alphabet[static_cast<std::size_t>(rng.below(alphabet.size()))];
}

void check_style(const ClassStyle& style, const char* which) {
  auto fail = [&](const std::string& msg) {
    throw ConfigInvalidError(std::string(which) + ": " + msg);
  };
  if (style.vocab_size < 1) fail("vocab_size must be >= 1");
  if (style.mean_sentence_len < 1.0) fail("mean_sentence_len must be >= 1");
  if (style.mean_word_len < 2.0) fail("mean_word_len must be >= 2");
  if (style.mean_sentences < 1.0) fail("mean_sentences must be >= 1");
  if (style.sentence_len_spread < 0.0 || style.word_len_spread < 0.0 ||
      style.sentence_count_spread < 0.0) {
    fail("spreads must be >= 0");
  }
  if (style.polysyllable_rate < 0.0 || style.polysyllable_rate > 1.0) {
    fail("polysyllable_rate must be in [0,1]");
  }
  for (double rate : style.emotion_rates) {
    if (rate < 0.0 || rate > 1.0) fail("emotion rates must be in [0,1]");
  }
}

// One pseudo-word from consonant-vowel syllable templates. Syllable count is
// chosen first (>= 3 with probability polysyllable_rate), then the letter
// budget picks how many syllables get a closing consonant, so word length and
// syllable count are both controlled and the heuristic counter agrees with
// the construction exactly.
std::string make_word(const ClassStyle& style, SeededRng& rng) {
  std::size_t syllables;
  if (rng.bernoulli(style.polysyllable_rate)) {
    syllables = rng.bernoulli(0.2) ? 4 : 3;
  } else {
    syllables = rng.bernoulli(0.4) ? 1 : 2;
  }
  auto target = static_cast<long>(std::lround(rng.normal(style.mean_word_len, style.word_len_spread)));
  const long lo = static_cast<long>(2 * syllables);
  const long hi = static_cast<long>(3 * syllables);
  const long length = std::clamp(target, lo, hi);
  const std::size_t closed_count = static_cast<std::size_t>(length - lo);

  std::vector<bool> closed(syllables, false);
  for (std::size_t k = 0; k < closed_count && k < syllables; ++k) closed[k] = true;
  rng.shuffle(closed);

  std::string word;
  word.reserve(static_cast<std::size_t>(length));
  for (std::size_t s = 0; s < syllables; ++s) {
    word.push_back(pick(kConsonants, rng));
    bool final_open = s + 1 == syllables && !closed[s];
    word.push_back(pick(final_open ? kFinalOpenVowels : kVowels, rng));
    if (closed[s]) word.push_back(pick(kConsonants, rng));
  }
  return word;
}

std::vector<std::string> build_vocabulary(const ClassStyle& style, const EmotionLexicon& lex,
                                          SeededRng& rng) {
  std::unordered_set<std::string> seen;
  std::vector<std::string> vocab;
  vocab.reserve(style.vocab_size);
  std::size_t attempts = 0;
  const std::size_t max_attempts = 200 * style.vocab_size + 1000;
  while (vocab.size() < style.vocab_size) {
    if (++attempts > max_attempts) {
      throw ConfigInvalidError("cannot build a vocabulary of " +
                               std::to_string(style.vocab_size) +
                               " distinct words with these length knobs");
    }
    std::string word = make_word(style, rng);
    if (lex.emotions_of(word).any()) continue;  // keep emotion counts injection-only
    if (seen.insert(word).second) vocab.push_back(std::move(word));
  }
  return vocab;
}

class DocumentWriter {
 public:
  DocumentWriter(const ClassStyle& style, std::vector<std::string> vocab,
                 const std::array<std::vector<std::string>, kEmotionCount>& emotion_words)
      : style_(style), vocab_(std::move(vocab)), emotion_words_(emotion_words) {}

  std::string generate(SeededRng& rng) const {
    auto sentence_count = static_cast<long>(
        std::lround(rng.normal(style_.mean_sentences, style_.sentence_count_spread)));
    sentence_count = std::max(1L, sentence_count);

    std::string text;
    for (long s = 0; s < sentence_count; ++s) {
      if (s > 0) text.push_back(' ');
      append_sentence(text, rng);
    }
    return text;
  }

 private:
  void append_sentence(std::string& text, SeededRng& rng) const {
    auto word_count = static_cast<long>(
        std::lround(rng.normal(style_.mean_sentence_len, style_.sentence_len_spread)));
    word_count = std::max(1L, word_count);

    for (long w = 0; w < word_count; ++w) {
      std::string word = next_word(rng);
      if (w == 0) word[0] = static_cast<char>(word[0] - 'a' + 'A');
      if (w > 0) text.push_back(' ');
      text += word;
      if (w + 1 < word_count && rng.bernoulli(0.08)) text.push_back(',');
    }
    double r = rng.uniform01();
    text.push_back(r < 0.05 ? '!' : r < 0.10 ? '?' : '.');
  }

  std::string next_word(SeededRng& rng) const {
    for (std::size_t c = 0; c < kEmotionCount; ++c) {
      if (style_.emotion_rates[c] <= 0.0) continue;
      if (rng.bernoulli(style_.emotion_rates[c])) {
        const auto& pool = emotion_words_[c];
        return pool[static_cast<std::size_t>(rng.below(pool.size()))];
      }
    }
    return vocab_[static_cast<std::size_t>(rng.below(vocab_.size()))];
  }

  const ClassStyle& style_;
  std::vector<std::string> vocab_;
  const std::array<std::vector<std::string>, kEmotionCount>& emotion_words_;
};

std::string padded(std::size_t value) {
  std::string digits = std::to_string(value);
  return std::string(digits.size() < 5 ? 5 - digits.size() : 0, '0') + digits;
}

}  // namespace

SynthConfig SynthConfig::null_config(std::size_t n_per_class, std::uint64_t seed) {
  SynthConfig cfg;
  cfg.n_per_class = n_per_class;
  cfg.seed = seed;
  cfg.ai = cfg.human;
  return cfg;
}

std::vector<RawDocument> generate_synthetic_corpus(const SynthConfig& cfg,
                                                   const EmotionLexicon& lex) {
  if (cfg.n_per_class < 1) throw ConfigInvalidError("n_per_class must be >= 1");
  check_style(cfg.human, "human style");
  check_style(cfg.ai, "ai style");

  std::array<std::vector<std::string>, kEmotionCount> emotion_words;
  for (std::size_t c = 0; c < kEmotionCount; ++c) {
    emotion_words[c] = lex.words_with(static_cast<Emotion>(c));
    bool needed = cfg.human.emotion_rates[c] > 0.0 || cfg.ai.emotion_rates[c] > 0.0;
    if (needed && emotion_words[c].empty()) {
      throw ConfigInvalidError("emotion injection for '" + std::string(kEmotionNames[c]) +
                               "' has no lexicon words to draw from");
    }
  }

  SeededRng rng(cfg.seed);
  // A finite vocabulary bakes its realized length statistics into every
  // document of its class, which would manufacture a class signal even under
  // identical knobs. Classes whose vocabulary-shaping knobs agree therefore
  // share one vocabulary.
  bool same_vocab_style = cfg.human.vocab_size == cfg.ai.vocab_size &&
                          cfg.human.mean_word_len == cfg.ai.mean_word_len &&
                          cfg.human.word_len_spread == cfg.ai.word_len_spread &&
                          cfg.human.polysyllable_rate == cfg.ai.polysyllable_rate;
  std::vector<std::string> human_vocab = build_vocabulary(cfg.human, lex, rng);
  std::vector<std::string> ai_vocab =
      same_vocab_style ? human_vocab : build_vocabulary(cfg.ai, lex, rng);
  DocumentWriter human_writer(cfg.human, std::move(human_vocab), emotion_words);
  DocumentWriter ai_writer(cfg.ai, std::move(ai_vocab), emotion_words);

  std::vector<RawDocument> docs;
  docs.reserve(2 * cfg.n_per_class);
  for (std::size_t i = 1; i <= cfg.n_per_class; ++i) {
    std::string pair_id = "p" + padded(i);
    docs.push_back({"h" + padded(i), human_writer.generate(rng), ClassLabel::Human, pair_id});
    docs.push_back({"a" + padded(i), ai_writer.generate(rng), ClassLabel::Ai, pair_id});
  }
  return docs;
}

}  // namespace stylo
