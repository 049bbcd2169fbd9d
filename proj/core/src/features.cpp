#include "stylo/features.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_set>

#include "stylo/errors.hpp"

namespace stylo {

const std::array<std::string_view, kFeatureCount>& feature_names() {
  static const std::array<std::string_view, kFeatureCount> names = {
      "char_count",
      "word_count",
      "sentence_count",
      "avg_sentence_length",
      "avg_word_length",
      "exclamation_ratio",
      "question_ratio",
      "comma_ratio",
      "punct_ratio",
      "caps_ratio",
      "type_token_ratio",
      "flesch_reading_ease",
      "flesch_kincaid_grade",
      "smog_index",
      "coleman_liau_index",
      "emotion_anger",
      "emotion_anticipation",
      "emotion_disgust",
      "emotion_fear",
      "emotion_joy",
      "emotion_sadness",
      "emotion_surprise",
      "emotion_trust",
      "emotion_negative",
      "emotion_positive",
  };
  return names;
}

std::size_t feature_index(std::string_view name) {
  const auto& names = feature_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw UnknownFeatureError(std::string(name));
}

std::string feature_schema_hash() {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](char c) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  };
  const auto& names = feature_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) mix(',');
    for (char c : names[i]) mix(c);
  }
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double type_token_ratio(const std::vector<std::string>& words) {
  if (words.empty()) throw EmptyDocumentError();
  std::unordered_set<std::string_view> unique(words.begin(), words.end());
  return static_cast<double>(unique.size()) / static_cast<double>(words.size());
}

ReadabilityIndices readability_indices(const TextStats& stats) {
  if (stats.word_count == 0 || stats.sentence_count == 0) {
    throw DegenerateStatsError("need word_count >= 1 and sentence_count >= 1");
  }
  const double words = static_cast<double>(stats.word_count);
  const double sentences = static_cast<double>(stats.sentence_count);
  const double syllables = static_cast<double>(stats.syllable_count);
  const double letters = static_cast<double>(stats.letter_count);
  const double polysyllables = static_cast<double>(stats.polysyllable_count);

  ReadabilityIndices out;
  out.flesch_reading_ease = 206.835 - 1.015 * (words / sentences) - 84.6 * (syllables / words);
  out.flesch_kincaid_grade = 0.39 * (words / sentences) + 11.8 * (syllables / words) - 15.59;
  out.smog_index = 1.0430 * std::sqrt(polysyllables * 30.0 / sentences) + 3.1291;
  const double letters_per_100 = 100.0 * letters / words;
  const double sentences_per_100 = 100.0 * sentences / words;
  out.coleman_liau_index = 0.0588 * letters_per_100 - 0.296 * sentences_per_100 - 15.8;
  return out;
}

std::array<double, kEmotionCount> emotion_proportions(const std::vector<std::string>& words,
                                                      const EmotionLexicon& lex) {
  if (words.empty()) throw EmptyDocumentError();
  std::array<std::size_t, kEmotionCount> counts{};
  for (const auto& word : words) {
    EmotionSet set = lex.emotions_of(word);
    if (set.none()) continue;
    for (std::size_t c = 0; c < kEmotionCount; ++c) {
      if (set.test(c)) ++counts[c];
    }
  }
  std::array<double, kEmotionCount> out{};
  for (std::size_t c = 0; c < kEmotionCount; ++c) {
    out[c] = static_cast<double>(counts[c]) / static_cast<double>(words.size());
  }
  return out;
}

FeatureVector extract_features(std::string_view text, const EmotionLexicon& lex) {
  TextStats stats = compute_stats(text);
  if (stats.word_count == 0) throw EmptyDocumentError();
  auto words = tokenize(text);
  auto readability = readability_indices(stats);
  auto emotions = emotion_proportions(words, lex);

  const double words_n = static_cast<double>(stats.word_count);
  const double letters_n = static_cast<double>(stats.letter_count);

  FeatureVector v{};
  v[0] = static_cast<double>(stats.char_count);
  v[1] = words_n;
  v[2] = static_cast<double>(stats.sentence_count);
  v[3] = words_n / static_cast<double>(stats.sentence_count);
  v[4] = letters_n / words_n;
  v[5] = static_cast<double>(stats.exclamation_count) / words_n;
  v[6] = static_cast<double>(stats.question_count) / words_n;
  v[7] = static_cast<double>(stats.comma_count) / words_n;
  v[8] = static_cast<double>(stats.punct_count) / words_n;
  v[9] = static_cast<double>(stats.uppercase_letter_count) / letters_n;
  v[10] = type_token_ratio(words);
  v[11] = readability.flesch_reading_ease;
  v[12] = readability.flesch_kincaid_grade;
  v[13] = readability.smog_index;
  v[14] = readability.coleman_liau_index;
  for (std::size_t c = 0; c < kEmotionCount; ++c) v[15 + c] = emotions[c];
  return v;
}

}  // namespace stylo
