#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stylo {

/// The ten word-affect categories, in schema order. The first eight are
/// emotions, the last two are sentiment polarities.
enum class Emotion : std::size_t {
  Anger = 0,
  Anticipation,
  Disgust,
  Fear,
  Joy,
  Sadness,
  Surprise,
  Trust,
  Negative,
  Positive,
};

inline constexpr std::size_t kEmotionCount = 10;

inline constexpr std::array<std::string_view, kEmotionCount> kEmotionNames = {
    "anger",   "anticipation", "disgust", "fear",     "joy",
    "sadness", "surprise",     "trust",   "negative", "positive",
};

using EmotionSet = std::bitset<kEmotionCount>;

/// Immutable word -> category-set mapping loaded from a tab-separated
/// word/category/flag file. Lookups are case-insensitive.
class EmotionLexicon {
 public:
  /// Parses `word<TAB>category<TAB>{0|1}` records, one per line, LF or CRLF.
  /// Flag-0 lines and blank lines are ignored; duplicate flag-1 lines are
  /// idempotent. Throws MalformedLineError on a wrong field count, unknown
  /// category, or flag outside {0,1}.
  static EmotionLexicon load(std::istream& in);
  static EmotionLexicon load_file(const std::string& path);

  /// Categories of `word` (case-insensitive); empty set if absent.
  EmotionSet emotions_of(std::string_view word) const;

  std::size_t size() const { return entries_.size(); }

  /// Lexicon words carrying `category`, sorted; used by the corpus generator.
  std::vector<std::string> words_with(Emotion category) const;

 private:
  std::unordered_map<std::string, EmotionSet> entries_;
};

}  // namespace stylo
