#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

/// Deterministic counts over one document. All counts operate on Unicode
/// scalar values; the letter/uppercase/punctuation classes follow the Unicode
/// general categories.
struct TextStats {
  std::size_t char_count = 0;
  std::size_t letter_count = 0;
  std::size_t uppercase_letter_count = 0;
  std::size_t word_count = 0;
  std::size_t unique_word_count = 0;
  std::size_t sentence_count = 0;
  std::size_t syllable_count = 0;
  std::size_t polysyllable_count = 0;  // words with >= 3 syllables
  std::size_t period_count = 0;
  std::size_t comma_count = 0;
  std::size_t exclamation_count = 0;
  std::size_t question_count = 0;
  std::size_t punct_count = 0;

  bool operator==(const TextStats&) const = default;
};

/// Splits text into lowercased words. A word is a maximal run of alphabetic
/// characters, optionally joined by single internal apostrophes (' or U+2019)
/// or hyphens; digits and standalone punctuation never form words.
std::vector<std::string> tokenize(std::string_view text);

/// Estimated sentence count. A boundary is a maximal run of {. ! ?} followed
/// by whitespace or end of text; text that contains at least one word always
/// counts as at least one sentence. No abbreviation handling.
std::size_t segment_sentences(std::string_view text);

/// Heuristic syllable count for a lowercased word: contiguous vowel groups
/// over {a,e,i,o,u,y}, minus a trailing silent 'e' (unless the word ends in
/// consonant+"le"), clamped to >= 1.
std::size_t count_syllables(std::string_view word);

/// All counts for one document. Throws EmptyTextError when the text is empty
/// after whitespace trimming.
TextStats compute_stats(std::string_view text);

}  // namespace stylo
