#include "stylo/text_stats.hpp"

#include <unordered_set>

#include "stylo/errors.hpp"
#include "stylo/unicode.hpp"

namespace stylo {

namespace {

using unicode::Codepoint;

bool is_word_separator(Codepoint cp) {
  return cp == '\'' || cp == 0x2019 /* typographic apostrophe */ || cp == '-';
}

bool is_ascii_vowel(Codepoint cp) {
  return cp == 'a' || cp == 'e' || cp == 'i' || cp == 'o' || cp == 'u' || cp == 'y';
}

bool is_terminal(Codepoint cp) { return cp == '.' || cp == '!' || cp == '?'; }

// Word = letter run, optionally joined by single internal apostrophes or
// hyphens. Lowercased on the way out; U+2019 normalizes to '.
std::vector<std::string> tokenize_codepoints(const std::vector<Codepoint>& cps) {
  std::vector<std::string> words;
  std::size_t i = 0;
  const std::size_t n = cps.size();
  while (i < n) {
    if (!unicode::is_letter(cps[i])) {
      ++i;
      continue;
    }
    std::string word;
    while (i < n) {
      if (unicode::is_letter(cps[i])) {
        unicode::append_utf8(unicode::to_lower(cps[i]), word);
        ++i;
      } else if (is_word_separator(cps[i]) && i + 1 < n && unicode::is_letter(cps[i + 1])) {
        unicode::append_utf8(cps[i] == 0x2019 ? '\'' : cps[i], word);
        ++i;
      } else {
        break;
      }
    }
    words.push_back(std::move(word));
  }
  return words;
}

std::size_t count_boundaries(const std::vector<Codepoint>& cps) {
  std::size_t boundaries = 0;
  std::size_t i = 0;
  const std::size_t n = cps.size();
  while (i < n) {
    if (!is_terminal(cps[i])) {
      ++i;
      continue;
    }
    while (i < n && is_terminal(cps[i])) ++i;  // maximal run
    if (i == n || unicode::is_whitespace(cps[i])) ++boundaries;
  }
  return boundaries;
}

std::size_t syllables_of(const std::vector<Codepoint>& word) {
  const std::size_t n = word.size();
  std::size_t groups = 0;
  bool in_group = false;
  for (Codepoint cp : word) {
    bool vowel = is_ascii_vowel(cp);
    if (vowel && !in_group) ++groups;
    in_group = vowel;
  }
  if (n > 2 && word[n - 1] == 'e' && !is_ascii_vowel(word[n - 2])) {
    // Trailing silent 'e', except consonant+"le" keeps its syllable.
    bool le_exception = word[n - 2] == 'l' && unicode::is_letter(word[n - 3]) &&
                        !is_ascii_vowel(word[n - 3]);
    if (!le_exception) --groups;
  }
  return groups > 0 ? groups : 1;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  return tokenize_codepoints(unicode::decode_utf8(text));
}

std::size_t segment_sentences(std::string_view text) {
  auto cps = unicode::decode_utf8(text);
  std::size_t boundaries = count_boundaries(cps);
  if (boundaries == 0) {
    for (Codepoint cp : cps) {
      if (unicode::is_letter(cp)) return 1;
    }
  }
  return boundaries;
}

std::size_t count_syllables(std::string_view word) {
  return syllables_of(unicode::decode_utf8(word));
}

TextStats compute_stats(std::string_view text) {
  auto cps = unicode::decode_utf8(text);
  bool all_space = true;
  for (Codepoint cp : cps) {
    if (!unicode::is_whitespace(cp)) {
      all_space = false;
      break;
    }
  }
  if (all_space) throw EmptyTextError();

  TextStats stats;
  stats.char_count = cps.size();
  for (Codepoint cp : cps) {
    if (unicode::is_letter(cp)) {
      ++stats.letter_count;
      if (unicode::is_uppercase(cp)) ++stats.uppercase_letter_count;
    }
    if (unicode::is_punctuation(cp)) ++stats.punct_count;
    switch (cp) {
      case '.': ++stats.period_count; break;
      case ',': ++stats.comma_count; break;
      case '!': ++stats.exclamation_count; break;
      case '?': ++stats.question_count; break;
      default: break;
    }
  }

  auto words = tokenize_codepoints(cps);
  stats.word_count = words.size();
  std::unordered_set<std::string_view> unique(words.begin(), words.end());
  stats.unique_word_count = unique.size();
  for (const auto& w : words) {
    std::size_t syllables = syllables_of(unicode::decode_utf8(w));
    stats.syllable_count += syllables;
    if (syllables >= 3) ++stats.polysyllable_count;
  }

  stats.sentence_count = count_boundaries(cps);
  if (stats.sentence_count == 0 && stats.word_count > 0) stats.sentence_count = 1;
  return stats;
}

}  // namespace stylo
