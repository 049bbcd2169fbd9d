#include "stylo/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <vector>

#include "stylo/errors.hpp"
#include "stylo/unicode.hpp"

namespace stylo {

namespace {

std::optional<Emotion> parse_category(std::string_view name) {
  for (std::size_t i = 0; i < kEmotionCount; ++i) {
    if (kEmotionNames[i] == name) return static_cast<Emotion>(i);
  }
  return std::nullopt;
}

std::string lowercased(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  for (auto cp : unicode::decode_utf8(word)) {
    unicode::append_utf8(unicode::to_lower(cp), out);
  }
  return out;
}

}  // namespace

EmotionLexicon EmotionLexicon::load(std::istream& in) {
  EmotionLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    auto tab1 = line.find('\t');
    auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos ||
        line.find('\t', tab2 + 1) != std::string::npos) {
      throw MalformedLineError(line_no, "expected 'word<TAB>category<TAB>flag'");
    }
    std::string word = line.substr(0, tab1);
    std::string category = line.substr(tab1 + 1, tab2 - tab1 - 1);
    std::string flag = line.substr(tab2 + 1);

    auto emotion = parse_category(category);
    if (!emotion) throw MalformedLineError(line_no, "unknown category '" + category + "'");
    if (flag != "0" && flag != "1") {
      throw MalformedLineError(line_no, "flag must be 0 or 1, got '" + flag + "'");
    }
    if (flag == "1") {
      lexicon.entries_[lowercased(word)].set(static_cast<std::size_t>(*emotion));
    }
  }
  return lexicon;
}

EmotionLexicon EmotionLexicon::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open lexicon file '" + path + "'");
  return load(in);
}

EmotionSet EmotionLexicon::emotions_of(std::string_view word) const {
  auto it = entries_.find(lowercased(word));
  if (it == entries_.end()) return {};
  return it->second;
}

std::vector<std::string> EmotionLexicon::words_with(Emotion category) const {
  std::vector<std::string> words;
  for (const auto& [word, set] : entries_) {
    if (set.test(static_cast<std::size_t>(category))) words.push_back(word);
  }
  std::sort(words.begin(), words.end());
  return words;
}

}  // namespace stylo
