#include "stylo/unicode.hpp"

#include <algorithm>

namespace stylo::unicode {

namespace {

struct CodepointRange {
  Codepoint lo;
  Codepoint hi;
};

struct LowercasePair {
  Codepoint cp;
  Codepoint lower;
};

#include "unicode_tables.inc"

template <std::size_t N>
bool in_ranges(const CodepointRange (&ranges)[N], Codepoint cp) {
  auto it = std::upper_bound(std::begin(ranges), std::end(ranges), cp,
                             [](Codepoint c, const CodepointRange& r) { return c < r.lo; });
  return it != std::begin(ranges) && cp <= std::prev(it)->hi;
}

constexpr Codepoint kReplacement = 0xFFFD;

}  // namespace

std::vector<Codepoint> decode_utf8(std::string_view text) {
  std::vector<Codepoint> out;
  out.reserve(text.size());
  std::size_t i = 0;
  const auto n = text.size();
  while (i < n) {
    auto b0 = static_cast<unsigned char>(text[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    int len = 0;
    Codepoint cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + len > n) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k < len; ++k) {
      auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong forms, surrogates and out-of-range values.
    static constexpr Codepoint kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (!ok || cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void append_utf8(Codepoint cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_letter(Codepoint cp) { return in_ranges(kLetterRanges, cp); }

bool is_uppercase(Codepoint cp) { return in_ranges(kUppercaseRanges, cp); }

bool is_punctuation(Codepoint cp) { return in_ranges(kPunctuationRanges, cp); }

bool is_whitespace(Codepoint cp) { return in_ranges(kWhitespaceRanges, cp); }

Codepoint to_lower(Codepoint cp) {
  auto it = std::lower_bound(std::begin(kLowercasePairs), std::end(kLowercasePairs), cp,
                             [](const LowercasePair& p, Codepoint c) { return p.cp < c; });
  if (it != std::end(kLowercasePairs) && it->cp == cp) return it->lower;
  return cp;
}

}  // namespace stylo::unicode
