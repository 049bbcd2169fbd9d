#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stylo::unicode {

using Codepoint = std::uint32_t;

/// Decodes UTF-8 into Unicode scalar values. Invalid byte sequences decode to
/// U+FFFD and resynchronize at the next lead byte.
std::vector<Codepoint> decode_utf8(std::string_view text);

/// Appends the UTF-8 encoding of `cp` to `out`.
void append_utf8(Codepoint cp, std::string& out);

bool is_letter(Codepoint cp);       // Unicode general category L*
bool is_uppercase(Codepoint cp);    // Lu
bool is_punctuation(Codepoint cp);  // P*
bool is_whitespace(Codepoint cp);   // Zs/Zl/Zp plus ASCII controls

/// One-to-one simple lowercase mapping; identity where none exists.
Codepoint to_lower(Codepoint cp);

}  // namespace stylo::unicode
