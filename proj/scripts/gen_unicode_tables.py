#!/usr/bin/env python3
"""Regenerates core/src/unicode_tables.inc from Python's unicodedata.

Emits sorted code point ranges for the letter (L*), uppercase letter (Lu),
punctuation (P*) and whitespace (Zs/Zl/Zp + ASCII controls) classes, plus a
one-to-one simple lowercase mapping table. Run from the repository root:

    python3 scripts/gen_unicode_tables.py > core/src/unicode_tables.inc
"""

import sys
import unicodedata

MAX_CP = 0x110000


def ranges_for(predicate):
    out = []
    start = None
    for cp in range(MAX_CP):
        if predicate(cp):
            if start is None:
                start = cp
        elif start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, MAX_CP - 1))
    return out


def cat(cp):
    return unicodedata.category(chr(cp))


def emit_ranges(name, ranges, out):
    out.write(f"inline constexpr CodepointRange {name}[] = {{\n")
    for i in range(0, len(ranges), 6):
        row = ", ".join(f"{{0x{lo:X}, 0x{hi:X}}}" for lo, hi in ranges[i : i + 6])
        out.write(f"    {row},\n")
    out.write("};\n\n")


def main(out):
    letters = ranges_for(lambda cp: cat(cp).startswith("L"))
    upper = ranges_for(lambda cp: cat(cp) == "Lu")
    punct = ranges_for(lambda cp: cat(cp).startswith("P"))
    space = ranges_for(
        lambda cp: cat(cp) in ("Zs", "Zl", "Zp") or cp in (0x09, 0x0A, 0x0B, 0x0C, 0x0D, 0x85)
    )

    lower_map = []
    for cp in range(MAX_CP):
        if not cat(cp).startswith("L"):
            continue
        low = chr(cp).lower()
        if len(low) == 1 and ord(low) != cp:
            lower_map.append((cp, ord(low)))

    out.write("// Generated by scripts/gen_unicode_tables.py"
              f" (Unicode {unicodedata.unidata_version}). Do not edit.\n\n")
    emit_ranges("kLetterRanges", letters, out)
    emit_ranges("kUppercaseRanges", upper, out)
    emit_ranges("kPunctuationRanges", punct, out)
    emit_ranges("kWhitespaceRanges", space, out)

    out.write("inline constexpr LowercasePair kLowercasePairs[] = {\n")
    for i in range(0, len(lower_map), 6):
        row = ", ".join(f"{{0x{cp:X}, 0x{lo:X}}}" for cp, lo in lower_map[i : i + 6])
        out.write(f"    {row},\n")
    out.write("};\n")


if __name__ == "__main__":
    main(sys.stdout)
