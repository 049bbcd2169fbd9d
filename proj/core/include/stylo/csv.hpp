#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace stylo::csv {

/// RFC-4180 record reader: quoted fields, doubled-quote escapes, embedded
/// newlines, LF or CRLF. Returns std::nullopt at end of input.
std::optional<std::vector<std::string>> read_record(std::istream& in);

/// Writes one record, quoting fields that contain commas, quotes or newlines.
void write_record(std::ostream& out, const std::vector<std::string>& fields);

/// Shortest decimal representation of `value` that round-trips to the same
/// double. Used everywhere floats are serialized so reports are bit-stable.
std::string format_double(double value);

}  // namespace stylo::csv
