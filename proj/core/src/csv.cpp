#include "stylo/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>

namespace stylo::csv {

std::optional<std::vector<std::string>> read_record(std::istream& in) {
  int first = in.peek();
  if (first == std::char_traits<char>::eof()) return std::nullopt;

  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  char c;
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field.empty()) {
          quoted = true;
        } else {
          field.push_back(c);  // stray quote inside an unquoted field, keep it
        }
        break;
      case ',':
        fields.push_back(std::move(field));
        field.clear();
        break;
      case '\r':
        if (in.peek() == '\n') in.get(c);
        [[fallthrough]];
      case '\n':
        fields.push_back(std::move(field));
        return fields;
      default:
        field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

void write_record(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.put(',');
    const std::string& f = fields[i];
    bool needs_quotes = f.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) {
      out << f;
      continue;
    }
    out.put('"');
    for (char c : f) {
      if (c == '"') out.put('"');
      out.put(c);
    }
    out.put('"');
  }
  out.put('\n');
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace stylo::csv
