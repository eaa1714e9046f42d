#include "idbench/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>

#include "idbench/errors.hpp"

namespace idbench::csv {

std::vector<std::string> split_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_no);
  fields.push_back(std::move(field));
  return fields;
}

void for_each_row(std::istream& in,
                  const std::function<void(const std::vector<std::string>&)>& on_header,
                  const std::function<void(const std::vector<std::string>&, std::size_t)>& row) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_line(line, line_no);
    if (!have_header) {
      on_header(fields);
      have_header = true;
      continue;
    }
    row(fields, line_no);
  }
  if (!have_header) throw ParseError("missing header line", 1);
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_score(double value) {
  char buf[64];
  // Avoid "-0.000000" for tiny negatives that round to zero.
  if (std::fabs(value) < 5e-7) value = 0.0;
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

double parse_real(std::string_view text, std::size_t line_no, std::string_view what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError("invalid " + std::string(what) + " '" + std::string(text) + "'", line_no);
  if (!std::isfinite(value))
    throw ParseError("non-finite " + std::string(what), line_no);
  return value;
}

int parse_int(std::string_view text, std::size_t line_no, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError("invalid " + std::string(what) + " '" + std::string(text) + "'", line_no);
  return value;
}

}  // namespace idbench::csv
