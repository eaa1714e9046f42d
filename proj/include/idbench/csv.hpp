#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

// Minimal CSV helpers shared by the file readers. Fields may be wrapped in
// double quotes ("" escapes a quote); lines end in \n with optional \r.
namespace idbench::csv {

std::vector<std::string> split_line(std::string_view line, std::size_t line_no);

// Calls `row` for every non-blank line after the header with the 1-based line
// number. Throws ParseError when the header is missing.
void for_each_row(std::istream& in,
                  const std::function<void(const std::vector<std::string>& header)>& on_header,
                  const std::function<void(const std::vector<std::string>& fields,
                                           std::size_t line_no)>& row);

// Quotes a field only when it contains a comma, quote or newline.
std::string escape(std::string_view field);

// Fixed six-decimal rendering used by every writer.
std::string format_score(double value);

double parse_real(std::string_view text, std::size_t line_no, std::string_view what);
int parse_int(std::string_view text, std::size_t line_no, std::string_view what);

}  // namespace idbench::csv
