#include "idbench/tokenize.hpp"

#include <cctype>

namespace idbench {

namespace {

bool upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<std::string> tokenize_identifier(std::string_view id) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (std::size_t i = 0; i < id.size(); ++i) {
    const char c = id[i];
    if (c == '_' || c == '$') {
      flush();
      continue;
    }
    if (upper(c) && i > 0) {
      const char prev = id[i - 1];
      const bool next_lower = i + 1 < id.size() && lower(id[i + 1]);
      // "aB" and the "R" of "XMLRequest" both open a new subtoken.
      if (lower(prev) || digit(prev) || (upper(prev) && next_lower)) flush();
    }
    cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  flush();
  return out;
}

}  // namespace idbench
