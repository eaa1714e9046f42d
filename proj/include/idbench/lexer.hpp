#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Error-tolerant JavaScript lexer that reports identifier occurrences with a
// coarse syntactic role. Comments, string literals, the text parts of
// template literals and regular expression literals never produce
// identifiers; `${...}` substitutions are lexed as code.
namespace idbench::miner {

enum class Role { function, variable, property, other };

std::string_view to_string(Role role) noexcept;

struct Occurrence {
  std::string name;
  Role role = Role::other;
  std::size_t offset = 0;  // byte offset in the source
  std::size_t line = 0;    // 0-based
  std::size_t column = 0;  // 0-based byte column
};

// Roles, first matching rule wins:
//   function  preceded by `function` or followed by `(`
//   property  preceded by `.` / `?.` / `#`, or an object key (`{` or `,`
//             before, `:` after)
//   other     preceded by `class`, `import`, `export`, `as`, `break`, `continue`
//   variable  everything else, including after `var` / `let` / `const`
// Keywords are skipped unless used as a property name. Regex literals are
// recognised with the previous-significant-token heuristic. Unterminated
// strings and regexes end at the line end; unterminated comments and template
// literals run to the end of input.
std::vector<Occurrence> lex_identifiers(std::string_view source);

bool is_keyword(std::string_view word) noexcept;

}  // namespace idbench::miner
