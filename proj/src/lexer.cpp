#include "idbench/lexer.hpp"

#include <algorithm>
#include <array>

#include "idbench/model.hpp"

namespace idbench::miner {

std::string_view to_string(Role role) noexcept {
  switch (role) {
    case Role::function: return "function";
    case Role::variable: return "variable";
    case Role::property: return "property";
    case Role::other: break;
  }
  return "other";
}

bool is_keyword(std::string_view word) noexcept {
  static constexpr std::array<std::string_view, 45> kKeywords = {
      "await",  "break",    "case",     "catch",      "class",     "const",   "continue",
      "debugger", "default", "delete",  "do",         "else",      "enum",    "export",
      "extends", "false",   "finally",  "for",        "function",  "if",      "implements",
      "import", "in",       "instanceof", "interface", "let",      "new",     "null",
      "of",     "package",  "private",  "protected",  "public",    "return",  "static",
      "super",  "switch",   "this",     "throw",      "true",      "try",     "typeof",
      "var",    "void",     "while"};
  if (word == "with" || word == "yield") return true;
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

namespace {

enum class Kind { ident, keyword, punct, number, string, templ, regex, junk };

struct Token {
  Kind kind;
  std::string_view text;
  std::size_t offset;
  bool private_name = false;
};

bool ident_byte(unsigned char c) {
  return is_identifier_part(static_cast<char>(c)) || c >= 0x80 || c == '\\';
}

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::size_t i = 0;
    const std::size_t n = src_.size();
    if (src_.substr(0, 2) == "#!") i = line_end(0);
    while (i < n) {
      const unsigned char c = static_cast<unsigned char>(src_[i]);
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
        ++i;
      } else if (c == '/' && peek(i + 1) == '/') {
        i = line_end(i);
      } else if (c == '/' && peek(i + 1) == '*') {
        std::size_t close = src_.find("*/", i + 2);
        i = close == std::string_view::npos ? n : close + 2;
      } else if (c == '<' && src_.substr(i, 4) == "<!--") {
        i = line_end(i);
      } else if (c == '\'' || c == '"') {
        i = scan_string(i);
      } else if (c == '`') {
        i = scan_template(i, i + 1);
      } else if (c == '#' && i + 1 < n && is_identifier_start(src_[i + 1])) {
        std::size_t end = scan_word(i + 1);
        emit_word(i + 1, end, /*private_name=*/true);
        i = end;
      } else if (is_identifier_start(static_cast<char>(c)) || c >= 0x80 || c == '\\') {
        std::size_t end = scan_word(i);
        emit_word(i, end, false);
        i = end;
      } else if ((c >= '0' && c <= '9') || (c == '.' && is_digit(peek(i + 1)))) {
        i = scan_number(i);
      } else if (c == '/') {
        i = regex_allowed() ? scan_regex(i) : punct(i, 1);
      } else if (c == '?' && peek(i + 1) == '.' && !is_digit(peek(i + 2))) {
        i = punct(i, 2);
      } else if (c == '.' && src_.substr(i, 3) == "...") {
        i = punct(i, 3);
      } else if (c == '{') {
        if (!templates_.empty()) ++templates_.back();
        i = punct(i, 1);
      } else if (c == '}') {
        if (!templates_.empty() && templates_.back() == 0) {
          templates_.pop_back();
          i = scan_template(i, i + 1);
        } else {
          if (!templates_.empty()) --templates_.back();
          i = punct(i, 1);
        }
      } else {
        i = punct(i, 1);
      }
    }
    return std::move(tokens_);
  }

 private:
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  char peek(std::size_t i) const { return i < src_.size() ? src_[i] : '\0'; }

  std::size_t line_end(std::size_t i) const {
    std::size_t nl = src_.find('\n', i);
    return nl == std::string_view::npos ? src_.size() : nl;
  }

  std::size_t punct(std::size_t i, std::size_t len) {
    tokens_.push_back({Kind::punct, src_.substr(i, len), i});
    return i + len;
  }

  std::size_t scan_word(std::size_t i) const {
    while (i < src_.size() && ident_byte(static_cast<unsigned char>(src_[i]))) {
      if (src_[i] == '\\' && i + 1 < src_.size()) ++i;
      ++i;
    }
    return i;
  }

  void emit_word(std::size_t begin, std::size_t end, bool private_name) {
    std::string_view word = src_.substr(begin, end - begin);
    Kind kind = Kind::ident;
    if (!is_identifier(word)) {
      kind = Kind::junk;  // non-ASCII or escaped: outside the supported grammar
    } else if (!private_name && is_keyword(word) && !after_member_access()) {
      kind = Kind::keyword;
    }
    tokens_.push_back({kind, word, begin, private_name});
  }

  bool after_member_access() const {
    return !tokens_.empty() && tokens_.back().kind == Kind::punct &&
           (tokens_.back().text == "." || tokens_.back().text == "?.");
  }

  std::size_t scan_number(std::size_t i) {
    const std::size_t begin = i;
    const bool hex = src_[i] == '0' && (peek(i + 1) == 'x' || peek(i + 1) == 'X');
    while (i < src_.size()) {
      char c = src_[i];
      if (is_identifier_part(c) || c == '.') {
        ++i;
      } else if ((c == '+' || c == '-') && !hex && i > begin &&
                 (src_[i - 1] == 'e' || src_[i - 1] == 'E')) {
        ++i;
      } else {
        break;
      }
    }
    tokens_.push_back({Kind::number, src_.substr(begin, i - begin), begin});
    return i;
  }

  std::size_t scan_string(std::size_t i) {
    const std::size_t begin = i;
    const char quote = src_[i++];
    while (i < src_.size()) {
      char c = src_[i];
      if (c == '\\') {
        i += 2;
      } else if (c == quote) {
        ++i;
        break;
      } else if (c == '\n') {
        break;  // unterminated
      } else {
        ++i;
      }
    }
    i = std::min(i, src_.size());
    tokens_.push_back({Kind::string, src_.substr(begin, i - begin), begin});
    return i;
  }

  // Scans template text from `i` until the closing backtick or a `${`.
  std::size_t scan_template(std::size_t begin, std::size_t i) {
    while (i < src_.size()) {
      char c = src_[i];
      if (c == '\\') {
        i += 2;
      } else if (c == '`') {
        ++i;
        break;
      } else if (c == '$' && peek(i + 1) == '{') {
        i += 2;
        templates_.push_back(0);
        break;
      } else {
        ++i;
      }
    }
    i = std::min(i, src_.size());
    tokens_.push_back({Kind::templ, src_.substr(begin, i - begin), begin});
    return i;
  }

  bool regex_allowed() const {
    if (tokens_.empty()) return true;
    const Token& t = tokens_.back();
    switch (t.kind) {
      case Kind::punct:
        return t.text != ")" && t.text != "]";
      case Kind::keyword:
        return t.text != "this" && t.text != "super" && t.text != "null" && t.text != "true" &&
               t.text != "false";
      default:
        return false;
    }
  }

  std::size_t scan_regex(std::size_t i) {
    const std::size_t begin = i++;
    bool in_class = false;
    while (i < src_.size()) {
      char c = src_[i];
      if (c == '\n') break;  // unterminated
      if (c == '\\') {
        i += 2;
        continue;
      }
      ++i;
      if (c == '[') in_class = true;
      else if (c == ']') in_class = false;
      else if (c == '/' && !in_class) {
        while (i < src_.size() && is_identifier_part(src_[i])) ++i;  // flags
        break;
      }
    }
    i = std::min(i, src_.size());
    tokens_.push_back({Kind::regex, src_.substr(begin, i - begin), begin});
    return i;
  }

  std::string_view src_;
  std::vector<Token> tokens_;
  std::vector<int> templates_;  // open `${` depth per nested template
};

bool is_punct(const Token* t, std::string_view text) {
  return t && t->kind == Kind::punct && t->text == text;
}

bool is_word(const Token* t, std::string_view text) {
  return t && (t->kind == Kind::keyword || t->kind == Kind::ident) && t->text == text;
}

Role classify(const Token* prev2, const Token* prev, const Token& tok, const Token* next) {
  if (is_word(prev, "function") || (is_punct(prev, "*") && is_word(prev2, "function")))
    return Role::function;
  if (is_punct(next, "(")) return Role::function;
  if (tok.private_name || is_punct(prev, ".") || is_punct(prev, "?.")) return Role::property;
  if (is_punct(next, ":") && (is_punct(prev, "{") || is_punct(prev, ","))) return Role::property;
  for (std::string_view kw : {"class", "import", "export", "as", "break", "continue"}) {
    if (is_word(prev, kw)) return Role::other;
  }
  return Role::variable;
}

}  // namespace

std::vector<Occurrence> lex_identifiers(std::string_view source) {
  std::vector<Token> tokens = Tokenizer(source).run();

  std::vector<std::size_t> line_starts{0};
  for (std::size_t i = 0; i < source.size(); ++i)
    if (source[i] == '\n') line_starts.push_back(i + 1);

  std::vector<Occurrence> out;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const Token& tok = tokens[t];
    if (tok.kind != Kind::ident) continue;
    const Token* prev = t > 0 ? &tokens[t - 1] : nullptr;
    const Token* prev2 = t > 1 ? &tokens[t - 2] : nullptr;
    const Token* next = t + 1 < tokens.size() ? &tokens[t + 1] : nullptr;
    auto line_it = std::upper_bound(line_starts.begin(), line_starts.end(), tok.offset) - 1;
    Occurrence occ;
    occ.name = std::string(tok.text);
    occ.role = classify(prev2, prev, tok, next);
    occ.offset = tok.offset;
    occ.line = static_cast<std::size_t>(line_it - line_starts.begin());
    occ.column = tok.offset - *line_it;
    out.push_back(std::move(occ));
  }
  return out;
}

}  // namespace idbench::miner
