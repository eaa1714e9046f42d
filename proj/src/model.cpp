#include "idbench/model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>

#include <json.hpp>

#include "idbench/csv.hpp"
#include "idbench/errors.hpp"

namespace idbench {

bool is_identifier_start(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
}

bool is_identifier_part(char c) noexcept {
  return is_identifier_start(c) || (c >= '0' && c <= '9');
}

bool is_identifier(std::string_view text) noexcept {
  if (text.empty() || !is_identifier_start(text.front())) return false;
  return std::all_of(text.begin(), text.end(), is_identifier_part);
}

Identifier::Identifier(std::string text) : text_(std::move(text)) {
  if (!is_identifier(text_)) throw ValidationError("invalid identifier '" + text_ + "'");
}

std::string make_pair_id(std::string_view a, std::string_view b) {
  if (b < a) std::swap(a, b);
  std::string key;
  key.reserve(a.size() + b.size() + 1);
  key.append(a).push_back('|');
  key.append(b);
  return key;
}

IdentifierPair::IdentifierPair(Identifier first, Identifier second, std::string key)
    : id1(std::move(first)), id2(std::move(second)), pair_id(std::move(key)) {
  if (id1 == id2) throw ValidationError("pair of identical identifiers '" + id1.text() + "'");
  if (pair_id.empty()) pair_id = make_pair_id(id1.text(), id2.text());
}

std::string_view to_string(Side side) noexcept {
  return side == Side::first ? "id1" : "id2";
}

Side parse_side(std::string_view text) {
  if (text == "id1") return Side::first;
  if (text == "id2") return Side::second;
  throw ValidationError("expected 'id1' or 'id2', got '" + std::string(text) + "'");
}

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::small: return "small";
    case Variant::medium: return "medium";
    case Variant::large: return "large";
    case Variant::custom: break;
  }
  return "custom";
}

bool approx_equal(const Benchmark& a, const Benchmark& b, double tol) {
  if (a.scores.size() != b.scores.size()) return false;
  for (std::size_t i = 0; i < a.scores.size(); ++i) {
    const GoldScore& x = a.scores[i];
    const GoldScore& y = b.scores[i];
    if (!(x.pair == y.pair)) return false;
    if (std::fabs(x.relatedness - y.relatedness) > tol) return false;
    if (std::fabs(x.similarity - y.similarity) > tol) return false;
    if (x.contextual_similarity.has_value() != y.contextual_similarity.has_value()) return false;
    if (x.contextual_similarity &&
        std::fabs(*x.contextual_similarity - *y.contextual_similarity) > tol)
      return false;
  }
  return true;
}

namespace {

double unit_score(std::string_view text, std::size_t line_no, std::string_view what) {
  double v = csv::parse_real(text, line_no, what);
  if (v < 0.0 || v > 1.0)
    throw ValidationError("line " + std::to_string(line_no) + ": " + std::string(what) +
                          " " + std::string(text) + " outside [0,1]");
  return v;
}

// Maps header names onto column indices, accepting a few aliases.
struct BenchmarkColumns {
  int id1 = -1, id2 = -1, relatedness = -1, similarity = -1, contextual = -1;

  explicit BenchmarkColumns(const std::vector<std::string>& header) {
    for (int i = 0; i < static_cast<int>(header.size()); ++i) {
      std::string name = header[i];
      std::transform(name.begin(), name.end(), name.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (name == "id1" || name == "identifier1" || name == "word1") id1 = i;
      else if (name == "id2" || name == "identifier2" || name == "word2") id2 = i;
      else if (name == "relatedness") relatedness = i;
      else if (name == "similarity") similarity = i;
      else if (name == "contextual_similarity" || name == "contextual") contextual = i;
    }
    if (id1 < 0 || id2 < 0 || relatedness < 0 || similarity < 0)
      throw ParseError("benchmark header lacks id1, id2, relatedness or similarity", 1);
  }
};

const std::string& field_at(const std::vector<std::string>& fields, int index,
                            std::size_t line_no) {
  if (index < 0 || static_cast<std::size_t>(index) >= fields.size())
    throw ParseError("expected at least " + std::to_string(index + 1) + " fields", line_no);
  return fields[static_cast<std::size_t>(index)];
}

void expect_header(const std::vector<std::string>& header,
                   const std::vector<std::string>& expected) {
  if (header != expected) {
    std::string joined;
    for (const auto& name : expected) joined += (joined.empty() ? "" : ",") + name;
    throw ParseError("expected header '" + joined + "'", 1);
  }
}

void expect_width(const std::vector<std::string>& fields, std::size_t n, std::size_t line_no) {
  if (fields.size() != n)
    throw ParseError("expected " + std::to_string(n) + " fields, got " +
                     std::to_string(fields.size()), line_no);
}

int likert(std::string_view text, std::size_t line_no, std::string_view what) {
  int v = csv::parse_int(text, line_no, what);
  if (v < 1 || v > 5)
    throw ValidationError("line " + std::to_string(line_no) + ": " + std::string(what) +
                          " " + std::to_string(v) + " outside Likert range 1-5");
  return v;
}

const std::vector<std::string> kDirectHeader = {"participant", "pair_id", "id1",
                                                "id2", "relatedness", "similarity"};
const std::vector<std::string> kIndirectHeader = {"participant", "pair_id", "id1",
                                                  "id2", "context_owner", "chosen"};

}  // namespace

Benchmark parse_benchmark_csv(std::istream& in) {
  Benchmark bench;
  std::optional<BenchmarkColumns> cols;
  std::map<std::string, std::size_t> seen;
  csv::for_each_row(
      in, [&](const std::vector<std::string>& header) { cols.emplace(header); },
      [&](const std::vector<std::string>& f, std::size_t line_no) {
        Identifier a = [&] {
          try {
            return Identifier(field_at(f, cols->id1, line_no));
          } catch (const ValidationError& e) {
            throw ParseError(e.what(), line_no);
          }
        }();
        Identifier b = [&] {
          try {
            return Identifier(field_at(f, cols->id2, line_no));
          } catch (const ValidationError& e) {
            throw ParseError(e.what(), line_no);
          }
        }();
        if (a == b) throw ParseError("pair of identical identifiers", line_no);
        GoldScore g{IdentifierPair(std::move(a), std::move(b)), 0.0, 0.0, std::nullopt};
        if (!seen.emplace(g.pair.pair_id, line_no).second)
          throw ValidationError("line " + std::to_string(line_no) + ": duplicate pair " +
                                g.pair.pair_id);
        g.relatedness = unit_score(field_at(f, cols->relatedness, line_no), line_no, "relatedness");
        g.similarity = unit_score(field_at(f, cols->similarity, line_no), line_no, "similarity");
        if (cols->contextual >= 0 && static_cast<std::size_t>(cols->contextual) < f.size() &&
            !f[static_cast<std::size_t>(cols->contextual)].empty()) {
          g.contextual_similarity = unit_score(f[static_cast<std::size_t>(cols->contextual)],
                                               line_no, "contextual_similarity");
        }
        bench.scores.push_back(std::move(g));
      });
  return bench;
}

void write_benchmark_csv(std::ostream& out, const Benchmark& bench) {
  out << "id1,id2,relatedness,similarity,contextual_similarity\n";
  for (const GoldScore& g : bench.scores) {
    out << g.pair.id1.text() << ',' << g.pair.id2.text() << ','
        << csv::format_score(g.relatedness) << ',' << csv::format_score(g.similarity) << ',';
    if (g.contextual_similarity) out << csv::format_score(*g.contextual_similarity);
    out << '\n';
  }
}

std::vector<DirectRating> parse_direct_ratings(std::istream& in) {
  std::vector<DirectRating> rows;
  csv::for_each_row(
      in, [](const std::vector<std::string>& h) { expect_header(h, kDirectHeader); },
      [&](const std::vector<std::string>& f, std::size_t line_no) {
        expect_width(f, 6, line_no);
        DirectRating r{f[0], f[1], f[2], f[3], likert(f[4], line_no, "relatedness"),
                       likert(f[5], line_no, "similarity")};
        if (r.pair_id.empty()) r.pair_id = make_pair_id(r.id1, r.id2);
        rows.push_back(std::move(r));
      });
  return rows;
}

std::vector<IndirectRating> parse_indirect_ratings(std::istream& in) {
  std::vector<IndirectRating> rows;
  csv::for_each_row(
      in, [](const std::vector<std::string>& h) { expect_header(h, kIndirectHeader); },
      [&](const std::vector<std::string>& f, std::size_t line_no) {
        expect_width(f, 6, line_no);
        IndirectRating r;
        r.participant = f[0];
        r.pair_id = f[1].empty() ? make_pair_id(f[2], f[3]) : f[1];
        r.id1 = f[2];
        r.id2 = f[3];
        try {
          r.context_owner = parse_side(f[4]);
          r.chosen = parse_side(f[5]);
        } catch (const ValidationError& e) {
          throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
        rows.push_back(std::move(r));
      });
  return rows;
}

void write_direct_ratings(std::ostream& out, const std::vector<DirectRating>& rows) {
  out << "participant,pair_id,id1,id2,relatedness,similarity\n";
  for (const auto& r : rows) {
    out << csv::escape(r.participant) << ',' << csv::escape(r.pair_id) << ',' << r.id1 << ','
        << r.id2 << ',' << r.relatedness << ',' << r.similarity << '\n';
  }
}

void write_indirect_ratings(std::ostream& out, const std::vector<IndirectRating>& rows) {
  out << "participant,pair_id,id1,id2,context_owner,chosen\n";
  for (const auto& r : rows) {
    out << csv::escape(r.participant) << ',' << csv::escape(r.pair_id) << ',' << r.id1 << ','
        << r.id2 << ',' << to_string(r.context_owner) << ',' << to_string(r.chosen) << '\n';
  }
}

std::array<std::string, 5> reconstruct(const CodeContext& ctx) {
  std::array<std::string, 5> lines = ctx.lines;
  std::vector<BlankSlot> slots = ctx.blanks;
  // Right to left so earlier columns stay valid.
  std::sort(slots.begin(), slots.end(), [](const BlankSlot& a, const BlankSlot& b) {
    return a.line != b.line ? a.line < b.line : a.column > b.column;
  });
  for (const BlankSlot& s : slots) {
    if (s.line >= lines.size() || lines[s.line].compare(s.column, kBlank.size(), kBlank) != 0)
      throw ValidationError("blank slot does not point at a blank");
    if (s.length != ctx.owner.size())
      throw ValidationError("blank slot length differs from owner length");
    lines[s.line].replace(s.column, kBlank.size(), ctx.owner);
  }
  return lines;
}

std::vector<CodeContext> parse_contexts_jsonl(std::istream& in) {
  std::vector<CodeContext> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      CodeContext ctx;
      ctx.owner = j.at("owner").get<std::string>();
      const auto& lines = j.at("lines");
      if (!lines.is_array() || lines.size() != 5)
        throw ParseError("context must have exactly 5 lines", line_no);
      for (std::size_t i = 0; i < 5; ++i) ctx.lines[i] = lines[i].get<std::string>();
      for (const auto& b : j.at("blanks")) {
        if (!b.is_array() || b.size() != 3) throw ParseError("blank must be [line,col,len]", line_no);
        ctx.blanks.push_back({b[0].get<std::size_t>(), b[1].get<std::size_t>(),
                              b[2].get<std::size_t>()});
      }
      if (ctx.blanks.empty()) throw ParseError("context without blanks", line_no);
      if (!is_identifier(ctx.owner)) throw ParseError("invalid owner identifier", line_no);
      out.push_back(std::move(ctx));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return out;
}

void write_contexts_jsonl(std::ostream& out, const std::vector<CodeContext>& contexts) {
  for (const auto& ctx : contexts) {
    nlohmann::json blanks = nlohmann::json::array();
    for (const auto& b : ctx.blanks) blanks.push_back({b.line, b.column, b.length});
    nlohmann::json j = {{"owner", ctx.owner}, {"lines", ctx.lines}, {"blanks", blanks}};
    out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  }
}

}  // namespace idbench
