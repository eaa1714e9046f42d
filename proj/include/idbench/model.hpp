#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace idbench {

// True when `text` is a non-empty ASCII JavaScript identifier
// ([A-Za-z_$][A-Za-z0-9_$]*).
bool is_identifier(std::string_view text) noexcept;
bool is_identifier_start(char c) noexcept;
bool is_identifier_part(char c) noexcept;

class Identifier {
 public:
  // Throws ValidationError when `text` is not a valid identifier.
  explicit Identifier(std::string text);

  const std::string& text() const noexcept { return text_; }
  std::size_t size() const noexcept { return text_.size(); }

  friend bool operator==(const Identifier&, const Identifier&) = default;
  friend auto operator<=>(const Identifier&, const Identifier&) = default;

 private:
  std::string text_;
};

// Canonical join key: the lexicographically smaller identifier, '|', the other.
std::string make_pair_id(std::string_view a, std::string_view b);

struct IdentifierPair {
  Identifier id1;
  Identifier id2;
  std::string pair_id;

  // Throws ValidationError when id1 == id2. An empty `key` selects make_pair_id.
  IdentifierPair(Identifier first, Identifier second, std::string key = {});

  friend bool operator==(const IdentifierPair&, const IdentifierPair&) = default;
};

// Which identifier of a pair a field refers to.
enum class Side { first, second };

std::string_view to_string(Side side) noexcept;  // "id1" / "id2"
Side parse_side(std::string_view text);          // throws ValidationError

struct DirectRating {
  std::string participant;
  std::string pair_id;
  std::string id1;
  std::string id2;
  int relatedness = 0;  // Likert 1..5
  int similarity = 0;   // Likert 1..5

  friend bool operator==(const DirectRating&, const DirectRating&) = default;
};

struct IndirectRating {
  std::string participant;
  std::string pair_id;
  std::string id1;
  std::string id2;
  Side context_owner = Side::first;
  Side chosen = Side::first;

  friend bool operator==(const IndirectRating&, const IndirectRating&) = default;
};

struct GoldScore {
  IdentifierPair pair;
  double relatedness = 0.0;
  double similarity = 0.0;
  std::optional<double> contextual_similarity;
};

enum class Variant { small, medium, large, custom };

std::string_view to_string(Variant v) noexcept;

struct Benchmark {
  Variant variant = Variant::custom;
  double tau = 0.0;
  double theta = 0.0;
  std::vector<GoldScore> scores;
};

// Score-wise equality within `tol`; pair identity must match exactly.
bool approx_equal(const Benchmark& a, const Benchmark& b, double tol = 1e-6);

// Benchmark CSV. The reader is header driven: columns may appear in any order,
// unknown columns are ignored, and `identifier1`/`word1` style aliases of
// id1/id2 plus `contextual` for contextual_similarity are accepted.
Benchmark parse_benchmark_csv(std::istream& in);
void write_benchmark_csv(std::ostream& out, const Benchmark& bench);

std::vector<DirectRating> parse_direct_ratings(std::istream& in);
std::vector<IndirectRating> parse_indirect_ratings(std::istream& in);
void write_direct_ratings(std::ostream& out, const std::vector<DirectRating>& rows);
void write_indirect_ratings(std::ostream& out, const std::vector<IndirectRating>& rows);

// Placeholder that replaces every occurrence of the owner inside a context.
inline constexpr std::string_view kBlank = "____";

// A blanked occurrence: `column` indexes the blanked line (where kBlank starts),
// `length` is the length of the identifier that was removed.
struct BlankSlot {
  std::size_t line = 0;
  std::size_t column = 0;
  std::size_t length = 0;

  friend bool operator==(const BlankSlot&, const BlankSlot&) = default;
};

struct CodeContext {
  std::string owner;
  std::array<std::string, 5> lines;
  std::vector<BlankSlot> blanks;

  friend bool operator==(const CodeContext&, const CodeContext&) = default;
};

// Re-fills every blank with the owner. Throws ValidationError when a slot
// does not point at kBlank.
std::array<std::string, 5> reconstruct(const CodeContext& ctx);

std::vector<CodeContext> parse_contexts_jsonl(std::istream& in);
void write_contexts_jsonl(std::ostream& out, const std::vector<CodeContext>& contexts);

}  // namespace idbench
