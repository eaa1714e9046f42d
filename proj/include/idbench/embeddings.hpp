#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "idbench/model.hpp"

namespace idbench::embed {

using Vector = std::vector<double>;

// Character n-gram vectors used to compose vectors for tokens.
// With `buckets == 0` the table is keyed by the n-gram text; otherwise by
// "#<FNV-1a(ngram) mod buckets>".
struct NgramTable {
  std::size_t min_n = 3;
  std::size_t max_n = 6;
  std::uint64_t buckets = 0;
  std::unordered_map<std::string, Vector> vectors;
};

// Token -> dense vector map. Words keep their insertion order.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }

  // Throws ValidationError on a dimension mismatch or duplicate token.
  void add(std::string token, Vector vec);
  // Throws ValidationError on a bad n-gram range or dimension mismatch.
  void set_ngrams(NgramTable table);

  const Vector* find(std::string_view token) const;
  bool has_ngrams() const noexcept { return ngrams_.has_value(); }
  const NgramTable* ngrams() const noexcept { return ngrams_ ? &*ngrams_ : nullptr; }

 private:
  std::size_t dim_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Vector> vectors_;
  std::optional<NgramTable> ngrams_;
};

// word2vec text format: "V D" header then V lines "token f1 ... fD".
EmbeddingStore load_vectors(std::istream& in);
void save_vectors(std::ostream& out, const EmbeddingStore& store);

// N-gram companion file: "N D MIN MAX [BUCKETS]" header, then N vector lines.
NgramTable load_ngram_vectors(std::istream& in, std::size_t dim);
void save_ngram_vectors(std::ostream& out, const NgramTable& table, std::size_t dim);

// Convenience: loads `path` and, when present, `path + ".ngrams"`.
EmbeddingStore load_vectors_file(const std::string& path);
void save_vectors_file(const std::string& path, const EmbeddingStore& store);

// Throws ValidationError on a dimension mismatch and UndefinedError when
// either vector is all zero.
double cosine(std::span<const double> u, std::span<const double> v);

std::uint64_t fnv1a(std::string_view text) noexcept;

// All substrings of "<token>" with length in [min_n, max_n], left to right,
// shorter first at each start position.
std::vector<std::string> char_ngrams(std::string_view token, std::size_t min_n, std::size_t max_n);

// Key under which an n-gram is stored in `table`.
std::string ngram_key(const NgramTable& table, std::string_view ngram);

// Stored vector, else the sum of the known n-gram vectors of the token.
// Throws OovError when neither exists.
Vector vector_for(const EmbeddingStore& store, std::string_view token);
std::optional<Vector> try_vector_for(const EmbeddingStore& store, std::string_view token);

struct Neighbor {
  std::string token;
  double cosine = 0.0;
};

// Top-k stored tokens by cosine to `token`, excluding the token itself; ties
// break lexicographically. Throws ConfigError when k exceeds the candidates.
std::vector<Neighbor> nearest_neighbors(const EmbeddingStore& store, std::string_view token,
                                        std::size_t k);

// Cosine per pair; std::nullopt when either side does not resolve.
std::vector<std::optional<double>> score_pairs(const EmbeddingStore& store,
                                               std::span<const IdentifierPair> pairs);

}  // namespace idbench::embed
