#include "idbench/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "idbench/csv.hpp"
#include "idbench/errors.hpp"

namespace idbench::embed {

EmbeddingStore::EmbeddingStore(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw ValidationError("embedding dimension must be positive");
}

void EmbeddingStore::add(std::string token, Vector vec) {
  if (vec.size() != dim_)
    throw ValidationError("vector for '" + token + "' has dimension " +
                          std::to_string(vec.size()) + ", expected " + std::to_string(dim_));
  if (index_.count(token)) throw ValidationError("duplicate token '" + token + "'");
  index_.emplace(token, tokens_.size());
  tokens_.push_back(std::move(token));
  vectors_.push_back(std::move(vec));
}

void EmbeddingStore::set_ngrams(NgramTable table) {
  if (table.min_n < 1 || table.min_n > table.max_n)
    throw ValidationError("invalid n-gram range");
  for (const auto& [key, vec] : table.vectors) {
    if (vec.size() != dim_) throw ValidationError("n-gram vector '" + key + "' has wrong dimension");
  }
  ngrams_ = std::move(table);
}

const Vector* EmbeddingStore::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? nullptr : &vectors_[it->second];
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(std::move(tok));
  return out;
}

std::pair<std::string, Vector> parse_vector_line(const std::string& line, std::size_t dim,
                                                 std::size_t line_no) {
  auto fields = split_ws(line);
  if (fields.size() != dim + 1)
    throw ParseError("expected token and " + std::to_string(dim) + " values, got " +
                     std::to_string(fields.empty() ? 0 : fields.size() - 1) + " values",
                     line_no);
  Vector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = csv::parse_real(fields[i + 1], line_no, "vector component");
  return {std::move(fields[0]), std::move(v)};
}

void write_vector_line(std::ostream& out, std::string_view token, const Vector& v) {
  out << token;
  char buf[32];
  for (double x : v) {
    std::snprintf(buf, sizeof buf, " %.9g", x);
    out << buf;
  }
  out << '\n';
}

std::size_t header_number(const std::string& text, std::size_t line_no) {
  int v = csv::parse_int(text, line_no, "header field");
  if (v < 0) throw ParseError("negative header field", line_no);
  return static_cast<std::size_t>(v);
}

}  // namespace

EmbeddingStore load_vectors(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("missing 'V D' header", 1);
  ++line_no;
  auto header = split_ws(line);
  if (header.size() != 2) throw ParseError("expected 'V D' header", line_no);
  const std::size_t count = header_number(header[0], line_no);
  const std::size_t dim = header_number(header[1], line_no);
  EmbeddingStore store(dim);
  while (store.size() < count && std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto [token, vec] = parse_vector_line(line, dim, line_no);
    store.add(std::move(token), std::move(vec));
  }
  if (store.size() != count)
    throw ParseError("header announces " + std::to_string(count) + " tokens, file has " +
                     std::to_string(store.size()), line_no);
  while (std::getline(in, line)) {
    ++line_no;
    if (!split_ws(line).empty()) throw ParseError("more vectors than announced", line_no);
  }
  return store;
}

void save_vectors(std::ostream& out, const EmbeddingStore& store) {
  out << store.size() << ' ' << store.dim() << '\n';
  for (const auto& token : store.tokens()) write_vector_line(out, token, *store.find(token));
}

NgramTable load_ngram_vectors(std::istream& in, std::size_t dim) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError("missing n-gram header", 1);
  auto header = split_ws(line);
  if (header.size() != 4 && header.size() != 5)
    throw ParseError("expected 'N D MIN MAX [BUCKETS]' header", 1);
  NgramTable table;
  const std::size_t count = header_number(header[0], 1);
  if (header_number(header[1], 1) != dim) throw ParseError("n-gram dimension differs from words", 1);
  table.min_n = header_number(header[2], 1);
  table.max_n = header_number(header[3], 1);
  if (header.size() == 5) table.buckets = header_number(header[4], 1);
  while (table.vectors.size() < count && std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto [token, vec] = parse_vector_line(line, dim, line_no);
    if (!table.vectors.emplace(token, std::move(vec)).second)
      throw ValidationError("duplicate n-gram '" + token + "'");
  }
  if (table.vectors.size() != count)
    throw ParseError("n-gram header announces " + std::to_string(count) + " entries", line_no);
  return table;
}

void save_ngram_vectors(std::ostream& out, const NgramTable& table, std::size_t dim) {
  out << table.vectors.size() << ' ' << dim << ' ' << table.min_n << ' ' << table.max_n;
  if (table.buckets) out << ' ' << table.buckets;
  out << '\n';
  std::vector<const std::string*> keys;
  for (const auto& [key, vec] : table.vectors) keys.push_back(&key);
  std::sort(keys.begin(), keys.end(), [](auto* a, auto* b) { return *a < *b; });
  for (const std::string* key : keys) write_vector_line(out, *key, table.vectors.at(*key));
}

EmbeddingStore load_vectors_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open vectors file " + path);
  EmbeddingStore store = load_vectors(in);
  std::ifstream ngrams(path + ".ngrams");
  if (ngrams) store.set_ngrams(load_ngram_vectors(ngrams, store.dim()));
  return store;
}

void save_vectors_file(const std::string& path, const EmbeddingStore& store) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write vectors file " + path);
  save_vectors(out, store);
  if (store.ngrams()) {
    std::ofstream ng(path + ".ngrams");
    if (!ng) throw ConfigError("cannot write n-gram file " + path + ".ngrams");
    save_ngram_vectors(ng, *store.ngrams(), store.dim());
  }
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw ValidationError("cosine of vectors with different dimensions");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw UndefinedError("cosine with a zero vector");
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

std::uint64_t fnv1a(std::string_view text) noexcept {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<std::string> char_ngrams(std::string_view token, std::size_t min_n, std::size_t max_n) {
  std::string marked;
  marked.reserve(token.size() + 2);
  marked.push_back('<');
  marked.append(token);
  marked.push_back('>');
  std::vector<std::string> out;
  for (std::size_t start = 0; start < marked.size(); ++start) {
    for (std::size_t n = min_n; n <= max_n && start + n <= marked.size(); ++n) {
      out.push_back(marked.substr(start, n));
    }
  }
  return out;
}

std::string ngram_key(const NgramTable& table, std::string_view ngram) {
  if (table.buckets == 0) return std::string(ngram);
  return "#" + std::to_string(fnv1a(ngram) % table.buckets);
}

std::optional<Vector> try_vector_for(const EmbeddingStore& store, std::string_view token) {
  if (token.empty()) throw ValidationError("empty token");
  if (const Vector* v = store.find(token)) return *v;
  const NgramTable* table = store.ngrams();
  if (!table) return std::nullopt;
  Vector sum(store.dim(), 0.0);
  bool found = false;
  for (const std::string& gram : char_ngrams(token, table->min_n, table->max_n)) {
    auto it = table->vectors.find(ngram_key(*table, gram));
    if (it == table->vectors.end()) continue;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += it->second[i];
    found = true;
  }
  if (!found) return std::nullopt;
  return sum;
}

Vector vector_for(const EmbeddingStore& store, std::string_view token) {
  auto v = try_vector_for(store, token);
  if (!v) throw OovError(std::string(token));
  return std::move(*v);
}

std::vector<Neighbor> nearest_neighbors(const EmbeddingStore& store, std::string_view token,
                                        std::size_t k) {
  const Vector query = vector_for(store, token);
  std::vector<Neighbor> all;
  all.reserve(store.size());
  for (const std::string& other : store.tokens()) {
    if (other == token) continue;
    double c;
    try {
      c = cosine(query, *store.find(other));
    } catch (const UndefinedError&) {
      continue;
    }
    all.push_back({other, c});
  }
  if (k == 0 || k > all.size())
    throw ConfigError("k=" + std::to_string(k) + " but only " + std::to_string(all.size()) +
                      " candidate neighbors");
  auto better = [](const Neighbor& a, const Neighbor& b) {
    return a.cosine != b.cosine ? a.cosine > b.cosine : a.token < b.token;
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), better);
  all.resize(k);
  return all;
}

std::vector<std::optional<double>> score_pairs(const EmbeddingStore& store,
                                               std::span<const IdentifierPair> pairs) {
  std::vector<std::optional<double>> out;
  out.reserve(pairs.size());
  for (const IdentifierPair& p : pairs) {
    auto a = try_vector_for(store, p.id1.text());
    auto b = try_vector_for(store, p.id2.text());
    if (!a || !b) {
      out.emplace_back();
      continue;
    }
    try {
      out.emplace_back(cosine(*a, *b));
    } catch (const UndefinedError&) {
      out.emplace_back();
    }
  }
  return out;
}

}  // namespace idbench::embed
