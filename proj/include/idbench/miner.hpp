#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "idbench/embeddings.hpp"
#include "idbench/lexer.hpp"
#include "idbench/model.hpp"

// Corpus statistics, pair sampling and context extraction over JavaScript.
namespace idbench::miner {

struct SourceFile {
  std::string path;
  std::string text;
};

// Recursively reads *.js / *.mjs / *.cjs / *.jsx files in path order.
// Unreadable files are counted in `skipped` and reported on `warn`.
std::vector<SourceFile> read_corpus_dir(const std::filesystem::path& dir, std::size_t* skipped = nullptr,
                                        std::ostream* warn = nullptr);

enum class PrimaryRole { function, variable, property, other, mixed };
std::string_view to_string(PrimaryRole role) noexcept;

struct IdentifierStats {
  std::string identifier;
  std::size_t count = 0;
  std::array<std::size_t, 4> role_counts{};  // indexed by Role

  // Role with strictly more than half of the occurrences, else mixed.
  PrimaryRole primary_role() const noexcept;
};

using StatsMap = std::map<std::string, IdentifierStats>;

StatsMap identifier_stats(const SourceFile& file);
// Associative, commutative merge of per-file counts.
void merge_into(StatsMap& into, const StatsMap& from);
// Lexes files in parallel with `threads` workers.
StatsMap identifier_stats(const std::vector<SourceFile>& files, std::size_t threads = 1);

struct CorpusStats {
  std::size_t files = 0;
  std::size_t skipped_files = 0;
  std::size_t total_occurrences = 0;
  std::size_t bench_occurrences = 0;
  // bench / total; 0 with `coverage_defined == false` for an empty corpus.
  double coverage = 0.0;
  bool coverage_defined = false;
  // Over the benchmark identifiers, absent ones counting as 0.
  std::size_t min_occurrences = 0;
  double mean_occurrences = 0.0;
  std::size_t max_occurrences = 0;
  // Fraction of benchmark identifiers per primary role (absent ones skipped).
  std::map<std::string, double> role_distribution;
  std::map<std::string, std::size_t> per_identifier;
};

CorpusStats corpus_stats(const StatsMap& stats, const std::set<std::string>& bench_identifiers,
                         std::size_t files, std::size_t skipped_files = 0);

std::string to_json(const CorpusStats& stats);

struct Band {
  double low = 0.0;   // inclusive
  double high = 0.0;  // exclusive, except that 1.0 is inclusive
  std::size_t quota = 0;
};

struct SamplingConfig {
  std::size_t min_count = 50;
  std::vector<Band> bands;
  std::vector<IdentifierPair> manual_pairs;
  std::size_t random_pairs = 0;
  std::uint64_t seed = 1;

  void validate() const;  // throws ConfigError
};

// Candidates: identifiers with count > min_count that resolve in the store.
// Every unordered candidate pair is scored by cosine; each band draws its
// quota uniformly, then manual pairs and uniform random pairs are appended.
// Duplicates (by pair id) are dropped. Throws SamplingError when a band
// holds fewer pairs than its quota.
std::vector<IdentifierPair> sample_pairs(const StatsMap& stats, const embed::EmbeddingStore& store,
                                         const SamplingConfig& cfg);

struct ContextSample {
  std::vector<CodeContext> contexts;
  std::size_t available = 0;  // distinct windows found
  bool short_of_request = false;
};

// Five-line windows (2 above, occurrence line, 2 below; shifted at file
// edges, padded with empty lines for files shorter than five lines) around
// code occurrences of `identifier`. Every whole-word occurrence inside the
// window, comments and strings included, is replaced by kBlank. Draws
// `n_contexts` distinct windows without replacement.
ContextSample extract_contexts(const std::vector<SourceFile>& files, const std::string& identifier,
                               std::size_t n_contexts = 5, std::uint64_t seed = 1);

// Whole-word blanking of one window; exposed for tests and the survey server.
CodeContext blank_window(const std::string& owner, const std::array<std::string, 5>& lines);

}  // namespace idbench::miner
