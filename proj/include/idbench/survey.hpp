#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "idbench/model.hpp"

// Survey administration: session composition, answers and export.
namespace idbench::survey {

inline constexpr std::size_t kDirectQuestions = 18;
inline constexpr std::size_t kIndirectQuestions = 15;

struct Pool {
  std::vector<IdentifierPair> pairs;
  std::map<std::string, std::vector<CodeContext>> contexts;  // by owner
};

// Pairs CSV with `id1` and `id2` columns (others ignored); duplicates dropped.
std::vector<IdentifierPair> parse_pairs_csv(std::istream& in);
Pool make_pool(std::vector<IdentifierPair> pairs, const std::vector<CodeContext>& contexts);

// Pairs for which at least one identifier has a context.
std::vector<std::size_t> indirect_eligible(const Pool& pool);

struct DirectAnswer {
  int relatedness = 0;
  int similarity = 0;
  friend bool operator==(const DirectAnswer&, const DirectAnswer&) = default;
};

struct IndirectItem {
  IdentifierPair pair;
  Side owner = Side::first;
  CodeContext context;
  friend bool operator==(const IndirectItem&, const IndirectItem&) = default;
};

struct Session {
  std::string id;
  std::string participant;
  std::uint64_t seed = 0;
  std::vector<IdentifierPair> direct;
  std::vector<IndirectItem> indirect;
  std::vector<std::optional<DirectAnswer>> direct_answers;
  std::vector<std::optional<Side>> indirect_answers;

  bool complete() const noexcept;
  friend bool operator==(const Session&, const Session&) = default;
};

// Draws 18 distinct pairs and 15 distinct context-bearing pairs. The context
// owner is uniform over the pair's identifiers that have contexts, then the
// context is uniform over the owner's pool. Throws ConfigError when the pool
// is too small.
Session compose_session(const Pool& pool, std::string id, std::string participant, std::uint64_t seed);

// Client view: questions and answered flags, never the context owner.
std::string session_json(const Session& s);

struct Export {
  std::vector<DirectRating> direct;
  std::vector<IndirectRating> indirect;
};

// Sessions persisted as one append-only JSONL event log each under
// `data_dir`; existing logs are replayed on construction. Session k draws
// its questions from splitmix64(base_seed + k) when a base seed is given.
class SurveyStore {
 public:
  SurveyStore(Pool pool, std::filesystem::path data_dir, std::optional<std::uint64_t> base_seed = {});
  ~SurveyStore();

  Session create(std::string participant);
  Session get(const std::string& id) const;

  // Both throw NotFoundError for an unknown session or index,
  // ValidationError for a bad value and ConflictError for a repeat.
  // Return whether the session is now complete.
  bool submit_direct(const std::string& id, std::size_t index, int relatedness, int similarity);
  bool submit_indirect(const std::string& id, std::size_t index, std::string_view chosen);

  Export export_ratings(bool include_partial = false) const;
  std::size_t size() const;

 private:
  struct Entry;
  Entry& entry(const std::string& id) const;
  void replay(const std::filesystem::path& log);

  Pool pool_;
  std::filesystem::path dir_;
  std::optional<std::uint64_t> base_seed_;
  std::uint64_t created_ = 0;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::unique_ptr<Entry>> sessions_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Reads IDBENCH_SURVEY_SEED; absent when unset. Throws ConfigError when it
// is not an unsigned integer.
std::optional<std::uint64_t> seed_from_env();

}  // namespace idbench::survey
