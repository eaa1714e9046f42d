#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idbench/model.hpp"

// Agreement between semantic representations and a benchmark.
namespace idbench::eval {

enum class Task { relatedness, similarity, contextual };

std::string_view to_string(Task task) noexcept;
Task parse_task(std::string_view name);  // relatedness | similarity | contextual
inline constexpr Task kAllTasks[] = {Task::relatedness, Task::similarity, Task::contextual};

// Gold score of `g` for `task`, absent when the pair was filtered out.
std::optional<double> gold(const GoldScore& g, Task task);

// Average ranks (1-based), ties share the mean of their span.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of average ranks. Throws ValidationError on a length
// mismatch, InsufficientDataError for n < 3 and UndefinedError when either
// input is constant.
double spearman(std::span<const double> x, std::span<const double> y);

// Per-pair scores from each representation, aligned with `pairs`.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  explicit ScoreMatrix(std::vector<IdentifierPair> pairs) : pairs_(std::move(pairs)) {}

  const std::vector<IdentifierPair>& pairs() const noexcept { return pairs_; }
  const std::map<std::string, std::vector<std::optional<double>>>& columns() const noexcept {
    return columns_;
  }

  // Throws ValidationError on a length mismatch, non-finite value or a
  // duplicate name.
  void add_column(std::string name, std::vector<std::optional<double>> scores);
  const std::vector<std::optional<double>>& column(const std::string& name) const;

 private:
  std::vector<IdentifierPair> pairs_;
  std::map<std::string, std::vector<std::optional<double>>> columns_;
};

struct Evaluation {
  double correlation = 0.0;
  double coverage = 0.0;      // compared / total
  std::size_t compared = 0;   // pairs with both a score and a gold value
  std::size_t total = 0;      // pairs with a gold value for the task
};

// Pairs are matched by pair id. Throws InsufficientDataError with fewer than
// three comparable pairs; UndefinedError propagates from spearman.
Evaluation evaluate(std::span<const IdentifierPair> pairs,
                    std::span<const std::optional<double>> scores, const Benchmark& bench,
                    Task task);

enum class Subset { abbreviations, opposites, synonyms, added_subtoken, tricky_tokenization };

std::string_view to_string(Subset tag) noexcept;
Subset parse_subset(std::string_view name);

struct SubsetTag {
  Subset tag;
  std::string pair_id;
};

// CSV `pair_id,tag`; pair ids are canonicalised.
std::vector<SubsetTag> parse_subset_tags(std::istream& in);

enum class Status { ok, insufficient, undefined };
std::string_view to_string(Status status) noexcept;

struct ReportRow {
  std::string representation;
  std::string variant;
  std::string task;
  std::string subset = "all";
  std::optional<double> correlation;
  double coverage = 0.0;
  std::size_t compared = 0;
  std::size_t total = 0;
  Status status = Status::ok;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

// One row per (representation, task) over every pair; insufficient and
// undefined cells are flagged instead of thrown.
std::vector<ReportRow> evaluate_all(const ScoreMatrix& scores, const Benchmark& bench,
                                    std::string_view variant);

// evaluate() restricted to each tag's pairs, for every representation and task.
std::vector<ReportRow> subset_report(const ScoreMatrix& scores, const Benchmark& bench,
                                     std::span<const SubsetTag> tags, std::string_view variant);

// Fixed-width table: header line, then one line per row.
std::string format_table(std::span<const ReportRow> rows);
std::string to_json(std::span<const ReportRow> rows);
std::vector<ReportRow> rows_from_json(std::string_view json);

// Scores file: CSV `id1,id2,score`, empty score = missing.
ScoreMatrix read_scores(std::istream& in, const std::string& name);
void write_scores(std::ostream& out, std::span<const IdentifierPair> pairs,
                  std::span<const std::optional<double>> scores);

// Aligns several named score files onto the benchmark's pair order; pairs a
// file lacks become missing.
ScoreMatrix align_to_benchmark(const Benchmark& bench, const std::vector<ScoreMatrix>& files);

}  // namespace idbench::eval
