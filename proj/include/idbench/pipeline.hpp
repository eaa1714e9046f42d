#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "idbench/model.hpp"

// Raw survey ratings -> gold-standard benchmark.
namespace idbench::pipeline {

struct CleaningConfig {
  double tau = 0.25;          // outlier-participant threshold on unit-scaled ratings
  double theta = 0.6;         // outlier-pair threshold
  double downer_gain = 0.10;  // relative IRA improvement that marks a downer

  static CleaningConfig small() { return {0.215, 0.4, 0.10}; }
  static CleaningConfig medium() { return {0.23, 0.5, 0.10}; }
  static CleaningConfig large() { return {0.25, 0.6, 0.10}; }

  // The preset these thresholds match, or Variant::custom.
  Variant variant() const noexcept;
  // Throws ConfigError when a field is out of its domain.
  void validate() const;
};

struct AgreementReport {
  double ira_relatedness = 0.0;
  double ira_similarity = 0.0;
  std::size_t participants_removed_outlier = 0;
  std::size_t participants_removed_downer = 0;
  std::size_t pairs_removed = 0;
};

// (r - 1) / 4. Throws ValidationError outside 1..5.
double likert_to_unit(int rating);

struct DirectScore {
  double relatedness = 0.0;
  double similarity = 0.0;
  std::size_t ratings = 0;
};

// Per pair_id mean of unit-scaled ratings.
std::map<std::string, DirectScore> aggregate_direct(std::span<const DirectRating> ratings);

// Krippendorff's alpha with the interval metric. Each unit lists its pairable
// values (missing entries omitted); units with fewer than two values are
// ignored. Returns 1 when every value is identical. Throws UndefinedError
// when no unit has two values.
double krippendorff_alpha(std::span<const std::vector<double>> units);

// [participant][item] table with missing cells.
using RatingMatrix = std::vector<std::vector<std::optional<double>>>;
double krippendorff_alpha(const RatingMatrix& table);

enum class Dimension { relatedness, similarity };

// Alpha over unit-scaled direct ratings grouped by pair_id.
double inter_rater_agreement(std::span<const DirectRating> ratings, Dimension dim);

struct FilterResult {
  std::vector<DirectRating> retained;
  std::set<std::string> removed;
};

// Mean absolute leave-one-out deviation per participant, averaged over the
// relatedness and similarity dimensions. Participants without any pair shared
// with someone else get 0.
std::map<std::string, double> participant_deviations(std::span<const DirectRating> ratings);

// Drops every participant whose deviation exceeds `tau`.
FilterResult remove_outlier_participants(std::span<const DirectRating> ratings, double tau);

// Single pass against the full input cohort: p is a downer when removing it
// raises relatedness or similarity alpha by at least `gain` relative to the
// alpha with p (new - old >= gain * |old| and new > old).
FilterResult remove_downers(std::span<const DirectRating> ratings, double gain);

// Choice distance for a pair: |probit((x + 0.5) / (n + 1))| where x of n
// raters picked the identifier the context came from.
double sdt_distance(std::size_t n, std::size_t chose_owner);

// Per pair_id contextual similarity, min-max normalized and inverted
// distances over all pairs present. All 1 when every distance is equal.
std::map<std::string, double> sdt_contextual_scores(std::span<const IndirectRating> ratings);

// Pairs kept for the contextual task: |direct - contextual| <= theta.
// Throws MissingDataError when a pair is absent from either map.
std::set<std::string> remove_outlier_pairs(const std::map<std::string, double>& direct_similarity,
                                           const std::map<std::string, double>& contextual,
                                           double theta);

struct BuildResult {
  Benchmark benchmark;
  AgreementReport report;
  std::set<std::string> removed_outliers;
  std::set<std::string> removed_downers;
};

// Outlier participants -> downers -> aggregation + contextual scores ->
// outlier pairs. Participant filters apply to the direct survey; indirect
// ratings are used as given. Scores are ordered by canonical pair id.
BuildResult build_benchmark(std::span<const DirectRating> direct,
                            std::span<const IndirectRating> indirect,
                            const CleaningConfig& cfg);

}  // namespace idbench::pipeline
