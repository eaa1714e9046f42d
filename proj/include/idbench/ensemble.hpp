#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "idbench/model.hpp"
#include "idbench/svr.hpp"

// Learned combination of the representation scores and identifier features.
namespace idbench::ensemble {

inline constexpr std::size_t kScoreColumns = 7;
inline constexpr std::size_t kFeatures = 13;
inline constexpr std::array<std::string_view, kScoreColumns> kRepresentations = {
    "lv", "nw", "w2v-cbow", "w2v-sg", "ft-cbow", "ft-sg", "path"};

using Dictionary = std::unordered_set<std::string>;

// One lowercase word per line; blank lines ignored.
Dictionary load_dictionary(std::istream& in);

struct FeatureVector {
  std::array<double, kScoreColumns> scores{};
  double len1 = 0, len2 = 0;
  double subtok1 = 0, subtok2 = 0;
  double nondict1 = 0, nondict2 = 0;

  std::array<double, kFeatures> values() const;
};

// Throws ConfigError for an empty dictionary.
FeatureVector extract_features(const IdentifierPair& pair, const std::array<double, kScoreColumns>& scores,
                               const Dictionary& dict);

// A pair with its raw scores; absent scores are imputed at fit time.
struct PairScores {
  IdentifierPair pair;
  std::array<std::optional<double>, kScoreColumns> scores;
};

struct Model {
  svr::Model regressor;
  std::array<double, kScoreColumns> impute{};  // training column means

  double predict(const PairScores& p, const Dictionary& dict) const;
  double predict_clamped(const PairScores& p, const Dictionary& dict) const;  // in [0, 1]
};

// Column means over `rows` (indices into `data`); a column with no values at
// all imputes 0.
std::array<double, kScoreColumns> column_means(std::span<const PairScores> data,
                                               std::span<const std::size_t> rows);

Model fit(std::span<const PairScores> data, std::span<const double> targets, const Dictionary& dict,
          const svr::SvrConfig& cfg = {});

struct LooResult {
  std::vector<double> predictions;
  double correlation = 0.0;
  bool all_converged = true;
};

// Fits n models, each without one pair, and predicts the held-out pair.
// Needs at least four pairs; the fits run on `threads` workers.
LooResult leave_one_out(std::span<const PairScores> data, std::span<const double> targets,
                        const Dictionary& dict, const svr::SvrConfig& cfg = {}, std::size_t threads = 1);

std::string to_json(const Model& m);
Model model_from_json(std::string_view text);

}  // namespace idbench::ensemble
