#include "idbench/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "idbench/errors.hpp"
#include "idbench/normal.hpp"

namespace idbench::pipeline {

Variant CleaningConfig::variant() const noexcept {
  auto same = [](double a, double b) { return std::fabs(a - b) < 1e-12; };
  for (auto [preset, v] : {std::pair{small(), Variant::small}, std::pair{medium(), Variant::medium},
                           std::pair{large(), Variant::large}}) {
    if (same(tau, preset.tau) && same(theta, preset.theta)) return v;
  }
  return Variant::custom;
}

void CleaningConfig::validate() const {
  if (!(tau > 0.0)) throw ConfigError("tau must be > 0");
  if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError("theta must be in (0,1]");
  if (!(downer_gain > 0.0)) throw ConfigError("downer gain must be > 0");
}

double likert_to_unit(int rating) {
  if (rating < 1 || rating > 5)
    throw ValidationError("Likert rating " + std::to_string(rating) + " outside 1-5");
  return (rating - 1) / 4.0;
}

std::map<std::string, DirectScore> aggregate_direct(std::span<const DirectRating> ratings) {
  std::map<std::string, DirectScore> out;
  for (const DirectRating& r : ratings) {
    DirectScore& s = out[r.pair_id];
    s.relatedness += likert_to_unit(r.relatedness);
    s.similarity += likert_to_unit(r.similarity);
    ++s.ratings;
  }
  for (auto& [id, s] : out) {
    s.relatedness /= static_cast<double>(s.ratings);
    s.similarity /= static_cast<double>(s.ratings);
  }
  return out;
}

double krippendorff_alpha(std::span<const std::vector<double>> units) {
  // Interval metric: within a unit of m values,
  //   sum_{i != j} (v_i - v_j)^2 = 2 (m * sum v^2 - (sum v)^2).
  // Values are centred on the first pairable value to limit cancellation.
  double shift = 0.0;
  bool have_shift = false;
  for (const auto& u : units) {
    if (u.size() >= 2) {
      shift = u.front();
      have_shift = true;
      break;
    }
  }
  if (!have_shift) throw UndefinedError("no pairable values: alpha is undefined");

  double observed = 0.0;  // sum over units of pair disagreements / (m - 1)
  double n = 0.0;
  double total = 0.0, total_sq = 0.0;
  for (const auto& u : units) {
    if (u.size() < 2) continue;
    const double m = static_cast<double>(u.size());
    double s = 0.0, sq = 0.0;
    for (double v : u) {
      double c = v - shift;
      s += c;
      sq += c * c;
    }
    observed += 2.0 * (m * sq - s * s) / (m - 1.0);
    n += m;
    total += s;
    total_sq += sq;
  }
  const double expected_pairs = 2.0 * (n * total_sq - total * total);
  // D_o = observed / n, D_e = expected_pairs / (n (n - 1)).
  const double d_o = std::max(observed, 0.0) / n;
  const double d_e = std::max(expected_pairs, 0.0) / (n * (n - 1.0));
  if (d_e <= 0.0) return 1.0;
  return 1.0 - d_o / d_e;
}

double krippendorff_alpha(const RatingMatrix& table) {
  std::size_t items = 0;
  for (const auto& row : table) items = std::max(items, row.size());
  std::vector<std::vector<double>> units(items);
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i]) units[i].push_back(*row[i]);
    }
  }
  return krippendorff_alpha(std::span<const std::vector<double>>(units));
}

namespace {

double value_of(const DirectRating& r, Dimension dim) {
  return likert_to_unit(dim == Dimension::relatedness ? r.relatedness : r.similarity);
}

std::vector<std::vector<double>> units_of(std::span<const DirectRating> ratings, Dimension dim,
                                          const std::string* skip_participant = nullptr) {
  std::map<std::string, std::vector<double>> by_pair;
  for (const DirectRating& r : ratings) {
    if (skip_participant && r.participant == *skip_participant) continue;
    by_pair[r.pair_id].push_back(value_of(r, dim));
  }
  std::vector<std::vector<double>> units;
  units.reserve(by_pair.size());
  for (auto& [id, values] : by_pair) units.push_back(std::move(values));
  return units;
}

double alpha_of(std::span<const DirectRating> ratings, Dimension dim,
                const std::string* skip_participant = nullptr) {
  auto units = units_of(ratings, dim, skip_participant);
  return krippendorff_alpha(std::span<const std::vector<double>>(units));
}

FilterResult split_by(std::span<const DirectRating> ratings, std::set<std::string> removed) {
  FilterResult out;
  for (const DirectRating& r : ratings) {
    if (!removed.count(r.participant)) out.retained.push_back(r);
  }
  out.removed = std::move(removed);
  return out;
}

}  // namespace

double inter_rater_agreement(std::span<const DirectRating> ratings, Dimension dim) {
  return alpha_of(ratings, dim);
}

std::map<std::string, double> participant_deviations(std::span<const DirectRating> ratings) {
  struct Sums {
    double rel = 0.0, sim = 0.0;
    std::size_t n = 0;
  };
  std::unordered_map<std::string, Sums> per_pair;
  // (participant, pair) -> that participant's own contribution to the pair.
  std::map<std::pair<std::string, std::string>, Sums> own;
  for (const DirectRating& r : ratings) {
    double rel = value_of(r, Dimension::relatedness), sim = value_of(r, Dimension::similarity);
    Sums& p = per_pair[r.pair_id];
    p.rel += rel;
    p.sim += sim;
    ++p.n;
    Sums& o = own[{r.participant, r.pair_id}];
    o.rel += rel;
    o.sim += sim;
    ++o.n;
  }

  struct Acc {
    double rel = 0.0, sim = 0.0;
    std::size_t pairs = 0;
  };
  std::map<std::string, Acc> acc;
  for (const auto& [key, mine] : own) {
    const auto& [participant, pair] = key;
    Acc& a = acc[participant];
    const Sums& all = per_pair.at(pair);
    const std::size_t others = all.n - mine.n;
    if (others == 0) continue;
    const double other_rel = (all.rel - mine.rel) / static_cast<double>(others);
    const double other_sim = (all.sim - mine.sim) / static_cast<double>(others);
    a.rel += std::fabs(mine.rel / static_cast<double>(mine.n) - other_rel);
    a.sim += std::fabs(mine.sim / static_cast<double>(mine.n) - other_sim);
    ++a.pairs;
  }

  std::map<std::string, double> out;
  for (const auto& [participant, a] : acc) {
    if (a.pairs == 0) {
      out[participant] = 0.0;
      continue;
    }
    const double n = static_cast<double>(a.pairs);
    out[participant] = (a.rel / n + a.sim / n) / 2.0;
  }
  return out;
}

FilterResult remove_outlier_participants(std::span<const DirectRating> ratings, double tau) {
  std::set<std::string> removed;
  for (const auto& [participant, deviation] : participant_deviations(ratings)) {
    if (deviation > tau) removed.insert(participant);
  }
  return split_by(ratings, std::move(removed));
}

FilterResult remove_downers(std::span<const DirectRating> ratings, double gain) {
  std::set<std::string> participants;
  for (const DirectRating& r : ratings) participants.insert(r.participant);
  if (participants.empty()) return {};

  const double base_rel = alpha_of(ratings, Dimension::relatedness);
  const double base_sim = alpha_of(ratings, Dimension::similarity);
  auto improves = [gain](double before, double after) {
    return after > before && after - before >= gain * std::fabs(before);
  };

  std::set<std::string> removed;
  for (const std::string& p : participants) {
    double rel, sim;
    try {
      rel = alpha_of(ratings, Dimension::relatedness, &p);
      sim = alpha_of(ratings, Dimension::similarity, &p);
    } catch (const UndefinedError&) {
      throw UndefinedError("alpha undefined after removing participant " + p);
    }
    if (improves(base_rel, rel) || improves(base_sim, sim)) removed.insert(p);
  }
  return split_by(ratings, std::move(removed));
}

double sdt_distance(std::size_t n, std::size_t chose_owner) {
  if (n == 0) throw MissingDataError("no indirect ratings for pair");
  if (chose_owner > n) throw ValidationError("more owner choices than ratings");
  const double p = (static_cast<double>(chose_owner) + 0.5) / (static_cast<double>(n) + 1.0);
  return std::fabs(normal_quantile(p));
}

std::map<std::string, double> sdt_contextual_scores(std::span<const IndirectRating> ratings) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;  // n, owner picks
  for (const IndirectRating& r : ratings) {
    auto& [n, x] = counts[r.pair_id];
    ++n;
    if (r.chosen == r.context_owner) ++x;
  }
  std::map<std::string, double> distance;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& [id, c] : counts) {
    double d = sdt_distance(c.first, c.second);
    distance[id] = d;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  std::map<std::string, double> out;
  for (const auto& [id, d] : distance) out[id] = hi > lo ? 1.0 - (d - lo) / (hi - lo) : 1.0;
  return out;
}

std::set<std::string> remove_outlier_pairs(const std::map<std::string, double>& direct_similarity,
                                           const std::map<std::string, double>& contextual,
                                           double theta) {
  for (const auto& [id, s] : contextual) {
    if (!direct_similarity.count(id))
      throw MissingDataError("pair " + id + " has no direct similarity");
  }
  std::set<std::string> kept;
  for (const auto& [id, s] : direct_similarity) {
    auto it = contextual.find(id);
    if (it == contextual.end()) throw MissingDataError("pair " + id + " has no contextual score");
    if (std::fabs(s - it->second) <= theta) kept.insert(id);
  }
  return kept;
}

BuildResult build_benchmark(std::span<const DirectRating> direct,
                            std::span<const IndirectRating> indirect,
                            const CleaningConfig& cfg) {
  cfg.validate();
  BuildResult out;

  FilterResult outliers = remove_outlier_participants(direct, cfg.tau);
  FilterResult downers = remove_downers(outliers.retained, cfg.downer_gain);
  const std::vector<DirectRating>& kept = downers.retained;

  std::map<std::string, DirectScore> scores = aggregate_direct(kept);
  std::map<std::string, double> contextual = sdt_contextual_scores(indirect);

  std::map<std::string, double> direct_sim;
  for (const auto& [id, s] : scores) {
    if (contextual.count(id)) direct_sim[id] = s.similarity;
  }
  std::map<std::string, double> ctx_for_direct;
  for (const auto& [id, c] : contextual) {
    if (scores.count(id)) ctx_for_direct[id] = c;
  }
  std::set<std::string> retained = remove_outlier_pairs(direct_sim, ctx_for_direct, cfg.theta);

  std::map<std::string, std::pair<std::string, std::string>> names;
  for (const DirectRating& r : kept) names.emplace(r.pair_id, std::pair{r.id1, r.id2});

  // Order by canonical pair id so the output does not depend on input order.
  std::map<std::string, GoldScore> ordered;
  for (const auto& [id, s] : scores) {
    const auto& [a, b] = names.at(id);
    GoldScore g{IdentifierPair(Identifier(a), Identifier(b)), s.relatedness, s.similarity,
                std::nullopt};
    if (retained.count(id)) g.contextual_similarity = contextual.at(id);
    ordered.emplace(g.pair.pair_id, std::move(g));
  }

  out.benchmark.variant = cfg.variant();
  out.benchmark.tau = cfg.tau;
  out.benchmark.theta = cfg.theta;
  for (auto& [key, g] : ordered) out.benchmark.scores.push_back(std::move(g));

  out.report.participants_removed_outlier = outliers.removed.size();
  out.report.participants_removed_downer = downers.removed.size();
  out.report.pairs_removed = direct_sim.size() - retained.size();
  if (!kept.empty()) {
    out.report.ira_relatedness = inter_rater_agreement(kept, Dimension::relatedness);
    out.report.ira_similarity = inter_rater_agreement(kept, Dimension::similarity);
  }
  out.removed_outliers = std::move(outliers.removed);
  out.removed_downers = std::move(downers.removed);
  return out;
}

}  // namespace idbench::pipeline
