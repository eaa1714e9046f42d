#include "idbench/strdist.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "idbench/errors.hpp"

namespace idbench::strdist {

void AlignmentParams::validate() const {
  if (!(match_score > mismatch_penalty)) throw ConfigError("match score must exceed mismatch penalty");
  if (!(gap_penalty < match_score)) throw ConfigError("gap penalty must be below match score");
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // Two rows over the shorter string.
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double needleman_wunsch(std::string_view a, std::string_view b, const AlignmentParams& params) {
  const double gap = params.gap_penalty;
  std::vector<double> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = gap * static_cast<double>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = gap * static_cast<double>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      double diag = prev[j - 1] +
                    (a[i - 1] == b[j - 1] ? params.match_score : params.mismatch_penalty);
      cur[j] = std::max({diag, prev[j] + gap, cur[j - 1] + gap});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double lexical_similarity(std::string_view a, std::string_view b, Kind kind,
                          const AlignmentParams& params) {
  if (a.empty() && b.empty()) throw UndefinedError("similarity of two empty strings is undefined");
  const double longest = static_cast<double>(std::max(a.size(), b.size()));
  if (kind == Kind::lv) return 1.0 - static_cast<double>(levenshtein(a, b)) / longest;

  const double best = params.match_score * longest;
  const double worst = params.gap_penalty * static_cast<double>(a.size() + b.size());
  if (best == worst) return 1.0;
  return (needleman_wunsch(a, b, params) - worst) / (best - worst);
}

Kind parse_kind(std::string_view name) {
  if (name == "lv" || name == "LV") return Kind::lv;
  if (name == "nw" || name == "NW") return Kind::nw;
  throw ValidationError("unknown string distance '" + std::string(name) + "'");
}

}  // namespace idbench::strdist
