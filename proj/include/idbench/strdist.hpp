#pragma once

#include <cstddef>
#include <string_view>

// Lexical string-distance baselines. Identifiers are compared raw:
// case-sensitive, no tokenization.
namespace idbench::strdist {

struct AlignmentParams {
  double match_score = 1.0;
  double mismatch_penalty = -1.0;
  double gap_penalty = -1.0;

  // Throws ConfigError unless match > mismatch and gap < match.
  void validate() const;
};

std::size_t levenshtein(std::string_view a, std::string_view b);

// Optimal global alignment score (higher is more similar).
double needleman_wunsch(std::string_view a, std::string_view b,
                        const AlignmentParams& params = {});

enum class Kind { lv, nw };

// Similarity in [0,1]:
//   lv: 1 - lev / max(|a|,|b|)
//   nw: (score - worst) / (best - worst), best = match * max(|a|,|b|),
//       worst = gap * (|a| + |b|); 1 when best == worst.
// Throws UndefinedError when both strings are empty.
double lexical_similarity(std::string_view a, std::string_view b, Kind kind,
                          const AlignmentParams& params = {});

// "lv" / "nw"; throws ValidationError otherwise.
Kind parse_kind(std::string_view name);

}  // namespace idbench::strdist
