#include "idbench/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "idbench/csv.hpp"
#include "idbench/errors.hpp"

namespace idbench::eval {

std::string_view to_string(Task task) noexcept {
  switch (task) {
    case Task::relatedness: return "relatedness";
    case Task::similarity: return "similarity";
    case Task::contextual: break;
  }
  return "contextual";
}

Task parse_task(std::string_view name) {
  if (name == "relatedness") return Task::relatedness;
  if (name == "similarity") return Task::similarity;
  if (name == "contextual" || name == "contextual_similarity") return Task::contextual;
  throw ValidationError("unknown task '" + std::string(name) + "'");
}

std::optional<double> gold(const GoldScore& g, Task task) {
  switch (task) {
    case Task::relatedness: return g.relatedness;
    case Task::similarity: return g.similarity;
    case Task::contextual: break;
  }
  return g.contextual_similarity;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("spearman inputs differ in length");
  if (x.size() < 3) throw InsufficientDataError("spearman needs at least 3 observations");
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  // Average ranks always have mean (n + 1) / 2.
  const double mean = (static_cast<double>(x.size()) + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double a = rx[i] - mean, b = ry[i] - mean;
    sxy += a * b;
    sxx += a * a;
    syy += b * b;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedError("spearman of a constant list is undefined");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

void ScoreMatrix::add_column(std::string name, std::vector<std::optional<double>> scores) {
  if (scores.size() != pairs_.size())
    throw ValidationError("column '" + name + "' has " + std::to_string(scores.size()) +
                          " scores for " + std::to_string(pairs_.size()) + " pairs");
  for (const auto& s : scores) {
    if (s && !std::isfinite(*s)) throw ValidationError("column '" + name + "' has a non-finite score");
  }
  if (!columns_.emplace(name, std::move(scores)).second)
    throw ValidationError("duplicate column '" + name + "'");
}

const std::vector<std::optional<double>>& ScoreMatrix::column(const std::string& name) const {
  auto it = columns_.find(name);
  if (it == columns_.end()) throw NotFoundError("no score column '" + name + "'");
  return it->second;
}

Evaluation evaluate(std::span<const IdentifierPair> pairs,
                    std::span<const std::optional<double>> scores, const Benchmark& bench,
                    Task task) {
  if (pairs.size() != scores.size()) throw ValidationError("pairs and scores differ in length");
  std::unordered_map<std::string, double> by_id;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (scores[i]) by_id.emplace(pairs[i].pair_id, *scores[i]);
  }
  Evaluation out;
  std::vector<double> s, g;
  for (const GoldScore& gs : bench.scores) {
    auto target = gold(gs, task);
    if (!target) continue;
    ++out.total;
    auto it = by_id.find(gs.pair.pair_id);
    if (it == by_id.end()) continue;
    s.push_back(it->second);
    g.push_back(*target);
  }
  out.compared = s.size();
  out.coverage = out.total ? static_cast<double>(out.compared) / static_cast<double>(out.total) : 0.0;
  if (out.compared < 3)
    throw InsufficientDataError("only " + std::to_string(out.compared) + " comparable pairs");
  out.correlation = spearman(s, g);
  return out;
}

std::string_view to_string(Subset tag) noexcept {
  switch (tag) {
    case Subset::abbreviations: return "abbreviations";
    case Subset::opposites: return "opposites";
    case Subset::synonyms: return "synonyms";
    case Subset::added_subtoken: return "added_subtoken";
    case Subset::tricky_tokenization: break;
  }
  return "tricky_tokenization";
}

Subset parse_subset(std::string_view name) {
  for (Subset s : {Subset::abbreviations, Subset::opposites, Subset::synonyms,
                   Subset::added_subtoken, Subset::tricky_tokenization}) {
    if (to_string(s) == name) return s;
  }
  throw ValidationError("unknown subset tag '" + std::string(name) + "'");
}

std::vector<SubsetTag> parse_subset_tags(std::istream& in) {
  std::vector<SubsetTag> tags;
  csv::for_each_row(
      in,
      [](const std::vector<std::string>& h) {
        if (h != std::vector<std::string>{"pair_id", "tag"})
          throw ParseError("expected header 'pair_id,tag'", 1);
      },
      [&](const std::vector<std::string>& f, std::size_t line_no) {
        if (f.size() != 2) throw ParseError("expected 2 fields", line_no);
        std::string id = f[0];
        if (auto bar = id.find('|'); bar != std::string::npos)
          id = make_pair_id(std::string_view(id).substr(0, bar), std::string_view(id).substr(bar + 1));
        try {
          tags.push_back({parse_subset(f[1]), std::move(id)});
        } catch (const ValidationError& e) {
          throw ParseError(e.what(), line_no);
        }
      });
  return tags;
}

std::string_view to_string(Status status) noexcept {
  switch (status) {
    case Status::ok: return "ok";
    case Status::insufficient: return "insufficient";
    case Status::undefined: break;
  }
  return "undefined";
}

namespace {

ReportRow cell(const std::string& name, std::string_view variant, Task task, std::string subset,
               std::span<const IdentifierPair> pairs, std::span<const std::optional<double>> scores,
               const Benchmark& bench) {
  ReportRow row;
  row.representation = name;
  row.variant = std::string(variant);
  row.task = std::string(to_string(task));
  row.subset = std::move(subset);
  // Coverage is reported even when the correlation itself is not available.
  std::set<std::string> scored;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (scores[i]) scored.insert(pairs[i].pair_id);
  for (const GoldScore& g : bench.scores) {
    if (!gold(g, task)) continue;
    ++row.total;
    if (scored.count(g.pair.pair_id)) ++row.compared;
  }
  row.coverage = row.total ? static_cast<double>(row.compared) / static_cast<double>(row.total) : 0.0;
  try {
    row.correlation = evaluate(pairs, scores, bench, task).correlation;
  } catch (const InsufficientDataError&) {
    row.status = Status::insufficient;
  } catch (const UndefinedError&) {
    row.status = Status::undefined;
  }
  return row;
}

}  // namespace

std::vector<ReportRow> evaluate_all(const ScoreMatrix& scores, const Benchmark& bench,
                                    std::string_view variant) {
  std::vector<ReportRow> rows;
  for (const auto& [name, column] : scores.columns()) {
    for (Task task : kAllTasks) rows.push_back(cell(name, variant, task, "all", scores.pairs(), column, bench));
  }
  return rows;
}

std::vector<ReportRow> subset_report(const ScoreMatrix& scores, const Benchmark& bench,
                                     std::span<const SubsetTag> tags, std::string_view variant) {
  std::map<Subset, std::set<std::string>> members;
  for (const SubsetTag& t : tags) members[t.tag].insert(t.pair_id);
  std::vector<ReportRow> rows;
  for (const auto& [tag, ids] : members) {
    Benchmark sub = bench;
    sub.scores.clear();
    for (const GoldScore& g : bench.scores)
      if (ids.count(g.pair.pair_id)) sub.scores.push_back(g);
    for (const auto& [name, column] : scores.columns()) {
      for (Task task : kAllTasks)
        rows.push_back(cell(name, variant, task, std::string(to_string(tag)), scores.pairs(), column, sub));
    }
  }
  return rows;
}

std::string format_table(std::span<const ReportRow> rows) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-16s %-8s %-12s %-20s %11s %9s %9s %s\n", "representation",
                "variant", "task", "subset", "correlation", "coverage", "compared", "status");
  out << buf;
  for (const ReportRow& r : rows) {
    std::string corr = r.correlation ? csv::format_score(*r.correlation) : "-";
    std::snprintf(buf, sizeof buf, "%-16s %-8s %-12s %-20s %11s %9.4f %4zu/%-4zu %s\n",
                  r.representation.c_str(), r.variant.c_str(), r.task.c_str(), r.subset.c_str(),
                  corr.c_str(), r.coverage, r.compared, r.total, std::string(to_string(r.status)).c_str());
    out << buf;
  }
  return out.str();
}

std::string to_json(std::span<const ReportRow> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ReportRow& r : rows) {
    arr.push_back({{"representation", r.representation},
                   {"variant", r.variant},
                   {"task", r.task},
                   {"subset", r.subset},
                   {"correlation", r.correlation ? nlohmann::json(*r.correlation) : nlohmann::json()},
                   {"coverage", r.coverage},
                   {"compared", r.compared},
                   {"total", r.total},
                   {"status", std::string(to_string(r.status))}});
  }
  return nlohmann::json{{"schema", "idbench-report/1"}, {"results", arr}}.dump(2);
}

std::vector<ReportRow> rows_from_json(std::string_view text) {
  std::vector<ReportRow> rows;
  try {
    auto j = nlohmann::json::parse(text);
    for (const auto& e : j.at("results")) {
      ReportRow r;
      r.representation = e.at("representation").get<std::string>();
      r.variant = e.at("variant").get<std::string>();
      r.task = e.at("task").get<std::string>();
      r.subset = e.at("subset").get<std::string>();
      if (!e.at("correlation").is_null()) r.correlation = e.at("correlation").get<double>();
      r.coverage = e.at("coverage").get<double>();
      r.compared = e.at("compared").get<std::size_t>();
      r.total = e.at("total").get<std::size_t>();
      const std::string status = e.at("status").get<std::string>();
      r.status = status == "ok" ? Status::ok : status == "insufficient" ? Status::insufficient : Status::undefined;
      rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report JSON: ") + e.what(), 0);
  }
  return rows;
}

ScoreMatrix read_scores(std::istream& in, const std::string& name) {
  std::vector<IdentifierPair> pairs;
  std::vector<std::optional<double>> scores;
  csv::for_each_row(
      in,
      [](const std::vector<std::string>& h) {
        if (h != std::vector<std::string>{"id1", "id2", "score"})
          throw ParseError("expected header 'id1,id2,score'", 1);
      },
      [&](const std::vector<std::string>& f, std::size_t line_no) {
        if (f.size() != 3) throw ParseError("expected 3 fields", line_no);
        try {
          pairs.emplace_back(Identifier(f[0]), Identifier(f[1]));
        } catch (const ValidationError& e) {
          throw ParseError(e.what(), line_no);
        }
        if (f[2].empty()) scores.emplace_back();
        else scores.emplace_back(csv::parse_real(f[2], line_no, "score"));
      });
  ScoreMatrix m(std::move(pairs));
  m.add_column(name, std::move(scores));
  return m;
}

void write_scores(std::ostream& out, std::span<const IdentifierPair> pairs,
                  std::span<const std::optional<double>> scores) {
  out << "id1,id2,score\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out << pairs[i].id1.text() << ',' << pairs[i].id2.text() << ',';
    if (scores[i]) out << csv::format_score(*scores[i]);
    out << '\n';
  }
}

ScoreMatrix align_to_benchmark(const Benchmark& bench, const std::vector<ScoreMatrix>& files) {
  std::vector<IdentifierPair> pairs;
  for (const GoldScore& g : bench.scores) pairs.push_back(g.pair);
  ScoreMatrix out(pairs);
  for (const ScoreMatrix& f : files) {
    for (const auto& [name, column] : f.columns()) {
      std::unordered_map<std::string, std::optional<double>> by_id;
      for (std::size_t i = 0; i < f.pairs().size(); ++i) by_id.emplace(f.pairs()[i].pair_id, column[i]);
      std::vector<std::optional<double>> aligned;
      for (const IdentifierPair& p : pairs) {
        auto it = by_id.find(p.pair_id);
        aligned.push_back(it == by_id.end() ? std::nullopt : it->second);
      }
      out.add_column(name, std::move(aligned));
    }
  }
  return out;
}

}  // namespace idbench::eval
