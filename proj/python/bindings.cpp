#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "idbench/embeddings.hpp"
#include "idbench/errors.hpp"
#include "idbench/evaluator.hpp"
#include "idbench/lexer.hpp"
#include "idbench/model.hpp"
#include "idbench/pipeline.hpp"
#include "idbench/strdist.hpp"
#include "idbench/tokenize.hpp"
#include "idbench/trainer.hpp"

namespace py = pybind11;
using namespace idbench;

namespace {

std::vector<IdentifierPair> to_pairs(const std::vector<std::pair<std::string, std::string>>& raw) {
  std::vector<IdentifierPair> out;
  out.reserve(raw.size());
  for (const auto& [a, b] : raw) out.emplace_back(Identifier(a), Identifier(b));
  return out;
}

py::dict gold_row(const GoldScore& g) {
  py::dict d;
  d["id1"] = g.pair.id1.text();
  d["id2"] = g.pair.id2.text();
  d["relatedness"] = g.relatedness;
  d["similarity"] = g.similarity;
  d["contextual_similarity"] = g.contextual_similarity ? py::cast(*g.contextual_similarity) : py::none();
  return d;
}

py::dict build(const std::string& direct_csv, const std::string& indirect_csv, double tau, double theta,
               double downer_gain) {
  std::istringstream d(direct_csv), i(indirect_csv);
  const auto direct = parse_direct_ratings(d);
  const auto indirect = parse_indirect_ratings(i);
  pipeline::BuildResult r;
  {
    py::gil_scoped_release release;
    r = pipeline::build_benchmark(direct, indirect, pipeline::CleaningConfig{tau, theta, downer_gain});
  }
  py::list rows;
  for (const auto& g : r.benchmark.scores) rows.append(gold_row(g));
  std::ostringstream csv;
  write_benchmark_csv(csv, r.benchmark);
  py::dict out;
  out["rows"] = rows;
  out["csv"] = csv.str();
  out["variant"] = std::string(to_string(r.benchmark.variant));
  out["ira_relatedness"] = r.report.ira_relatedness;
  out["ira_similarity"] = r.report.ira_similarity;
  out["removed_outliers"] = r.removed_outliers;
  out["removed_downers"] = r.removed_downers;
  out["pairs_removed"] = r.report.pairs_removed;
  return out;
}

py::dict evaluate(const std::string& bench_csv, const std::vector<std::pair<std::string, std::string>>& pairs,
                  const std::vector<std::optional<double>>& scores, const std::string& task) {
  std::istringstream in(bench_csv);
  const Benchmark bench = parse_benchmark_csv(in);
  const auto ps = to_pairs(pairs);
  const auto e = eval::evaluate(ps, scores, bench, eval::parse_task(task));
  py::dict d;
  d["correlation"] = e.correlation;
  d["coverage"] = e.coverage;
  d["compared"] = e.compared;
  d["total"] = e.total;
  return d;
}

embed::EmbeddingStore train(const std::vector<std::vector<std::string>>& corpus, const std::string& mode,
                            std::size_t dim, std::size_t window, std::size_t negatives, std::size_t epochs,
                            double learning_rate, std::size_t min_count,
                            std::optional<std::pair<std::size_t, std::size_t>> subword, std::uint64_t buckets,
                            std::uint64_t seed, std::size_t threads) {
  embed::TrainConfig cfg;
  cfg.mode = embed::parse_mode(mode);
  cfg.dim = dim;
  cfg.window = window;
  cfg.negatives = negatives;
  cfg.epochs = epochs;
  cfg.learning_rate = learning_rate;
  cfg.min_count = min_count;
  cfg.subword = subword;
  cfg.buckets = buckets;
  cfg.seed = seed;
  cfg.threads = threads;
  py::gil_scoped_release release;
  return embed::train(corpus, cfg);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Core routines of the identifier similarity benchmark tooling";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<UndefinedError>(m, "UndefinedError", base.ptr());
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError", base.ptr());
  py::register_exception<MissingDataError>(m, "MissingDataError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<OovError>(m, "OovError", base.ptr());

  m.def("levenshtein", &strdist::levenshtein, py::arg("a"), py::arg("b"));
  m.def(
      "needleman_wunsch",
      [](std::string_view a, std::string_view b, double match, double mismatch, double gap) {
        return strdist::needleman_wunsch(a, b, {match, mismatch, gap});
      },
      py::arg("a"), py::arg("b"), py::arg("match") = 1.0, py::arg("mismatch") = -1.0, py::arg("gap") = -1.0);
  m.def(
      "lexical_similarity",
      [](std::string_view a, std::string_view b, std::string_view kind) {
        return strdist::lexical_similarity(a, b, strdist::parse_kind(kind));
      },
      py::arg("a"), py::arg("b"), py::arg("kind") = "lv");

  m.def(
      "spearman", [](const std::vector<double>& x, const std::vector<double>& y) { return eval::spearman(x, y); },
      py::arg("x"), py::arg("y"));
  m.def(
      "krippendorff_alpha",
      [](const std::vector<std::vector<std::optional<double>>>& table) { return pipeline::krippendorff_alpha(table); },
      py::arg("table"), "Interval alpha of a raters x items table; None marks a missing rating.");

  m.def("build_benchmark", &build, py::arg("direct_csv"), py::arg("indirect_csv"), py::arg("tau") = 0.25,
        py::arg("theta") = 0.6, py::arg("downer_gain") = 0.10,
        "Cleans raw survey ratings (CSV text) and returns the gold scores.");
  m.def("evaluate", &evaluate, py::arg("benchmark_csv"), py::arg("pairs"), py::arg("scores"),
        py::arg("task") = "relatedness");

  m.def("tokenize_identifier", &tokenize_identifier, py::arg("identifier"));
  m.def(
      "lex_identifiers",
      [](std::string_view source) {
        std::vector<std::tuple<std::string, std::string, std::size_t, std::size_t>> out;
        for (const auto& o : miner::lex_identifiers(source))
          out.emplace_back(o.name, std::string(miner::to_string(o.role)), o.line, o.column);
        return out;
      },
      py::arg("source"), "Identifier occurrences as (name, role, line, column).");

  py::class_<embed::EmbeddingStore>(m, "Embeddings")
      .def_property_readonly("dim", &embed::EmbeddingStore::dim)
      .def_property_readonly("tokens", &embed::EmbeddingStore::tokens)
      .def("__len__", &embed::EmbeddingStore::size)
      .def("__contains__",
           [](const embed::EmbeddingStore& s, std::string_view t) { return embed::try_vector_for(s, t).has_value(); })
      .def(
          "vector", [](const embed::EmbeddingStore& s, std::string_view t) { return embed::vector_for(s, t); },
          py::arg("token"))
      .def(
          "similarity",
          [](const embed::EmbeddingStore& s, std::string_view a, std::string_view b) {
            return embed::cosine(embed::vector_for(s, a), embed::vector_for(s, b));
          },
          py::arg("a"), py::arg("b"))
      .def(
          "nearest",
          [](const embed::EmbeddingStore& s, std::string_view t, std::size_t k) {
            std::vector<std::pair<std::string, double>> out;
            for (auto& n : embed::nearest_neighbors(s, t, k)) out.emplace_back(std::move(n.token), n.cosine);
            return out;
          },
          py::arg("token"), py::arg("k") = 10)
      .def(
          "score_pairs",
          [](const embed::EmbeddingStore& s, const std::vector<std::pair<std::string, std::string>>& pairs) {
            return embed::score_pairs(s, to_pairs(pairs));
          },
          py::arg("pairs"))
      .def(
          "save", [](const embed::EmbeddingStore& s, const std::string& path) { embed::save_vectors_file(path, s); },
          py::arg("path"));

  m.def("load_vectors", &embed::load_vectors_file, py::arg("path"));
  m.def("train", &train, py::arg("corpus"), py::arg("mode") = "sg", py::arg("dim") = 100, py::arg("window") = 5,
        py::arg("negatives") = 5, py::arg("epochs") = 5, py::arg("learning_rate") = 0.025, py::arg("min_count") = 5,
        py::arg("subword") = py::none(), py::arg("buckets") = 0, py::arg("seed") = 1, py::arg("threads") = 1,
        "Trains word2vec-style vectors; pass subword=(min, max) for character n-grams.");
}
