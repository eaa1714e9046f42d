#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idbench/csv.hpp"
#include "idbench/embeddings.hpp"
#include "idbench/ensemble.hpp"
#include "idbench/errors.hpp"
#include "idbench/evaluator.hpp"
#include "idbench/lexer.hpp"
#include "idbench/miner.hpp"
#include "idbench/model.hpp"
#include "idbench/pipeline.hpp"
#include "idbench/server.hpp"
#include "idbench/strdist.hpp"
#include "idbench/survey.hpp"
#include "idbench/trainer.hpp"

namespace fs = std::filesystem;
using namespace idbench;

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  return out;
}

Benchmark read_bench(const std::string& path) {
  auto in = open_in(path);
  return parse_benchmark_csv(in);
}

std::vector<IdentifierPair> bench_pairs(const Benchmark& b) {
  std::vector<IdentifierPair> out;
  for (const auto& g : b.scores) out.push_back(g.pair);
  return out;
}

std::vector<IdentifierPair> read_pairs(const std::string& path) {
  auto in = open_in(path);
  return survey::parse_pairs_csv(in);
}

// "low:high:quota" entries separated by commas.
std::vector<miner::Band> parse_bands(const std::string& text) {
  std::vector<miner::Band> bands;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (item.empty()) continue;
    miner::Band b;
    char c1 = 0, c2 = 0;
    std::istringstream f(item);
    if (!(f >> b.low >> c1 >> b.high >> c2 >> b.quota) || c1 != ':' || c2 != ':' || !f.eof())
      throw ConfigError("band '" + item + "' is not low:high:quota");
    bands.push_back(b);
  }
  return bands;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ConfigError("expected MIN,MAX");
  return {std::stoul(text.substr(0, comma)), std::stoul(text.substr(comma + 1))};
}

void write_task_csv(const std::string& path, const Benchmark& b, eval::Task task) {
  auto out = open_out(path);
  out << "id1,id2,score\n";
  for (const auto& g : b.scores) {
    if (auto v = eval::gold(g, task))
      out << g.pair.id1.text() << ',' << g.pair.id2.text() << ',' << csv::format_score(*v) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identifier similarity benchmarks: build, score and evaluate"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "Clean survey ratings into a benchmark");
  std::string direct_path, indirect_path, out_dir, variant_name = "large";
  std::optional<double> tau, theta;
  double gain = 0.10;
  build->add_option("--direct", direct_path, "Direct survey ratings CSV")->required();
  build->add_option("--indirect", indirect_path, "Indirect survey ratings CSV")->required();
  build->add_option("--variant", variant_name, "Preset thresholds")->check(CLI::IsMember({"small", "medium", "large"}));
  build->add_option("--tau", tau, "Outlier participant threshold");
  build->add_option("--theta", theta, "Outlier pair threshold");
  build->add_option("--downer-gain", gain, "Relative agreement gain that marks a downer");
  build->add_option("--out", out_dir, "Output directory")->required();

  // strdist
  auto* sd = app.add_subcommand("strdist", "Lexical similarity of two identifiers");
  std::string kind_name = "lv", sd_a, sd_b;
  strdist::AlignmentParams align;
  sd->add_option("--kind", kind_name)->check(CLI::IsMember({"lv", "nw"}));
  sd->add_option("--match", align.match_score);
  sd->add_option("--mismatch", align.mismatch_penalty);
  sd->add_option("--gap", align.gap_penalty);
  sd->add_option("id1", sd_a)->required();
  sd->add_option("id2", sd_b)->required();

  // train
  auto* tr = app.add_subcommand("train", "Train word embeddings");
  embed::TrainConfig tcfg;
  std::string corpus_path, mode_name = "sg", subword, vectors_out;
  tr->add_option("--corpus", corpus_path, "Token file, one sentence per line")->required();
  tr->add_option("--mode", mode_name)->check(CLI::IsMember({"cbow", "sg"}));
  tr->add_option("--dim", tcfg.dim);
  tr->add_option("--window", tcfg.window);
  tr->add_option("--neg", tcfg.negatives);
  tr->add_option("--epochs", tcfg.epochs);
  tr->add_option("--lr", tcfg.learning_rate);
  tr->add_option("--min-count", tcfg.min_count);
  tr->add_option("--subword", subword, "Character n-gram range MIN,MAX");
  tr->add_option("--buckets", tcfg.buckets, "Hash n-grams into this many buckets");
  tr->add_option("--seed", tcfg.seed);
  tr->add_option("--threads", tcfg.threads);
  tr->add_option("--out", vectors_out)->required();

  // knn
  auto* knn = app.add_subcommand("knn", "Nearest neighbours of a token");
  std::string knn_vectors, knn_token;
  std::size_t knn_k = 5;
  knn->add_option("--vectors", knn_vectors)->required();
  knn->add_option("--token", knn_token)->required();
  knn->add_option("-k", knn_k);

  // mine
  auto* mine = app.add_subcommand("mine", "Corpus statistics, pair sampling and contexts");
  mine->require_subcommand(1);
  std::string corpus_dir, mine_out;
  std::size_t mine_threads = 1;

  auto* stats = mine->add_subcommand("stats", "Identifier statistics for a benchmark");
  std::string stats_bench;
  stats->add_option("--corpus", corpus_dir)->required();
  stats->add_option("--bench", stats_bench, "Benchmark or pairs CSV")->required();
  stats->add_option("--threads", mine_threads);
  stats->add_option("--out", mine_out);

  auto* sample = mine->add_subcommand("sample", "Sample candidate pairs");
  std::string sample_vectors, bands_text, manual_path;
  miner::SamplingConfig scfg;
  sample->add_option("--corpus", corpus_dir)->required();
  sample->add_option("--vectors", sample_vectors)->required();
  sample->add_option("--bands", bands_text, "low:high:quota[,...]");
  sample->add_option("--manual", manual_path, "Pairs CSV appended as is");
  sample->add_option("--random", scfg.random_pairs);
  sample->add_option("--min-count", scfg.min_count);
  sample->add_option("--seed", scfg.seed);
  sample->add_option("--threads", mine_threads);
  sample->add_option("--out", mine_out)->required();

  auto* contexts = mine->add_subcommand("contexts", "Blanked code contexts per identifier");
  std::string ctx_pairs;
  std::size_t per_identifier = 5;
  std::uint64_t ctx_seed = 1;
  contexts->add_option("--corpus", corpus_dir)->required();
  contexts->add_option("--pairs", ctx_pairs)->required();
  contexts->add_option("-n,--per-identifier", per_identifier);
  contexts->add_option("--seed", ctx_seed);
  contexts->add_option("--out", mine_out)->required();

  auto* tokens = mine->add_subcommand("tokens", "Identifier sequences for training, one file per line");
  tokens->add_option("--corpus", corpus_dir)->required();
  tokens->add_option("--out", mine_out)->required();

  // score
  auto* score = app.add_subcommand("score", "Score benchmark pairs with one representation");
  std::string score_bench, score_vectors, score_kind, score_out;
  score->add_option("--bench", score_bench)->required();
  auto* sv = score->add_option("--vectors", score_vectors);
  score->add_option("--kind", score_kind)->check(CLI::IsMember({"lv", "nw"}))->excludes(sv);
  score->add_option("--out", score_out)->required();

  // eval
  auto* ev = app.add_subcommand("eval", "Correlate score files with a benchmark");
  std::string ev_bench, ev_tags, ev_out, ev_variant;
  std::vector<std::string> ev_scores;
  ev->add_option("--bench", ev_bench)->required();
  ev->add_option("--scores", ev_scores, "Score CSVs, named by file stem")->required()->delimiter(',');
  ev->add_option("--tags", ev_tags, "Subset tags CSV");
  ev->add_option("--variant", ev_variant, "Variant label for the report");
  ev->add_option("--out", ev_out)->required();

  // ensemble
  auto* en = app.add_subcommand("ensemble", "Fit the score ensemble");
  std::string en_bench, en_dir, en_dict, en_task = "similarity", en_out;
  bool en_loo = false;
  std::size_t en_threads = 1;
  en->add_option("--bench", en_bench)->required();
  en->add_option("--scores-dir", en_dir, "Directory with one <representation>.csv per column")->required();
  en->add_option("--dict", en_dict, "Word list")->required();
  en->add_option("--task", en_task)->check(CLI::IsMember({"relatedness", "similarity", "contextual"}));
  en->add_flag("--loo", en_loo, "Report leave-one-out correlation");
  en->add_option("--threads", en_threads);
  en->add_option("--out", en_out)->required();

  // serve
  auto* serve = app.add_subcommand("serve", "Run the survey HTTP service");
  std::string sv_pairs, sv_contexts, sv_data, sv_host = "127.0.0.1";
  int sv_port = 8080;
  serve->add_option("--pairs", sv_pairs)->required();
  serve->add_option("--contexts", sv_contexts)->required();
  serve->add_option("--port", sv_port);
  serve->add_option("--host", sv_host);
  serve->add_option("--data", sv_data)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      pipeline::CleaningConfig cfg = variant_name == "small"    ? pipeline::CleaningConfig::small()
                                     : variant_name == "medium" ? pipeline::CleaningConfig::medium()
                                                                : pipeline::CleaningConfig::large();
      if (tau) cfg.tau = *tau;
      if (theta) cfg.theta = *theta;
      cfg.downer_gain = gain;
      auto din = open_in(direct_path);
      auto iin = open_in(indirect_path);
      const auto direct = parse_direct_ratings(din);
      const auto indirect = parse_indirect_ratings(iin);
      const auto result = pipeline::build_benchmark(direct, indirect, cfg);
      const fs::path dir(out_dir);
      fs::create_directories(dir);
      {
        auto out = open_out((dir / "benchmark.csv").string());
        write_benchmark_csv(out, result.benchmark);
      }
      write_task_csv((dir / "relatedness.csv").string(), result.benchmark, eval::Task::relatedness);
      write_task_csv((dir / "similarity.csv").string(), result.benchmark, eval::Task::similarity);
      write_task_csv((dir / "contextual_similarity.csv").string(), result.benchmark, eval::Task::contextual);
      const auto& r = result.report;
      std::ostringstream json;
      json << "{\n  \"variant\": \"" << to_string(result.benchmark.variant) << "\",\n"
           << "  \"tau\": " << cfg.tau << ",\n  \"theta\": " << cfg.theta << ",\n"
           << "  \"ira_relatedness\": " << csv::format_score(r.ira_relatedness) << ",\n"
           << "  \"ira_similarity\": " << csv::format_score(r.ira_similarity) << ",\n"
           << "  \"participants_removed_outlier\": " << r.participants_removed_outlier << ",\n"
           << "  \"participants_removed_downer\": " << r.participants_removed_downer << ",\n"
           << "  \"pairs\": " << result.benchmark.scores.size() << ",\n"
           << "  \"pairs_removed\": " << r.pairs_removed << "\n}\n";
      open_out((dir / "agreement.json").string()) << json.str();
      std::cout << json.str();
    } else if (*sd) {
      std::printf("%.6f\n", strdist::lexical_similarity(sd_a, sd_b, strdist::parse_kind(kind_name), align));
    } else if (*tr) {
      tcfg.mode = embed::parse_mode(mode_name);
      if (!subword.empty()) tcfg.subword = parse_range(subword);
      auto in = open_in(corpus_path);
      const auto corpus = embed::read_corpus(in);
      const auto store = embed::train(corpus, tcfg);
      embed::save_vectors_file(vectors_out, store);
      std::cerr << "trained " << store.size() << " vectors of dimension " << store.dim() << '\n';
    } else if (*knn) {
      const auto store = embed::load_vectors_file(knn_vectors);
      for (const auto& n : embed::nearest_neighbors(store, knn_token, knn_k))
        std::printf("%s\t%.6f\n", n.token.c_str(), n.cosine);
    } else if (*mine) {
      std::size_t skipped = 0;
      const auto files = miner::read_corpus_dir(corpus_dir, &skipped, &std::cerr);
      if (*stats) {
        std::set<std::string> ids;
        for (const auto& p : read_pairs(stats_bench)) {
          ids.insert(p.id1.text());
          ids.insert(p.id2.text());
        }
        const auto s = miner::corpus_stats(miner::identifier_stats(files, mine_threads), ids, files.size(), skipped);
        const std::string json = miner::to_json(s);
        if (mine_out.empty()) std::cout << json << '\n';
        else open_out(mine_out) << json << '\n';
      } else if (*sample) {
        scfg.bands = parse_bands(bands_text);
        if (!manual_path.empty()) scfg.manual_pairs = read_pairs(manual_path);
        const auto store = embed::load_vectors_file(sample_vectors);
        const auto pairs = miner::sample_pairs(miner::identifier_stats(files, mine_threads), store, scfg);
        auto out = open_out(mine_out);
        out << "id1,id2\n";
        for (const auto& p : pairs) out << p.id1.text() << ',' << p.id2.text() << '\n';
        std::cerr << "sampled " << pairs.size() << " pairs\n";
      } else if (*contexts) {
        std::set<std::string> ids;
        for (const auto& p : read_pairs(ctx_pairs)) {
          ids.insert(p.id1.text());
          ids.insert(p.id2.text());
        }
        std::vector<CodeContext> all;
        for (const auto& id : ids) {
          auto s = miner::extract_contexts(files, id, per_identifier, ctx_seed ^ embed::fnv1a(id));
          if (s.short_of_request)
            std::cerr << "warning: " << id << " has " << s.available << " of " << per_identifier << " contexts\n";
          all.insert(all.end(), s.contexts.begin(), s.contexts.end());
        }
        auto out = open_out(mine_out);
        write_contexts_jsonl(out, all);
      } else if (*tokens) {
        auto out = open_out(mine_out);
        for (const auto& f : files) {
          const auto occ = miner::lex_identifiers(f.text);
          for (std::size_t i = 0; i < occ.size(); ++i) out << (i ? " " : "") << occ[i].name;
          if (!occ.empty()) out << '\n';
        }
      }
    } else if (*score) {
      const Benchmark bench = read_bench(score_bench);
      const auto pairs = bench_pairs(bench);
      std::vector<std::optional<double>> scores;
      if (!score_vectors.empty()) {
        scores = embed::score_pairs(embed::load_vectors_file(score_vectors), pairs);
      } else if (!score_kind.empty()) {
        const auto kind = strdist::parse_kind(score_kind);
        for (const auto& p : pairs) scores.emplace_back(strdist::lexical_similarity(p.id1.text(), p.id2.text(), kind));
      } else {
        throw ConfigError("score needs --vectors or --kind");
      }
      auto out = open_out(score_out);
      eval::write_scores(out, pairs, scores);
    } else if (*ev) {
      const Benchmark bench = read_bench(ev_bench);
      std::vector<eval::ScoreMatrix> files;
      for (const auto& path : ev_scores) {
        auto in = open_in(path);
        files.push_back(eval::read_scores(in, fs::path(path).stem().string()));
      }
      const auto matrix = eval::align_to_benchmark(bench, files);
      const std::string variant = ev_variant.empty() ? std::string(to_string(bench.variant)) : ev_variant;
      auto rows = eval::evaluate_all(matrix, bench, variant);
      if (!ev_tags.empty()) {
        auto in = open_in(ev_tags);
        const auto tags = eval::parse_subset_tags(in);
        const auto sub = eval::subset_report(matrix, bench, tags, variant);
        rows.insert(rows.end(), sub.begin(), sub.end());
      }
      std::cout << eval::format_table(rows);
      open_out(ev_out) << eval::to_json(rows) << '\n';
    } else if (*en) {
      const Benchmark bench = read_bench(en_bench);
      const auto task = eval::parse_task(en_task);
      std::vector<eval::ScoreMatrix> files;
      for (auto name : ensemble::kRepresentations) {
        const fs::path p = fs::path(en_dir) / (std::string(name) + ".csv");
        auto in = open_in(p.string());
        files.push_back(eval::read_scores(in, std::string(name)));
      }
      const auto matrix = eval::align_to_benchmark(bench, files);
      std::vector<ensemble::PairScores> data;
      std::vector<double> targets;
      for (std::size_t i = 0; i < bench.scores.size(); ++i) {
        const auto g = eval::gold(bench.scores[i], task);
        if (!g) continue;
        ensemble::PairScores ps{bench.scores[i].pair, {}};
        for (std::size_t c = 0; c < ensemble::kScoreColumns; ++c)
          ps.scores[c] = matrix.column(std::string(ensemble::kRepresentations[c]))[i];
        data.push_back(std::move(ps));
        targets.push_back(*g);
      }
      auto din = open_in(en_dict);
      const auto dict = ensemble::load_dictionary(din);
      const auto model = ensemble::fit(data, targets, dict);
      open_out(en_out) << ensemble::to_json(model) << '\n';
      if (!model.regressor.converged) std::cerr << "warning: solver stopped before convergence\n";
      if (en_loo) {
        const auto loo = ensemble::leave_one_out(data, targets, dict, {}, en_threads);
        std::printf("ensemble\t%.6f\n", loo.correlation);
        for (auto name : ensemble::kRepresentations) {
          try {
            const auto e = eval::evaluate(matrix.pairs(), matrix.column(std::string(name)), bench, task);
            std::printf("%s\t%.6f\n", std::string(name).c_str(), e.correlation);
          } catch (const Error&) {
            std::printf("%s\t-\n", std::string(name).c_str());
          }
        }
      }
    } else if (*serve) {
      auto cin = open_in(sv_contexts);
      auto pool = survey::make_pool(read_pairs(sv_pairs), parse_contexts_jsonl(cin));
      survey::SurveyStore store(std::move(pool), sv_data, survey::seed_from_env());
      survey::Server server(store);
      std::cerr << "listening on " << sv_host << ':' << sv_port << '\n';
      if (!server.listen(sv_host, sv_port)) throw ConfigError("cannot listen on port " + std::to_string(sv_port));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
