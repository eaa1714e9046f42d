#include "idbench/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <istream>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "idbench/errors.hpp"
#include "idbench/evaluator.hpp"
#include "idbench/tokenize.hpp"

namespace idbench::ensemble {

Dictionary load_dictionary(std::istream& in) {
  Dictionary dict;
  for (std::string line; std::getline(in, line);) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    if (!line.empty()) dict.insert(line);
  }
  return dict;
}

std::array<double, kFeatures> FeatureVector::values() const {
  std::array<double, kFeatures> v{};
  std::copy(scores.begin(), scores.end(), v.begin());
  v[7] = len1;
  v[8] = len2;
  v[9] = subtok1;
  v[10] = subtok2;
  v[11] = nondict1;
  v[12] = nondict2;
  return v;
}

FeatureVector extract_features(const IdentifierPair& pair, const std::array<double, kScoreColumns>& scores,
                               const Dictionary& dict) {
  if (dict.empty()) throw ConfigError("dictionary is empty");
  FeatureVector f;
  f.scores = scores;
  auto describe = [&](const Identifier& id, double& len, double& subtok, double& nondict) {
    const auto parts = tokenize_identifier(id.text());
    len = static_cast<double>(id.size());
    subtok = static_cast<double>(parts.size());
    nondict = static_cast<double>(
        std::count_if(parts.begin(), parts.end(), [&](const std::string& s) { return !dict.count(s); }));
  };
  describe(pair.id1, f.len1, f.subtok1, f.nondict1);
  describe(pair.id2, f.len2, f.subtok2, f.nondict2);
  return f;
}

namespace {

std::vector<double> row_for(const PairScores& p, const std::array<double, kScoreColumns>& impute,
                            const Dictionary& dict) {
  std::array<double, kScoreColumns> s{};
  for (std::size_t c = 0; c < kScoreColumns; ++c) s[c] = p.scores[c].value_or(impute[c]);
  const auto v = extract_features(p.pair, s, dict).values();
  return {v.begin(), v.end()};
}

Model fit_rows(std::span<const PairScores> data, std::span<const double> targets,
               std::span<const std::size_t> rows, const Dictionary& dict, const svr::SvrConfig& cfg) {
  Model m;
  m.impute = column_means(data, rows);
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (std::size_t r : rows) {
    x.push_back(row_for(data[r], m.impute, dict));
    y.push_back(targets[r]);
  }
  m.regressor = svr::fit(x, y, cfg);
  return m;
}

}  // namespace

std::array<double, kScoreColumns> column_means(std::span<const PairScores> data,
                                               std::span<const std::size_t> rows) {
  std::array<double, kScoreColumns> mean{};
  for (std::size_t c = 0; c < kScoreColumns; ++c) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t r : rows) {
      if (data[r].scores[c]) {
        sum += *data[r].scores[c];
        ++n;
      }
    }
    mean[c] = n ? sum / static_cast<double>(n) : 0.0;
  }
  return mean;
}

double Model::predict(const PairScores& p, const Dictionary& dict) const {
  return regressor.predict(row_for(p, impute, dict));
}

double Model::predict_clamped(const PairScores& p, const Dictionary& dict) const {
  return std::clamp(predict(p, dict), 0.0, 1.0);
}

Model fit(std::span<const PairScores> data, std::span<const double> targets, const Dictionary& dict,
          const svr::SvrConfig& cfg) {
  if (data.size() != targets.size()) throw ValidationError("pair and target counts differ");
  std::vector<std::size_t> rows(data.size());
  std::iota(rows.begin(), rows.end(), 0);
  return fit_rows(data, targets, rows, dict, cfg);
}

LooResult leave_one_out(std::span<const PairScores> data, std::span<const double> targets,
                        const Dictionary& dict, const svr::SvrConfig& cfg, std::size_t threads) {
  if (data.size() != targets.size()) throw ValidationError("pair and target counts differ");
  const std::size_t n = data.size();
  if (n < 4) throw InsufficientDataError("leave-one-out needs at least four pairs");
  if (dict.empty()) throw ConfigError("dictionary is empty");
  cfg.validate();

  LooResult out;
  out.predictions.assign(n, 0.0);
  std::vector<char> converged(n, 1);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::vector<std::size_t> rows;
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      rows.clear();
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) rows.push_back(j);
      const Model m = fit_rows(data, targets, rows, dict, cfg);
      out.predictions[i] = m.predict(data[i], dict);
      converged[i] = m.regressor.converged;
    }
  };
  threads = std::clamp<std::size_t>(threads, 1, n);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  out.all_converged = std::all_of(converged.begin(), converged.end(), [](char c) { return c != 0; });
  out.correlation = eval::spearman(out.predictions, targets);
  return out;
}

std::string to_json(const Model& m) {
  nlohmann::json j = {
      {"representations", std::vector<std::string>(kRepresentations.begin(), kRepresentations.end())},
      {"features", {"lv", "nw", "w2v-cbow", "w2v-sg", "ft-cbow", "ft-sg", "path", "len1", "len2", "subtok1",
                    "subtok2", "nondict1", "nondict2"}},
      {"impute", m.impute},
      {"regressor", nlohmann::json::parse(svr::to_json(m.regressor))},
  };
  return j.dump(2);
}

Model model_from_json(std::string_view text) {
  Model m;
  try {
    auto j = nlohmann::json::parse(text);
    j.at("impute").get_to(m.impute);
    m.regressor = svr::model_from_json(j.at("regressor").dump());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("ensemble JSON: ") + e.what(), 0);
  }
  if (m.regressor.input_dim != kFeatures) throw ParseError("ensemble JSON: regressor expects wrong arity", 0);
  return m;
}

}  // namespace idbench::ensemble
