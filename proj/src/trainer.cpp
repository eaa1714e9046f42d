#include "idbench/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <map>
#include <sstream>
#include <thread>

#include "idbench/errors.hpp"

namespace idbench::embed {

Mode parse_mode(std::string_view name) {
  if (name == "cbow") return Mode::cbow;
  if (name == "sg" || name == "skipgram") return Mode::skipgram;
  throw ValidationError("unknown training mode '" + std::string(name) + "'");
}

void TrainConfig::validate() const {
  if (dim < 1) throw ConfigError("dim must be >= 1");
  if (window < 1) throw ConfigError("window must be >= 1");
  if (negatives < 1) throw ConfigError("negatives must be >= 1");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
  if (subword && (subword->first < 1 || subword->first > subword->second))
    throw ConfigError("invalid subword range");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

Corpus read_corpus(std::istream& in) {
  Corpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::vector<std::string> sentence;
    std::string tok;
    while (ss >> tok) sentence.push_back(std::move(tok));
    if (!sentence.empty()) corpus.push_back(std::move(sentence));
  }
  return corpus;
}

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log sigmoid(x) without overflow.
double log_sigmoid(double x) {
  return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <bool Atomic>
double load(const double& x) {
  if constexpr (Atomic) {
    return std::atomic_ref<double>(const_cast<double&>(x)).load(std::memory_order_relaxed);
  } else {
    return x;
  }
}

template <bool Atomic>
void add_to(double& x, double delta) {
  if constexpr (Atomic) {
    std::atomic_ref<double> ref(x);
    ref.store(ref.load(std::memory_order_relaxed) + delta, std::memory_order_relaxed);
  } else {
    x += delta;
  }
}

}  // namespace

double ns_loss(std::span<const double> hidden, std::span<const Vector> outputs,
               std::span<const int> labels) {
  double loss = 0.0;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    double s = dot(hidden, outputs[i]);
    loss -= log_sigmoid(labels[i] ? s : -s);
  }
  return loss;
}

NsGradient ns_gradient(std::span<const double> hidden, std::span<const Vector> outputs,
                       std::span<const int> labels) {
  NsGradient g;
  g.d_hidden.assign(hidden.size(), 0.0);
  g.d_outputs.resize(outputs.size());
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const double s = dot(hidden, outputs[i]);
    g.loss -= log_sigmoid(labels[i] ? s : -s);
    // d/ds of -log sigmoid(+-s) is sigmoid(s) - label.
    const double coef = sigmoid(s) - labels[i];
    g.d_outputs[i].resize(hidden.size());
    for (std::size_t k = 0; k < hidden.size(); ++k) {
      g.d_hidden[k] += coef * outputs[i][k];
      g.d_outputs[i][k] = coef * hidden[k];
    }
  }
  return g;
}

Trainer::Trainer(const Corpus& corpus, TrainConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();

  std::map<std::string, std::size_t> freq;
  for (const auto& sentence : corpus)
    for (const auto& tok : sentence) ++freq[tok];
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [tok, n] : freq)
    if (n >= cfg_.min_count) kept.emplace_back(tok, n);
  if (kept.empty()) throw ConfigError("empty vocabulary after min_count filtering");
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (auto& [tok, n] : kept) {
    word_index_.emplace(tok, vocab_.size());
    vocab_.push_back(tok);
    counts_.push_back(n);
  }

  const std::size_t V = vocab_.size();
  input_rows_.resize(V);
  std::unordered_map<std::string, std::size_t> ngram_rows;
  for (std::size_t w = 0; w < V; ++w) {
    input_rows_[w].push_back(w);
    if (!cfg_.subword) continue;
    for (const std::string& gram : char_ngrams(vocab_[w], cfg_.subword->first, cfg_.subword->second)) {
      std::string key = cfg_.buckets ? "#" + std::to_string(fnv1a(gram) % cfg_.buckets) : gram;
      auto [it, inserted] = ngram_rows.emplace(key, V + ngram_keys_.size());
      if (inserted) ngram_keys_.push_back(key);
      input_rows_[w].push_back(it->second);
    }
  }

  for (const auto& sentence : corpus) {
    std::vector<std::size_t> ids;
    for (const auto& tok : sentence) {
      auto it = word_index_.find(tok);
      if (it != word_index_.end()) ids.push_back(it->second);
    }
    total_tokens_ += ids.size();
    if (!ids.empty()) sentences_.push_back(std::move(ids));
  }

  double acc = 0.0;
  cumulative_.reserve(V);
  for (std::size_t n : counts_) {
    acc += std::pow(static_cast<double>(n), 0.75);
    cumulative_.push_back(acc);
  }

  const std::size_t rows = V + ngram_keys_.size();
  const double bound = 0.5 / static_cast<double>(cfg_.dim);
  std::mt19937_64 rng(cfg_.seed);
  std::uniform_real_distribution<double> init(-bound, bound);
  input_.resize(rows * cfg_.dim);
  for (double& x : input_) x = init(rng);
  output_.assign(V * cfg_.dim, 0.0);
}

std::size_t Trainer::sample_negative(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> u(0.0, cumulative_.back());
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u(rng));
  return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
}

double Trainer::current_lr() const {
  const double total = static_cast<double>(cfg_.epochs) * static_cast<double>(total_tokens_);
  const std::size_t done =
      std::atomic_ref<std::size_t>(const_cast<std::size_t&>(processed_)).load(std::memory_order_relaxed);
  const double progress = total > 0 ? static_cast<double>(done) / total : 1.0;
  return cfg_.learning_rate * std::max(1e-4, 1.0 - progress);
}

Vector Trainer::hidden_of(std::span<const std::size_t> rows) const {
  Vector h(cfg_.dim, 0.0);
  for (std::size_t r : rows) {
    const double* row = &input_[r * cfg_.dim];
    for (std::size_t k = 0; k < cfg_.dim; ++k) h[k] += row[k];
  }
  for (double& x : h) x /= static_cast<double>(rows.size());
  return h;
}

template <bool Atomic>
void Trainer::update(std::span<const std::size_t> input_rows, std::size_t target,
                     std::mt19937_64& rng, double lr, Vector& hidden, Vector& grad) {
  const std::size_t dim = cfg_.dim;
  std::fill(hidden.begin(), hidden.end(), 0.0);
  for (std::size_t r : input_rows) {
    const double* row = &input_[r * dim];
    for (std::size_t k = 0; k < dim; ++k) hidden[k] += load<Atomic>(row[k]);
  }
  const double inv = 1.0 / static_cast<double>(input_rows.size());
  for (double& x : hidden) x *= inv;
  std::fill(grad.begin(), grad.end(), 0.0);

  auto step = [&](std::size_t word, int label) {
    double* out = &output_[word * dim];
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) s += hidden[k] * load<Atomic>(out[k]);
    // Gradient descent on ns_loss: -lr * (sigmoid(s) - label).
    const double g = lr * (label - sigmoid(s));
    for (std::size_t k = 0; k < dim; ++k) {
      grad[k] += g * load<Atomic>(out[k]);
      add_to<Atomic>(out[k], g * hidden[k]);
    }
  };
  step(target, 1);
  for (std::size_t i = 0; i < cfg_.negatives; ++i) {
    std::size_t neg = sample_negative(rng);
    if (neg == target) continue;
    step(neg, 0);
  }
  for (std::size_t r : input_rows) {
    double* row = &input_[r * dim];
    for (std::size_t k = 0; k < dim; ++k) add_to<Atomic>(row[k], grad[k]);
  }
}

template <bool Atomic>
void Trainer::train_range(std::size_t first, std::size_t last, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vector hidden(cfg_.dim), grad(cfg_.dim);
  std::vector<std::size_t> context_rows;
  const std::size_t window = cfg_.window;
  for (std::size_t s = first; s < last; ++s) {
    const auto& sent = sentences_[s];
    for (std::size_t i = 0; i < sent.size(); ++i) {
      const double lr = current_lr();
      const std::size_t lo = i >= window ? i - window : 0;
      const std::size_t hi = std::min(sent.size(), i + window + 1);
      if (cfg_.mode == Mode::skipgram) {
        for (std::size_t j = lo; j < hi; ++j) {
          if (j == i) continue;
          update<Atomic>(input_rows_[sent[i]], sent[j], rng, lr, hidden, grad);
        }
      } else {
        context_rows.clear();
        for (std::size_t j = lo; j < hi; ++j) {
          if (j == i) continue;
          const auto& rows = input_rows_[sent[j]];
          context_rows.insert(context_rows.end(), rows.begin(), rows.end());
        }
        if (!context_rows.empty()) update<Atomic>(context_rows, sent[i], rng, lr, hidden, grad);
      }
      if constexpr (Atomic) {
        std::atomic_ref<std::size_t>(processed_).fetch_add(1, std::memory_order_relaxed);
      } else {
        ++processed_;
      }
    }
  }
}

void Trainer::run() {
  for (std::size_t epoch = 0; epoch < cfg_.epochs; ++epoch) {
    const std::uint64_t epoch_seed = cfg_.seed * 0x9E3779B97F4A7C15ull + epoch + 1;
    if (cfg_.threads == 1) {
      train_range<false>(0, sentences_.size(), epoch_seed);
      continue;
    }
    std::vector<std::thread> workers;
    const std::size_t n = sentences_.size();
    for (std::size_t t = 0; t < cfg_.threads; ++t) {
      const std::size_t first = n * t / cfg_.threads;
      const std::size_t last = n * (t + 1) / cfg_.threads;
      workers.emplace_back([this, first, last, epoch_seed, t] {
        train_range<true>(first, last, epoch_seed + 7919 * (t + 1));
      });
    }
    for (auto& w : workers) w.join();
  }
}

std::vector<LossExample> Trainer::sample_examples(std::size_t n, std::uint64_t seed) const {
  std::vector<std::pair<std::size_t, std::size_t>> positions;
  for (std::size_t s = 0; s < sentences_.size(); ++s)
    if (sentences_[s].size() >= 2)
      for (std::size_t i = 0; i < sentences_[s].size(); ++i) positions.emplace_back(s, i);
  std::vector<LossExample> out;
  if (positions.empty()) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, positions.size() - 1);
  for (std::size_t e = 0; e < n; ++e) {
    auto [s, i] = positions[pick(rng)];
    const auto& sent = sentences_[s];
    const std::size_t lo = i >= cfg_.window ? i - cfg_.window : 0;
    const std::size_t hi = std::min(sent.size() - 1, i + cfg_.window);
    std::uniform_int_distribution<std::size_t> off(lo, hi);
    std::size_t j = off(rng);
    while (j == i) j = off(rng);
    LossExample ex{sent[i], sent[j], {}};
    for (std::size_t k = 0; k < cfg_.negatives; ++k) {
      std::size_t neg = sample_negative(rng);
      if (neg != ex.context) ex.negatives.push_back(neg);
    }
    out.push_back(std::move(ex));
  }
  return out;
}

double Trainer::loss(std::span<const LossExample> examples) const {
  if (examples.empty()) return 0.0;
  double total = 0.0;
  std::vector<Vector> outputs;
  std::vector<int> labels;
  for (const LossExample& ex : examples) {
    outputs.clear();
    labels.clear();
    auto row = [&](std::size_t w) {
      return Vector(output_.begin() + static_cast<std::ptrdiff_t>(w * cfg_.dim),
                    output_.begin() + static_cast<std::ptrdiff_t>((w + 1) * cfg_.dim));
    };
    outputs.push_back(row(ex.context));
    labels.push_back(1);
    for (std::size_t neg : ex.negatives) {
      outputs.push_back(row(neg));
      labels.push_back(0);
    }
    total += ns_loss(hidden_of(input_rows_[ex.center]), outputs, labels);
  }
  return total / static_cast<double>(examples.size());
}

EmbeddingStore Trainer::store() const {
  EmbeddingStore store(cfg_.dim);
  for (std::size_t w = 0; w < vocab_.size(); ++w) {
    Vector v(cfg_.dim, 0.0);
    for (std::size_t r : input_rows_[w])
      for (std::size_t k = 0; k < cfg_.dim; ++k) v[k] += input_[r * cfg_.dim + k];
    store.add(vocab_[w], std::move(v));
  }
  if (cfg_.subword) {
    NgramTable table;
    table.min_n = cfg_.subword->first;
    table.max_n = cfg_.subword->second;
    table.buckets = cfg_.buckets;
    const std::size_t V = vocab_.size();
    for (std::size_t g = 0; g < ngram_keys_.size(); ++g) {
      auto first = input_.begin() + static_cast<std::ptrdiff_t>((V + g) * cfg_.dim);
      table.vectors.emplace(ngram_keys_[g], Vector(first, first + static_cast<std::ptrdiff_t>(cfg_.dim)));
    }
    store.set_ngrams(std::move(table));
  }
  return store;
}

EmbeddingStore train(const Corpus& corpus, const TrainConfig& cfg) {
  Trainer trainer(corpus, cfg);
  trainer.run();
  return trainer.store();
}

}  // namespace idbench::embed
