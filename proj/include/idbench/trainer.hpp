#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "idbench/embeddings.hpp"

// Desk-scale word2vec / FastText style trainer with negative sampling.
namespace idbench::embed {

enum class Mode { cbow, skipgram };

Mode parse_mode(std::string_view name);  // "cbow" | "sg"

struct TrainConfig {
  Mode mode = Mode::skipgram;
  std::size_t dim = 100;
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double learning_rate = 0.025;
  std::size_t min_count = 5;
  // Character n-gram range; enables FastText-style composition.
  std::optional<std::pair<std::size_t, std::size_t>> subword;
  // 0 keeps an explicit n-gram table; otherwise hash n-grams into buckets.
  std::uint64_t buckets = 0;
  std::uint64_t seed = 1;
  // 1 is the deterministic mode. More threads update shared rows without
  // synchronisation beyond relaxed atomics, so results are not reproducible.
  std::size_t threads = 1;

  void validate() const;  // throws ConfigError
};

// One sentence per element; tokens in order.
using Corpus = std::vector<std::vector<std::string>>;

// Whitespace separated tokens, one sentence per line.
Corpus read_corpus(std::istream& in);

// Logistic negative-sampling loss for one hidden vector against a list of
// output vectors: -sum_i log sigmoid(s_i * h.o_i), s_i = +1 for label 1 and
// -1 for label 0.
double ns_loss(std::span<const double> hidden, std::span<const Vector> outputs,
               std::span<const int> labels);

struct NsGradient {
  double loss = 0.0;
  Vector d_hidden;
  std::vector<Vector> d_outputs;
};

NsGradient ns_gradient(std::span<const double> hidden, std::span<const Vector> outputs,
                       std::span<const int> labels);

// One positive (center, context) pair with its fixed negatives, by vocab index.
struct LossExample {
  std::size_t center = 0;
  std::size_t context = 0;
  std::vector<std::size_t> negatives;
};

class Trainer {
 public:
  // Builds the vocabulary (min_count, ordered by descending count then token)
  // and initialises parameters. Throws ConfigError on an empty vocabulary.
  Trainer(const Corpus& corpus, TrainConfig cfg);

  // Runs every configured epoch.
  void run();

  const std::vector<std::string>& vocabulary() const noexcept { return vocab_; }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }

  // Skip-gram examples drawn from the corpus with a separate seed.
  std::vector<LossExample> sample_examples(std::size_t n, std::uint64_t seed) const;

  // Mean ns_loss over the examples using the current parameters.
  double loss(std::span<const LossExample> examples) const;

  // Word vectors (sum of the word row and its n-gram rows when subwords are
  // enabled) plus the n-gram table.
  EmbeddingStore store() const;

 private:
  template <bool Atomic>
  void train_range(std::size_t first_sentence, std::size_t last_sentence, std::uint64_t seed);
  template <bool Atomic>
  void update(std::span<const std::size_t> input_rows, std::size_t target, std::mt19937_64& rng,
              double lr, Vector& hidden, Vector& grad);
  Vector hidden_of(std::span<const std::size_t> rows) const;
  std::size_t sample_negative(std::mt19937_64& rng) const;
  double current_lr() const;

  TrainConfig cfg_;
  std::vector<std::string> vocab_;
  std::vector<std::size_t> counts_;
  std::unordered_map<std::string, std::size_t> word_index_;
  std::vector<std::string> ngram_keys_;               // input row - vocab size -> key
  std::vector<std::vector<std::size_t>> input_rows_;  // per word
  std::vector<std::vector<std::size_t>> sentences_;
  std::vector<double> cumulative_;  // unigram^0.75
  std::vector<double> input_;       // rows x dim
  std::vector<double> output_;      // vocab x dim
  std::size_t total_tokens_ = 0;
  std::size_t processed_ = 0;  // approximate in parallel mode
};

EmbeddingStore train(const Corpus& corpus, const TrainConfig& cfg);

}  // namespace idbench::embed
