#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "idbench/embeddings.hpp"
#include "idbench/trainer.hpp"

namespace corpora {

inline std::string cluster_token(int cluster, std::size_t i) {
  return std::string(cluster == 0 ? "alpha" : "omega") + std::to_string(i);
}

// Sentences of `length` tokens, each drawn uniformly from one of two
// disjoint clusters, until `total` tokens are emitted.
inline idbench::embed::Corpus planted_clusters(std::size_t per_cluster, std::size_t total, std::uint64_t seed,
                                               std::size_t length = 20) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, per_cluster - 1);
  idbench::embed::Corpus out;
  std::size_t emitted = 0;
  while (emitted < total) {
    const int c = static_cast<int>(rng() & 1);
    std::vector<std::string> sentence;
    for (std::size_t i = 0; i < length && emitted < total; ++i, ++emitted) sentence.push_back(cluster_token(c, pick(rng)));
    out.push_back(std::move(sentence));
  }
  return out;
}

struct ClusterCosines {
  double intra = 0.0;
  double inter = 0.0;
};

inline ClusterCosines cluster_cosines(const idbench::embed::EmbeddingStore& store, std::size_t per_cluster) {
  std::vector<idbench::embed::Vector> v[2];
  for (int c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < per_cluster; ++i) v[c].push_back(idbench::embed::vector_for(store, cluster_token(c, i)));
  ClusterCosines out;
  std::size_t n_intra = 0, n_inter = 0;
  for (int c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < per_cluster; ++i)
      for (std::size_t j = i + 1; j < per_cluster; ++j, ++n_intra) out.intra += idbench::embed::cosine(v[c][i], v[c][j]);
  for (std::size_t i = 0; i < per_cluster; ++i)
    for (std::size_t j = 0; j < per_cluster; ++j, ++n_inter) out.inter += idbench::embed::cosine(v[0][i], v[1][j]);
  out.intra /= static_cast<double>(n_intra);
  out.inter /= static_cast<double>(n_inter);
  return out;
}

}  // namespace corpora
