#ifndef CSCREEN_EXPERIMENTS_CORPUS_HPP
#define CSCREEN_EXPERIMENTS_CORPUS_HPP

#include "cscreen/graph.hpp"
#include "cscreen/random.hpp"

#include <cstdint>

namespace cscreen::experiments {

/// Random DMG ensemble: independent directed edges on ordered pairs and
/// bidirected edges on unordered pairs.
struct CorpusConfig {
  std::size_t n = 5;
  double p_dir = 0.3;
  double p_bi = 0.1;
  std::size_t count = 100;
  std::uint64_t seed = 1;

  void validate() const {
    if (n < 1) throw InputError("corpus: n must be at least 1");
    if (!(p_dir >= 0.0 && p_dir <= 1.0)) throw InputError("corpus: p_dir must lie in [0,1]");
    if (!(p_bi >= 0.0 && p_bi <= 1.0)) throw InputError("corpus: p_bi must lie in [0,1]");
  }
};

/// Replicate `i` of the ensemble. Draw order: ordered pairs (a, b), a != b,
/// lexicographically, then unordered pairs a < b lexicographically.
inline DirectedMixedGraph random_dmg(const CorpusConfig &cfg, std::size_t i) {
  cfg.validate();
  Rng rng(derive_seed(cfg.seed, i));
  GraphBuilder b(cfg.n);
  for (std::size_t a = 0; a < cfg.n; ++a)
    for (std::size_t c = 0; c < cfg.n; ++c)
      if (a != c && rng.bernoulli(cfg.p_dir)) b.add_directed(NodeId(a), NodeId(c));
  for (std::size_t a = 0; a < cfg.n; ++a)
    for (std::size_t c = a + 1; c < cfg.n; ++c)
      if (rng.bernoulli(cfg.p_bi)) b.add_bidirected(NodeId(a), NodeId(c));
  return b.build();
}

} // namespace cscreen::experiments

#endif
