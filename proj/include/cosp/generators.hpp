#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cosp/graph.hpp"
#include "cosp/hash.hpp"

namespace cosp {

// Deterministic RNG used everywhere; all randomness is derived from an
// explicit seed.
using Rng = std::mt19937_64;

// Uniform integer in [0, bound). Avoids std::uniform_int_distribution so
// sequences are identical across standard libraries.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}
std::vector<Node> random_permutation(Rng& rng, int n);

// Derives an independent stream seed for item `index` of a seeded batch.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed * 0x9e3779b97f4a7c15ULL + mix64(index + 1));
}

namespace graphs {

Graph empty(int n);
Graph path(int n);
Graph cycle(int n);
Graph complete(int n);
Graph star(int leaves);
Graph bowtie();
Graph petersen();
Graph rook_4x4();
Graph shrikhande();
Graph erdos_renyi(int n, double p, Rng& rng);
// n nodes, exactly min(m, n(n-1)/2) distinct edges chosen uniformly.
Graph random_sparse(int n, std::int64_t m, Rng& rng);
Graph random_tree(int n, Rng& rng);

}  // namespace graphs

// How blocks of a glued graph attach: block i > 0 shares exactly one node
// with block parent[i] < i. parent[0] must be -1. `shared_slot[i]`, when
// non-negative, picks which node of the parent block (by position in that
// block's node list) is shared; otherwise the choice is seeded.
struct Attachment {
  std::vector<int> parent;
  std::vector<int> shared_slot;

  static Attachment chain(int blocks);
  static Attachment star(int blocks);
  static Attachment random(int blocks, Rng& rng);
};

class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Glues random biconnected blocks (cycle plus seeded chords; size 2 is a
// single edge) along a tree of cut nodes. Throws ConstructionError.
Graph generate_glued(std::span<const int> block_sizes, const Attachment& attachment,
                     std::uint64_t seed);

}  // namespace cosp
