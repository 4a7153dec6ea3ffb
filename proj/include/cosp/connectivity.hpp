#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "cosp/graph.hpp"

namespace cosp {

struct ComponentLabeling {
  // Labels are 0..count-1, numbered by smallest contained node.
  std::vector<int> component_of;
  std::vector<std::vector<Node>> members;

  int count() const { return static_cast<int>(members.size()); }
};

ComponentLabeling connected_components(const Graph& g);

// Bipartite forest over blocks and cut nodes; an edge (b, c) means cut node
// cut_nodes[c] belongs to block b.
struct BlockCutTree {
  int num_blocks = 0;
  std::vector<Node> cut_nodes;
  std::vector<std::pair<int, int>> edges;
};

// Components, maximal biconnected blocks (bridges become 2-node blocks;
// isolated nodes belong to no block), cut nodes and the block-cut tree.
class ConnectivityDecomposition {
 public:
  ConnectivityDecomposition() = default;

  int num_nodes() const { return static_cast<int>(components_.component_of.size()); }
  const ComponentLabeling& components() const { return components_; }
  int component_of(Node v) const { return components_.component_of[v]; }

  // Sorted node lists, ordered by (smallest node, size, contents).
  const std::vector<std::vector<Node>>& blocks() const { return blocks_; }
  const std::vector<Node>& cut_nodes() const { return cut_nodes_; }
  bool is_cut_node(Node v) const { return is_cut_[v] != 0; }
  // Ids of blocks containing v, ascending.
  std::span<const int> blocks_of(Node v) const {
    return std::span<const int>(node_blocks_).subspan(
        block_offsets_[v], block_offsets_[v + 1] - block_offsets_[v]);
  }

  const BlockCutTree& block_cut_tree() const { return tree_; }

  std::uint64_t graph_fingerprint() const { return fingerprint_; }

 private:
  friend ConnectivityDecomposition biconnected_decomposition(const Graph& g);

  ComponentLabeling components_;
  std::vector<std::vector<Node>> blocks_;
  std::vector<Node> cut_nodes_;
  std::vector<char> is_cut_;
  // CSR: blocks of v are node_blocks_[block_offsets_[v] .. block_offsets_[v + 1]).
  std::vector<std::size_t> block_offsets_;
  std::vector<int> node_blocks_;
  BlockCutTree tree_;
  std::uint64_t fingerprint_ = 0;
};

// Iterative lowpoint DFS (Hopcroft-Tarjan); O(n + m), no recursion.
ConnectivityDecomposition biconnected_decomposition(const Graph& g);

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

std::vector<int> bfs_distances(const Graph& g, Node source);
// Row-major n x n distance matrix.
std::vector<int> all_pairs_distances(const Graph& g);

// Brute-force oracles; exponential, intended for n <= 20.
bool verify_block_bruteforce(const Graph& g, std::span<const Node> nodes);
std::vector<std::vector<Node>> bruteforce_blocks(const Graph& g);
std::vector<Node> bruteforce_cut_nodes(const Graph& g);

}  // namespace cosp
