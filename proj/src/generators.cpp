#include "cosp/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cosp {

std::vector<Node> random_permutation(Rng& rng, int n) {
  std::vector<Node> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[uniform_below(rng, static_cast<std::uint64_t>(i) + 1)]);
  }
  return perm;
}

namespace graphs {

Graph empty(int n) { return Graph(n, std::span<const std::pair<Node, Node>>{}); }

Graph path(int n) {
  std::vector<std::pair<Node, Node>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

Graph cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 nodes");
  std::vector<std::pair<Node, Node>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, edges);
}

Graph complete(int n) {
  std::vector<std::pair<Node, Node>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph(n, edges);
}

Graph star(int leaves) {
  std::vector<std::pair<Node, Node>> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph(leaves + 1, edges);
}

Graph bowtie() { return Graph(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}}); }

Graph petersen() {
  std::vector<std::pair<Node, Node>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, edges);
}

Graph rook_4x4() {
  std::vector<std::pair<Node, Node>> edges;
  for (int a = 0; a < 16; ++a) {
    for (int b = a + 1; b < 16; ++b) {
      if (a / 4 == b / 4 || a % 4 == b % 4) edges.emplace_back(a, b);
    }
  }
  return Graph(16, edges);
}

// Cayley graph of Z4 x Z4 with connection set {±(0,1), ±(1,0), ±(1,1)}.
Graph shrikhande() {
  static constexpr int kSteps[3][2] = {{0, 1}, {1, 0}, {1, 1}};
  std::vector<std::pair<Node, Node>> edges;
  for (int a = 0; a < 16; ++a) {
    const int x = a / 4;
    const int y = a % 4;
    for (const auto& s : kSteps) {
      edges.emplace_back(a, ((x + s[0]) % 4) * 4 + (y + s[1]) % 4);
    }
  }
  return Graph(16, edges);
}

Graph erdos_renyi(int n, double p, Rng& rng) {
  std::vector<std::pair<Node, Node>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (uniform_unit(rng) < p) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges);
}

Graph random_sparse(int n, std::int64_t m, Rng& rng) {
  const std::int64_t max_edges = static_cast<std::int64_t>(n) * (n - 1) / 2;
  m = std::min(m, max_edges);
  std::set<std::pair<Node, Node>> chosen;
  while (static_cast<std::int64_t>(chosen.size()) < m) {
    Node a = static_cast<Node>(uniform_below(rng, n));
    Node b = static_cast<Node>(uniform_below(rng, n));
    if (a == b) continue;
    chosen.emplace(std::min(a, b), std::max(a, b));
  }
  std::vector<std::pair<Node, Node>> edges(chosen.begin(), chosen.end());
  return Graph(n, edges);
}

Graph random_tree(int n, Rng& rng) {
  std::vector<std::pair<Node, Node>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(static_cast<Node>(uniform_below(rng, i)), i);
  return Graph(n, edges);
}

}  // namespace graphs

Attachment Attachment::chain(int blocks) {
  Attachment a;
  for (int i = 0; i < blocks; ++i) a.parent.push_back(i - 1);
  a.shared_slot.assign(blocks, -1);
  return a;
}

Attachment Attachment::star(int blocks) {
  Attachment a;
  for (int i = 0; i < blocks; ++i) a.parent.push_back(i == 0 ? -1 : 0);
  a.shared_slot.assign(blocks, -1);
  if (blocks > 0) std::fill(a.shared_slot.begin() + 1, a.shared_slot.end(), 0);
  return a;
}

Attachment Attachment::random(int blocks, Rng& rng) {
  Attachment a;
  for (int i = 0; i < blocks; ++i) {
    a.parent.push_back(i == 0 ? -1 : static_cast<int>(uniform_below(rng, i)));
  }
  a.shared_slot.assign(blocks, -1);
  return a;
}

Graph generate_glued(std::span<const int> block_sizes, const Attachment& attachment,
                     std::uint64_t seed) {
  const int k = static_cast<int>(block_sizes.size());
  if (k == 0) return graphs::empty(0);
  if (static_cast<int>(attachment.parent.size()) != k) {
    throw ConstructionError("attachment must name a parent for every block");
  }
  if (!attachment.shared_slot.empty() && static_cast<int>(attachment.shared_slot.size()) != k) {
    throw ConstructionError("shared_slot size does not match block count");
  }
  if (attachment.parent[0] != -1) throw ConstructionError("block 0 must be the tree root");
  for (int i = 0; i < k; ++i) {
    if (block_sizes[i] < 2) throw ConstructionError("block size must be at least 2");
    if (i > 0 && (attachment.parent[i] < 0 || attachment.parent[i] >= i)) {
      throw ConstructionError("attachment is not a tree: block " + std::to_string(i) +
                              " must attach to an earlier block");
    }
  }

  Rng rng(seed);
  std::vector<std::vector<Node>> block_nodes(k);
  Node next = 0;
  std::vector<std::pair<Node, Node>> edges;
  for (int i = 0; i < k; ++i) {
    auto& nodes = block_nodes[i];
    if (i > 0) {
      const auto& parent_nodes = block_nodes[attachment.parent[i]];
      int slot = attachment.shared_slot.empty() ? -1 : attachment.shared_slot[i];
      if (slot >= static_cast<int>(parent_nodes.size())) {
        throw ConstructionError("shared_slot out of range for block " + std::to_string(i));
      }
      if (slot < 0) slot = static_cast<int>(uniform_below(rng, parent_nodes.size()));
      nodes.push_back(parent_nodes[slot]);
    }
    while (static_cast<int>(nodes.size()) < block_sizes[i]) nodes.push_back(next++);

    const int s = block_sizes[i];
    if (s == 2) {
      edges.emplace_back(nodes[0], nodes[1]);
      continue;
    }
    std::vector<Node> order = random_permutation(rng, s);
    for (int j = 0; j < s; ++j) edges.emplace_back(nodes[order[j]], nodes[order[(j + 1) % s]]);
    for (int a = 0; a < s; ++a) {
      for (int b = a + 1; b < s; ++b) {
        if (uniform_unit(rng) < 0.3) edges.emplace_back(nodes[a], nodes[b]);
      }
    }
  }
  return Graph(next, edges);
}

}  // namespace cosp
