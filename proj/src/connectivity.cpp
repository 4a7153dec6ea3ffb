#include "cosp/connectivity.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cosp {

namespace {

// Member lists come out sorted by scanning nodes in order.
void fill_members(ComponentLabeling& out, int count) {
  std::vector<std::size_t> sizes(count, 0);
  for (int c : out.component_of) ++sizes[c];
  out.members.resize(count);
  for (int c = 0; c < count; ++c) out.members[c].reserve(sizes[c]);
  for (Node v = 0; v < static_cast<Node>(out.component_of.size()); ++v) {
    out.members[out.component_of[v]].push_back(v);
  }
}

}  // namespace

ComponentLabeling connected_components(const Graph& g) {
  const int n = g.num_nodes();
  ComponentLabeling out;
  out.component_of.assign(n, -1);
  std::vector<Node> queue;
  int count = 0;
  for (Node s = 0; s < n; ++s) {
    if (out.component_of[s] >= 0) continue;
    const int label = count++;
    queue.assign(1, s);
    out.component_of[s] = label;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (Node w : g.neighbors(queue[head])) {
        if (out.component_of[w] < 0) {
          out.component_of[w] = label;
          queue.push_back(w);
        }
      }
    }
  }
  fill_members(out, count);
  return out;
}

namespace {

struct Frame {
  Node node;
  Node parent;
  int next_edge;
};

// Kept together so a visit touches one cache line.
struct Visit {
  int disc = -1;
  int low = 0;
};

}  // namespace

ConnectivityDecomposition biconnected_decomposition(const Graph& g) {
  const int n = g.num_nodes();
  ConnectivityDecomposition d;
  d.fingerprint_ = edge_fingerprint(g);
  d.is_cut_.assign(n, 0);
  // Each DFS tree is one component and owns a contiguous range of discovery
  // times; roots are visited in node order.
  int num_components = 0;
  std::vector<int> component_by_clock(n);

  std::vector<Visit> t(n);
  // (node, block) pairs in discovery order; block contents are built later.
  std::vector<std::pair<Node, int>> membership;
  int num_blocks = 0;
  std::vector<Node> node_stack;
  std::vector<Frame> frames;
  int clock = 0;

  for (Node root = 0; root < n; ++root) {
    if (t[root].disc >= 0) continue;
    const int component = num_components++;
    component_by_clock[clock] = component;
    t[root].disc = t[root].low = clock++;
    if (g.degree(root) == 0) continue;
    int root_children = 0;
    node_stack.push_back(root);
    frames.push_back({root, -1, 0});
    while (!frames.empty()) {
      Frame& f = frames.back();
      const Node u = f.node;
      auto nb = g.neighbors(u);
      if (f.next_edge < static_cast<int>(nb.size())) {
        const Node w = nb[f.next_edge++];
        if (w == f.parent) continue;  // simple graph: exactly one parent edge
        if (t[w].disc < 0) {
          component_by_clock[clock] = component;
          t[w].disc = t[w].low = clock++;
          node_stack.push_back(w);
          frames.push_back({w, u, 0});
        } else {
          t[u].low = std::min(t[u].low, t[w].disc);
        }
        continue;
      }
      const Node p = f.parent;
      frames.pop_back();
      if (p < 0) continue;
      t[p].low = std::min(t[p].low, t[u].low);
      if (t[u].low >= t[p].disc) {
        if (p == root) {
          ++root_children;
        } else {
          d.is_cut_[p] = 1;
        }
        const int b = num_blocks++;
        membership.emplace_back(p, b);
        Node x;
        do {
          x = node_stack.back();
          node_stack.pop_back();
          membership.emplace_back(x, b);
        } while (x != u);
      }
    }
    node_stack.clear();
    if (root_children >= 2) d.is_cut_[root] = 1;
  }
  d.components_.component_of.resize(n);
  for (Node v = 0; v < n; ++v) {
    d.components_.component_of[v] = component_by_clock[t[v].disc];
  }
  fill_members(d.components_, num_components);

  // Bucket memberships by node, then scan nodes in order so every block comes
  // out sorted without a per-block sort.
  d.block_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [v, b] : membership) ++d.block_offsets_[v + 1];
  for (int v = 0; v < n; ++v) d.block_offsets_[v + 1] += d.block_offsets_[v];
  d.node_blocks_.resize(membership.size());
  {
    std::vector<std::size_t> fill(d.block_offsets_.begin(), d.block_offsets_.end() - 1);
    std::vector<std::size_t> sizes(num_blocks, 0);
    for (const auto& [v, b] : membership) {
      d.node_blocks_[fill[v]++] = b;
      ++sizes[b];
    }
    d.blocks_.resize(num_blocks);
    for (int b = 0; b < num_blocks; ++b) d.blocks_[b].reserve(sizes[b]);
    for (Node v = 0; v < n; ++v) {
      for (int b : d.blocks_of(v)) d.blocks_[b].push_back(v);
    }
  }

  std::sort(d.blocks_.begin(), d.blocks_.end(), [](const auto& a, const auto& b) {
    if (a.front() != b.front()) return a.front() < b.front();
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  for (Node v = 0; v < n; ++v) {
    if (d.is_cut_[v]) d.cut_nodes_.push_back(v);
  }
  // Same offsets as before; refill with the final block ids.
  {
    std::vector<std::size_t> fill(d.block_offsets_.begin(), d.block_offsets_.end() - 1);
    for (int b = 0; b < static_cast<int>(d.blocks_.size()); ++b) {
      for (Node v : d.blocks_[b]) d.node_blocks_[fill[v]++] = b;
    }
  }

  d.tree_.num_blocks = static_cast<int>(d.blocks_.size());
  d.tree_.cut_nodes = d.cut_nodes_;
  for (int c = 0; c < static_cast<int>(d.cut_nodes_.size()); ++c) {
    for (int b : d.blocks_of(d.cut_nodes_[c])) d.tree_.edges.emplace_back(b, c);
  }
  std::sort(d.tree_.edges.begin(), d.tree_.edges.end());
  return d;
}

std::vector<int> bfs_distances(const Graph& g, Node source) {
  if (source < 0 || source >= g.num_nodes()) throw std::out_of_range("bfs source out of range");
  std::vector<int> dist(g.num_nodes(), kUnreachable);
  std::vector<Node> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Node u = queue[head];
    for (Node w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<int> all_pairs_distances(const Graph& g) {
  const int n = g.num_nodes();
  std::vector<int> out(static_cast<std::size_t>(n) * n);
  for (Node s = 0; s < n; ++s) {
    auto row = bfs_distances(g, s);
    std::copy(row.begin(), row.end(), out.begin() + static_cast<std::size_t>(s) * n);
  }
  return out;
}

namespace {

using Mask = std::uint32_t;
constexpr int kMaxBruteforceNodes = 20;

std::vector<Mask> adjacency_masks(const Graph& g) {
  if (g.num_nodes() > kMaxBruteforceNodes) {
    throw std::invalid_argument("brute-force block oracle limited to 20 nodes");
  }
  std::vector<Mask> adj(g.num_nodes(), 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= Mask{1} << e.v;
    adj[e.v] |= Mask{1} << e.u;
  }
  return adj;
}

bool induced_connected(const std::vector<Mask>& adj, Mask set) {
  if (set == 0) return true;
  Mask seen = set & (~set + 1);
  Mask frontier = seen;
  while (frontier) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
    next &= set & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == set;
}

// Connected, at least 2 nodes, and still connected after deleting any one
// node when it has 3 or more.
bool is_biconnected_set(const std::vector<Mask>& adj, Mask set) {
  const int size = std::popcount(set);
  if (size < 2 || !induced_connected(adj, set)) return false;
  if (size == 2) return true;
  for (Mask s = set; s; s &= s - 1) {
    if (!induced_connected(adj, set & ~(s & (~s + 1)))) return false;
  }
  return true;
}

}  // namespace

bool verify_block_bruteforce(const Graph& g, std::span<const Node> nodes) {
  const auto adj = adjacency_masks(g);
  Mask set = 0;
  for (Node v : nodes) set |= Mask{1} << v;
  if (!is_biconnected_set(adj, set)) return false;
  const Mask rest = ((Mask{1} << g.num_nodes()) - 1) & ~set;
  // Every non-empty subset of the remaining nodes, via the standard
  // submask walk.
  for (Mask extra = rest; extra; extra = (extra - 1) & rest) {
    if (is_biconnected_set(adj, set | extra)) return false;
  }
  return true;
}

std::vector<std::vector<Node>> bruteforce_blocks(const Graph& g) {
  const auto adj = adjacency_masks(g);
  const int n = g.num_nodes();
  std::vector<Mask> candidates;
  for (Mask set = 1; set < (Mask{1} << n); ++set) {
    if (is_biconnected_set(adj, set)) candidates.push_back(set);
  }
  std::vector<std::vector<Node>> out;
  for (Mask a : candidates) {
    bool maximal = true;
    for (Mask b : candidates) {
      if (b != a && (a & b) == a) {
        maximal = false;
        break;
      }
    }
    if (!maximal) continue;
    std::vector<Node> nodes;
    for (Mask s = a; s; s &= s - 1) nodes.push_back(std::countr_zero(s));
    out.push_back(std::move(nodes));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Node> bruteforce_cut_nodes(const Graph& g) {
  const auto adj = adjacency_masks(g);
  const int n = g.num_nodes();
  auto count_components = [&](Mask set) {
    int count = 0;
    Mask left = set;
    while (left) {
      Mask seen = left & (~left + 1);
      Mask frontier = seen;
      while (frontier) {
        Mask next = 0;
        for (Mask f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
        next &= left & ~seen;
        seen |= next;
        frontier = next;
      }
      left &= ~seen;
      ++count;
    }
    return count;
  };
  const Mask all = (Mask{1} << n) - 1;
  const int base = count_components(all);
  std::vector<Node> out;
  for (Node v = 0; v < n; ++v) {
    if (count_components(all & ~(Mask{1} << v)) > base) out.push_back(v);
  }
  return out;
}

}  // namespace cosp
