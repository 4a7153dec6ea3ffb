#include "cosp/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/edmonds_karp_max_flow.hpp>

namespace cosp {

namespace {

Pattern make_pattern(std::string name, int n, std::initializer_list<std::pair<Node, Node>> edges) {
  return Pattern::custom(std::move(name), Graph(n, edges));
}

}  // namespace

const std::vector<std::string>& Pattern::builtin_names() {
  static const std::vector<std::string> kNames = {
      "cycle3", "cycle4", "cycle5", "cycle6", "path4", "tailed_triangle", "chordal_cycle",
      "triangle_rectangle"};
  return kNames;
}

Pattern Pattern::named(std::string_view name) {
  if (name == "cycle3") return make_pattern("cycle3", 3, {{0, 1}, {1, 2}, {2, 0}});
  if (name == "cycle4") return make_pattern("cycle4", 4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  if (name == "cycle5") {
    return make_pattern("cycle5", 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  }
  if (name == "cycle6") {
    return make_pattern("cycle6", 6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  }
  if (name == "path4") return make_pattern("path4", 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  if (name == "tailed_triangle") {
    return make_pattern("tailed_triangle", 4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  }
  if (name == "chordal_cycle") {
    return make_pattern("chordal_cycle", 4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  }
  if (name == "triangle_rectangle") {
    // Triangle {0,1,2} and 4-cycle 0-1-3-4 sharing edge {0,1}.
    return make_pattern("triangle_rectangle", 5, {{0, 1}, {1, 2}, {2, 0}, {1, 3}, {3, 4}, {4, 0}});
  }
  throw std::invalid_argument("unknown pattern '" + std::string(name) + "'");
}

Pattern Pattern::custom(std::string name, Graph graph) {
  if (graph.num_nodes() > 8) throw std::invalid_argument("patterns are limited to 8 nodes");
  Pattern p;
  p.name = std::move(name);
  p.automorphism_count = count_automorphisms(graph);
  p.graph = std::move(graph);
  return p;
}

void for_each_embedding(const Graph& pattern, const Graph& host, CountMode mode,
                        const std::function<bool(std::span<const Node>)>& fn) {
  const int k = pattern.num_nodes();
  const int n = host.num_nodes();
  if (k > n) return;
  if (k == 0) {
    fn({});
    return;
  }
  bool stopped = false;

  // Visit pattern nodes so each (after the first of its component) has an
  // already-placed neighbor whose image's adjacency bounds the candidates.
  std::vector<Node> order;
  std::vector<Node> anchor(k, -1);
  std::vector<char> placed(k, 0);
  for (Node s = 0; s < k; ++s) {
    if (placed[s]) continue;
    placed[s] = 1;
    std::size_t head = order.size();
    order.push_back(s);
    for (; head < order.size(); ++head) {
      for (Node w : pattern.neighbors(order[head])) {
        if (!placed[w]) {
          placed[w] = 1;
          anchor[w] = order[head];
          order.push_back(w);
        }
      }
    }
  }

  std::vector<Node> image(k, -1);
  std::vector<char> used(n, 0);
  std::vector<Node> all(n);
  std::iota(all.begin(), all.end(), 0);

  std::function<void(int)> extend = [&](int depth) {
    if (depth == k) {
      if (!fn(image)) stopped = true;
      return;
    }
    const Node p = order[depth];
    std::span<const Node> candidates =
        anchor[p] >= 0 ? host.neighbors(image[anchor[p]]) : std::span<const Node>(all);
    for (Node h : candidates) {
      if (used[h] || host.degree(h) < pattern.degree(p)) continue;
      bool ok = true;
      for (int d = 0; d < depth && ok; ++d) {
        const Node q = order[d];
        const bool pe = pattern.has_edge(p, q);
        const bool he = host.has_edge(h, image[q]);
        ok = mode == CountMode::kInduced ? pe == he : (!pe || he);
      }
      if (!ok) continue;
      used[h] = 1;
      image[p] = h;
      extend(depth + 1);
      used[h] = 0;
      image[p] = -1;
      if (stopped) return;
    }
  };
  extend(0);
}

OccurrenceCounts count_occurrences(const Graph& g, const Pattern& p, CountMode mode) {
  if (p.graph.num_nodes() > 8) throw std::invalid_argument("patterns are limited to 8 nodes");
  OccurrenceCounts out;
  out.per_node.assign(g.num_nodes(), 0);
  std::int64_t embeddings = 0;
  for_each_embedding(p.graph, g, mode, [&](std::span<const Node> image) {
    ++embeddings;
    for (Node v : image) ++out.per_node[v];
    return true;
  });
  // Each occurrence is hit once per pattern automorphism.
  out.total = embeddings / p.automorphism_count;
  for (auto& c : out.per_node) c /= p.automorphism_count;
  return out;
}

std::int64_t count_distinct_images(const Graph& g, const Pattern& p, CountMode mode) {
  std::set<std::pair<std::vector<Node>, std::vector<Edge>>> seen;
  for_each_embedding(p.graph, g, mode, [&](std::span<const Node> image) {
    std::vector<Node> nodes(image.begin(), image.end());
    std::sort(nodes.begin(), nodes.end());
    std::vector<Edge> edges;
    for (const Edge& e : p.graph.edges()) {
      edges.push_back({std::min(image[e.u], image[e.v]), std::max(image[e.u], image[e.v])});
    }
    std::sort(edges.begin(), edges.end());
    seen.emplace(std::move(nodes), std::move(edges));
    return true;
  });
  return static_cast<std::int64_t>(seen.size());
}

std::vector<std::vector<Node>> automorphisms(const Graph& g) {
  std::vector<std::vector<Node>> out;
  for_each_embedding(g, g, CountMode::kInduced,
                     [&](std::span<const Node> image) {
                       out.emplace_back(image.begin(), image.end());
                       return true;
                     });
  return out;
}

std::int64_t count_automorphisms(const Graph& g) {
  std::int64_t count = 0;
  for_each_embedding(g, g, CountMode::kInduced, [&](std::span<const Node>) {
    ++count;
    return true;
  });
  return count;
}

bool isomorphic_bruteforce(const Graph& a, const Graph& b) {
  if (a.num_nodes() > 10 || b.num_nodes() > 10) {
    throw OracleRefusal("brute-force isomorphism refuses n > 10; use canonical labels instead");
  }
  if (a.num_nodes() != b.num_nodes() || a.num_edges() != b.num_edges()) return false;
  std::vector<int> da;
  std::vector<int> db;
  for (Node v = 0; v < a.num_nodes(); ++v) {
    da.push_back(a.degree(v));
    db.push_back(b.degree(v));
  }
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;
  // With equal node counts an induced embedding is an isomorphism.
  bool found = false;
  for_each_embedding(a, b, CountMode::kInduced, [&](std::span<const Node>) {
    found = true;
    return false;
  });
  return found;
}

int max_internally_disjoint_paths(const Graph& g, Node u, Node v) {
  if (u == v) throw std::invalid_argument("endpoints must differ");
  if (u < 0 || v < 0 || u >= g.num_nodes() || v >= g.num_nodes()) {
    throw std::out_of_range("endpoint out of range");
  }
  using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
  using FlowGraph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::directedS, boost::no_property,
      boost::property<boost::edge_capacity_t, long,
                      boost::property<boost::edge_residual_capacity_t, long,
                                      boost::property<boost::edge_reverse_t,
                                                      Traits::edge_descriptor>>>>;
  const int n = g.num_nodes();
  FlowGraph flow(2 * n);
  auto capacity = boost::get(boost::edge_capacity, flow);
  auto reverse = boost::get(boost::edge_reverse, flow);
  auto add = [&](int from, int to, long cap) {
    auto e = boost::add_edge(from, to, flow).first;
    auto r = boost::add_edge(to, from, flow).first;
    capacity[e] = cap;
    capacity[r] = 0;
    reverse[e] = r;
    reverse[r] = e;
  };
  auto in = [](Node x) { return 2 * x; };
  auto out = [](Node x) { return 2 * x + 1; };
  const long unbounded = n + 1;
  for (Node x = 0; x < n; ++x) add(in(x), out(x), (x == u || x == v) ? unbounded : 1);
  for (const Edge& e : g.edges()) {
    add(out(e.u), in(e.v), 1);
    add(out(e.v), in(e.u), 1);
  }
  return static_cast<int>(boost::edmonds_karp_max_flow(flow, out(u), in(v)));
}

namespace {

// Color refinement whose colors are ranks of sorted records, so the cell
// order is isomorphism-invariant.
std::vector<int> invariant_cells(const Graph& g) {
  const int n = g.num_nodes();
  std::vector<int> color(n);
  for (Node v = 0; v < n; ++v) color[v] = g.degree(v);
  int classes = -1;
  for (;;) {
    std::vector<std::vector<int>> record(n);
    for (Node v = 0; v < n; ++v) {
      record[v].push_back(color[v]);
      std::vector<int> nb;
      for (Node w : g.neighbors(v)) nb.push_back(color[w]);
      std::sort(nb.begin(), nb.end());
      record[v].insert(record[v].end(), nb.begin(), nb.end());
    }
    std::vector<std::vector<int>> distinct = record;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (Node v = 0; v < n; ++v) {
      color[v] = static_cast<int>(
          std::lower_bound(distinct.begin(), distinct.end(), record[v]) - distinct.begin());
    }
    if (static_cast<int>(distinct.size()) == classes) return color;
    classes = static_cast<int>(distinct.size());
  }
}

}  // namespace

CanonicalCode canonical_code(const Graph& g) {
  const int n = g.num_nodes();
  if (n > 11) throw OracleRefusal("canonical_code is limited to 11 nodes");
  const std::vector<int> color = invariant_cells(g);
  // Position i must hold a node of color slot[i].
  std::vector<int> slot(color.begin(), color.end());
  std::sort(slot.begin(), slot.end());
  const int total_bits = n * (n - 1) / 2;

  std::vector<Node> order(n, -1);
  std::vector<char> used(n, 0);
  bool have_best = false;
  std::uint64_t best = 0;

  std::function<void(int, std::uint64_t, int)> place = [&](int pos, std::uint64_t prefix, int bits) {
    if (have_best && bits > 0) {
      const std::uint64_t best_prefix = best >> (total_bits - bits);
      if (prefix < best_prefix) return;
    }
    if (pos == n) {
      if (!have_best || prefix > best) best = prefix;
      have_best = true;
      return;
    }
    for (Node x = 0; x < n; ++x) {
      if (used[x] || color[x] != slot[pos]) continue;
      std::uint64_t next = prefix;
      for (int i = 0; i < pos; ++i) next = (next << 1) | (g.has_edge(order[i], x) ? 1 : 0);
      used[x] = 1;
      order[pos] = x;
      place(pos + 1, next, bits + pos);
      used[x] = 0;
    }
  };
  place(0, 0, 0);
  return {n, best};
}

Graph graph_from_code(const CanonicalCode& code) {
  const int n = code.num_nodes;
  const int total_bits = n * (n - 1) / 2;
  std::vector<std::pair<Node, Node>> edges;
  int k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      if ((code.bits >> (total_bits - 1 - k)) & 1) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges);
}

}  // namespace cosp
