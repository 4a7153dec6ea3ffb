#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace cosp {

using Node = std::int32_t;

// Undirected edge stored with u < v.
struct Edge {
  Node u = 0;
  Node v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Immutable simple undirected graph over nodes 0..n-1 with CSR adjacency.
class Graph {
 public:
  Graph() = default;

  // Throws std::invalid_argument on self-loops or out-of-range endpoints.
  // Duplicate edges (in either orientation) are merged.
  Graph(int num_nodes, std::span<const std::pair<Node, Node>> edges);
  Graph(int num_nodes, std::initializer_list<std::pair<Node, Node>> edges)
      : Graph(num_nodes, std::span<const std::pair<Node, Node>>(edges.begin(), edges.size())) {}

  int num_nodes() const { return num_nodes_; }
  std::int64_t num_edges() const { return static_cast<std::int64_t>(edges_.size()); }

  std::span<const Node> neighbors(Node u) const {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }
  int degree(Node u) const { return static_cast<int>(offsets_[u + 1] - offsets_[u]); }
  bool has_edge(Node u, Node v) const;

  // Canonical edge set: u < v, lexicographically sorted.
  const std::vector<Edge>& edges() const { return edges_; }

  // Relabels node u as perm[u].
  Graph permuted(std::span<const Node> perm) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.num_nodes_ == b.num_nodes_ && a.edges_ == b.edges_;
  }

 private:
  int num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> offsets_{0};
  std::vector<Node> adjacency_;
};

// Optional discrete node and edge labels. An empty node vector means all
// nodes carry the same label.
struct Labels {
  std::vector<std::int32_t> node;
  std::map<Edge, std::int32_t> edge;

  bool empty() const { return node.empty() && edge.empty(); }
};

// Edge-list text: "n m" header then m lines "u v". Blank lines and lines
// starting with '#' are ignored.
Graph parse_edge_list(std::string_view text);
std::string serialize_edge_list(const Graph& g);

// graph6, short form only (n <= 62).
Graph parse_graph6(std::string_view line);
std::string to_graph6(const Graph& g);

// D^-1 A with all-zero rows for isolated nodes.
Eigen::MatrixXd random_walk_matrix(const Graph& g);

Graph disjoint_union(const Graph& a, const Graph& b);

// Digest of (n, canonical edge set); identifies a concrete labeled graph.
std::uint64_t edge_fingerprint(const Graph& g);

}  // namespace cosp
