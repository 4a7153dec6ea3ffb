#include "cosp/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "cosp/hash.hpp"

namespace cosp {

Graph::Graph(int num_nodes, std::span<const std::pair<Node, Node>> edges)
    : num_nodes_(num_nodes) {
  if (num_nodes < 0) throw std::invalid_argument("negative node count");
  edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= num_nodes || b >= num_nodes) {
      throw std::invalid_argument("edge endpoint out of range: " + std::to_string(a) + " " +
                                  std::to_string(b));
    }
    if (a == b) throw std::invalid_argument("self-loop at node " + std::to_string(a));
    edges_.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  std::vector<std::int64_t> degree(num_nodes, 0);
  for (const Edge& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(num_nodes + 1, 0);
  for (int u = 0; u < num_nodes; ++u) offsets_[u + 1] = offsets_[u] + degree[u];
  adjacency_.resize(offsets_[num_nodes]);
  std::vector<std::int64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.u]++] = e.v;
    adjacency_[cursor[e.v]++] = e.u;
  }
  for (int u = 0; u < num_nodes; ++u) {
    std::sort(adjacency_.begin() + offsets_[u], adjacency_.begin() + offsets_[u + 1]);
  }
}

bool Graph::has_edge(Node u, Node v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph Graph::permuted(std::span<const Node> perm) const {
  if (static_cast<int>(perm.size()) != num_nodes_) {
    throw std::invalid_argument("permutation size does not match node count");
  }
  std::vector<std::pair<Node, Node>> mapped;
  mapped.reserve(edges_.size());
  for (const Edge& e : edges_) mapped.emplace_back(perm[e.u], perm[e.v]);
  return Graph(num_nodes_, mapped);
}

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long parse_int(std::string_view token, int line) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "not an integer: '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  long long n = -1;
  long long m = -1;
  std::vector<std::pair<Node, Node>> edges;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tokens = split_tokens(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 2) throw ParseError(line_no, "expected two integers");
    long long a = parse_int(tokens[0], line_no);
    long long b = parse_int(tokens[1], line_no);
    if (n < 0) {
      if (a < 0 || b < 0) throw ParseError(line_no, "negative header value");
      if (a > 100'000'000) throw ParseError(line_no, "node count too large");
      n = a;
      m = b;
      edges.reserve(static_cast<std::size_t>(m));
      continue;
    }
    if (static_cast<long long>(edges.size()) == m) throw ParseError(line_no, "more edges than declared");
    if (a < 0 || b < 0 || a >= n || b >= n) throw ParseError(line_no, "node index out of range");
    if (a == b) throw ParseError(line_no, "self-loop");
    edges.emplace_back(static_cast<Node>(a), static_cast<Node>(b));
  }
  if (n < 0) throw ParseError(line_no, "missing 'n m' header");
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError(line_no, "expected " + std::to_string(m) + " edges, found " +
                                  std::to_string(edges.size()));
  }
  return Graph(static_cast<int>(n), edges);
}

std::string serialize_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

Graph parse_graph6(std::string_view line) {
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
    line.remove_suffix(1);
  }
  if (line.empty()) throw ParseError(1, "empty graph6 string");
  for (char c : line) {
    if (c < 63 || c > 126) throw ParseError(1, "invalid graph6 character");
  }
  if (line[0] == 126) throw ParseError(1, "graph6 long form (n > 62) is not supported");
  const int n = line[0] - 63;
  const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t chars = (bits + 5) / 6;
  if (line.size() - 1 < chars) throw ParseError(1, "truncated graph6 payload");
  if (line.size() - 1 > chars) throw ParseError(1, "trailing graph6 data");

  std::vector<std::pair<Node, Node>> edges;
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      int word = line[1 + k / 6] - 63;
      if (word & (1 << (5 - k % 6))) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges);
}

std::string to_graph6(const Graph& g) {
  const int n = g.num_nodes();
  if (n > 62) throw std::invalid_argument("graph6 short form supports n <= 62");
  std::string out(1, static_cast<char>(n + 63));
  int word = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      word = (word << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(word + 63));
        word = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((word << (6 - filled)) + 63));
  return out;
}

Eigen::MatrixXd random_walk_matrix(const Graph& g) {
  const int n = g.num_nodes();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    const int deg = g.degree(u);
    if (deg == 0) continue;
    for (Node v : g.neighbors(u)) a(u, v) = 1.0 / deg;
  }
  return a;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<std::pair<Node, Node>> edges;
  edges.reserve(a.edges().size() + b.edges().size());
  for (const Edge& e : a.edges()) edges.emplace_back(e.u, e.v);
  const Node shift = a.num_nodes();
  for (const Edge& e : b.edges()) edges.emplace_back(e.u + shift, e.v + shift);
  return Graph(a.num_nodes() + b.num_nodes(), edges);
}

std::uint64_t edge_fingerprint(const Graph& g) {
  Hasher h(0x6564676573ULL);
  h.add(g.num_nodes());
  for (const Edge& e : g.edges()) h.add((static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v));
  return h.finish().lo;
}

}  // namespace cosp
