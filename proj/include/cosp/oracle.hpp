#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cosp/graph.hpp"

namespace cosp {

struct Pattern {
  std::string name;
  Graph graph;
  std::int64_t automorphism_count = 1;

  // cycle3..cycle6, path4 (4 edges), tailed_triangle, chordal_cycle,
  // triangle_rectangle. Throws std::invalid_argument for unknown names.
  static Pattern named(std::string_view name);
  static Pattern custom(std::string name, Graph graph);
  static const std::vector<std::string>& builtin_names();
};

enum class CountMode { kSubgraph, kInduced };

struct OccurrenceCounts {
  std::int64_t total = 0;
  std::vector<std::int64_t> per_node;
};

// Occurrences = injective homomorphisms / |Aut(pattern)|. Patterns are
// limited to 8 nodes; a pattern larger than the host yields zero counts.
OccurrenceCounts count_occurrences(const Graph& g, const Pattern& p,
                                   CountMode mode = CountMode::kSubgraph);
// Independent cross-check: number of distinct (node set, edge set) images.
std::int64_t count_distinct_images(const Graph& g, const Pattern& p,
                                   CountMode mode = CountMode::kSubgraph);

// Invokes fn(image) for every injective map pattern -> host preserving edges
// (and non-edges in induced mode) until fn returns false.
void for_each_embedding(const Graph& pattern, const Graph& host, CountMode mode,
                        const std::function<bool(std::span<const Node>)>& fn);

std::int64_t count_automorphisms(const Graph& g);
std::vector<std::vector<Node>> automorphisms(const Graph& g);

// Node-version Menger number via node-split max-flow. Requires u != v.
int max_internally_disjoint_paths(const Graph& g, Node u, Node v);

class OracleRefusal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Backtracking over degree-compatible bijections; refuses n > 10.
bool isomorphic_bruteforce(const Graph& a, const Graph& b);

// Isomorphism-invariant complete code: the maximum upper-triangle adjacency
// word over all node orders that respect the color-refinement cell order.
// Limited to n <= 11.
struct CanonicalCode {
  int num_nodes = 0;
  std::uint64_t bits = 0;

  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};
CanonicalCode canonical_code(const Graph& g);
Graph graph_from_code(const CanonicalCode& code);

}  // namespace cosp
