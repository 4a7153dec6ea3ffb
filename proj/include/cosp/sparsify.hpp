#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cosp/connectivity.hpp"
#include "cosp/graph.hpp"

namespace cosp {

// Structural role of a message source ((u,t),(t,v)) for target (u,v).
enum class NeighborTag : std::uint8_t {
  kTriple,     // u, t, v pairwise distinct
  kSelfLeft,   // ((u,u),(u,v))
  kSelfRight,  // ((u,v),(v,v))
  kBack,       // ((v,t),(t,v)) feeding the diagonal target (v,v)
  kDiagSelf,   // ((v,v),(v,v))
};
inline constexpr int kNumTags = 5;
std::string_view tag_name(NeighborTag tag);

enum class PlanFlavor : std::uint8_t { kDense, kCoSparse, kDistanceBounded };
std::string_view flavor_name(PlanFlavor flavor);

struct NodePair {
  Node u = 0;
  Node v = 0;
};

// Source pairs as positions into InteractionPlan::pairs(); `via` is t.
struct NeighborEntry {
  std::int32_t left = 0;
  std::int32_t right = 0;
  Node via = 0;
  NeighborTag tag = NeighborTag::kTriple;
};

struct PlanStats {
  std::int64_t pair_count = 0;
  std::int64_t entry_count = 0;
  std::int64_t triple_count = 0;
  std::int64_t two_node_count = 0;
  std::array<std::int64_t, kNumTags> per_tag{};
};

// Materialized ordered pairs with, per pair, the multiset of permitted
// message sources. Pairs are ordered by (u, v); each pair's entries are
// ordered by ascending t (at most one entry per t).
class InteractionPlan {
 public:
  PlanFlavor flavor() const { return flavor_; }
  int num_nodes() const { return num_nodes_; }
  // 0 unless flavor is kDistanceBounded.
  int max_distance() const { return max_distance_; }

  std::span<const NodePair> pairs() const { return pairs_; }
  std::int32_t pair_count() const { return static_cast<std::int32_t>(pairs_.size()); }
  // Position of (u, v), or -1 when not materialized.
  std::int32_t find(Node u, Node v) const {
    return index_[static_cast<std::size_t>(u) * num_nodes_ + v];
  }
  std::span<const NeighborEntry> neighbors(std::int32_t pair) const {
    return {entries_.data() + offsets_[pair], entries_.data() + offsets_[pair + 1]};
  }
  std::span<const NeighborEntry> entries() const { return entries_; }

  // Readout groups: connected components for sparsified plans, a single
  // group spanning V for dense plans.
  int num_groups() const { return num_groups_; }
  int group_of(Node v) const { return group_of_[v]; }

  friend bool operator==(const InteractionPlan& a, const InteractionPlan& b);

 private:
  friend class PlanBuilder;

  PlanFlavor flavor_ = PlanFlavor::kDense;
  int num_nodes_ = 0;
  int max_distance_ = 0;
  int num_groups_ = 0;
  std::vector<int> group_of_;
  std::vector<NodePair> pairs_;
  std::vector<std::int32_t> index_;
  std::vector<std::int64_t> offsets_{0};
  std::vector<NeighborEntry> entries_;
};

InteractionPlan dense_plan(const Graph& g);
// Throws std::invalid_argument if d was not computed from g.
InteractionPlan cosparsify_plan(const Graph& g, const ConnectivityDecomposition& d);
InteractionPlan distance_bounded_plan(const Graph& g, const ConnectivityDecomposition& d,
                                      int max_dist);

// Counts by iterating the materialized plan.
PlanStats plan_stats(const InteractionPlan& plan);

// Closed forms the sparsified stats must reproduce.
std::int64_t expected_pair_count(const ConnectivityDecomposition& d);
std::int64_t expected_triple_count(const ConnectivityDecomposition& d);

nlohmann::ordered_json stats_to_json(const PlanStats& stats);
// Header with stats, then one record per pair: [u, v, [[tag, t], ...]].
nlohmann::ordered_json plan_to_json(const InteractionPlan& plan);

}  // namespace cosp
