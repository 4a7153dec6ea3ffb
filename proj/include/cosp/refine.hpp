#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cosp/connectivity.hpp"
#include "cosp/graph.hpp"
#include "cosp/hash.hpp"
#include "cosp/rrwp.hpp"
#include "cosp/sparsify.hpp"

namespace cosp {

// Discrete coloring of the materialized pairs of a plan.
//
// Colors are compact ids 0..c-1 numbered by first occurrence in pair order.
// Each color also carries a 128-bit key computed only from the round-0
// record and the recursive multiset structure, never from node labels or
// compact ids, so keys of two graphs at the same iteration are comparable.
class PairColoring {
 public:
  const InteractionPlan& plan() const { return *plan_; }
  const std::shared_ptr<const InteractionPlan>& shared_plan() const { return plan_; }

  std::span<const std::uint32_t> colors() const { return colors_; }
  std::uint32_t color(std::int32_t pair) const { return colors_[pair]; }
  std::uint32_t num_colors() const { return static_cast<std::uint32_t>(keys_.size()); }
  const Digest128& key(std::uint32_t color) const { return keys_[color]; }
  int iteration() const { return iteration_; }

 private:
  friend PairColoring init_coloring(std::shared_ptr<const InteractionPlan>, const PairFeatures&);
  friend PairColoring refine_step(const PairColoring&);

  std::shared_ptr<const InteractionPlan> plan_;
  std::vector<std::uint32_t> colors_;
  std::vector<Digest128> keys_;
  int iteration_ = 0;
};

// Equal colors iff equal (x(u), x(v), e(u,v), category) records. Throws
// std::invalid_argument if the features carry continuous encodings.
PairColoring init_coloring(std::shared_ptr<const InteractionPlan> plan, const PairFeatures& feats);

// One round: new color of (u,v) interns (old color, sorted multiset of
// (color(u,t), color(t,v)) over the plan's entries). Interning compares full
// records, so distinct records never share a color.
PairColoring refine_step(const PairColoring& coloring);

struct StableColoring {
  PairColoring coloring;
  // Round at which the partition stopped changing.
  int stable_iterations = 0;
  // False if max_iters was hit first.
  bool converged = false;
};

// Default cap is pair_count rounds, which always suffices.
StableColoring refine_to_stable(PairColoring coloring, std::optional<int> max_iters = {});

struct GraphSignature {
  Digest128 digest;
  std::vector<Digest128> component_digests;  // sorted
  int stable_iterations = 0;
  int rounds = 0;
};

// Per readout group: digest of (diagonal color multiset, off-diagonal color
// multiset); graph digest over the multiset of group digests.
GraphSignature graph_signature(const PairColoring& coloring);
// Multiset {color(u, v) : (u, v) materialized, u in v's group}.
Digest128 node_signature(const PairColoring& coloring, Node v);

// Classic 1-WL node refinement.
GraphSignature wl1_signature(const Graph& g, const Labels& labels = {});

struct Engine {
  enum class Kind { kWl1, kFwl2Dense, kFwl2Cosp, kFwl2CospDist };
  Kind kind = Kind::kFwl2Cosp;
  int max_dist = 0;

  static Engine wl1() { return {Kind::kWl1, 0}; }
  static Engine dense() { return {Kind::kFwl2Dense, 0}; }
  static Engine cosp() { return {Kind::kFwl2Cosp, 0}; }
  static Engine cosp_dist(int k) { return {Kind::kFwl2CospDist, k}; }

  // Accepts wl1, fwl2-dense, fwl2-cosp, fwl2-cosp-dist:<k> (and short
  // forms dense, cosp, cosp-dist:<k>). Throws std::invalid_argument.
  static Engine parse(std::string_view text);
  std::string name() const;

  friend bool operator==(const Engine&, const Engine&) = default;
};

// Builds the plan an engine refines over (not meaningful for WL1).
std::shared_ptr<const InteractionPlan> engine_plan(const Graph& g, const Engine& engine);

struct RefineOptions {
  // Fixed number of rounds instead of running to stability.
  std::optional<int> layers;
  int jobs = 1;
};

// Signatures for every graph, all taken at one common round count so any two
// are comparable: at least one round past the slowest graph's stabilization.
std::vector<GraphSignature> compute_signatures(std::span<const Graph> graphs, const Engine& engine,
                                               const RefineOptions& options = {});

bool distinguishes(const Graph& a, const Graph& b, const Engine& engine,
                   const RefineOptions& options = {});

}  // namespace cosp
