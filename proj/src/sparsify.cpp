#include "cosp/sparsify.hpp"

#include <algorithm>
#include <stdexcept>

namespace cosp {

std::string_view tag_name(NeighborTag tag) {
  switch (tag) {
    case NeighborTag::kTriple: return "TRIPLE";
    case NeighborTag::kSelfLeft: return "SELF_LEFT";
    case NeighborTag::kSelfRight: return "SELF_RIGHT";
    case NeighborTag::kBack: return "BACK";
    case NeighborTag::kDiagSelf: return "DIAG_SELF";
  }
  return "?";
}

std::string_view flavor_name(PlanFlavor flavor) {
  switch (flavor) {
    case PlanFlavor::kDense: return "dense";
    case PlanFlavor::kCoSparse: return "cosp";
    case PlanFlavor::kDistanceBounded: return "cosp-dist";
  }
  return "?";
}

bool operator==(const InteractionPlan& a, const InteractionPlan& b) {
  auto same_pairs = std::equal(a.pairs_.begin(), a.pairs_.end(), b.pairs_.begin(), b.pairs_.end(),
                               [](const NodePair& x, const NodePair& y) {
                                 return x.u == y.u && x.v == y.v;
                               });
  auto same_entries =
      std::equal(a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
                 [](const NeighborEntry& x, const NeighborEntry& y) {
                   return x.left == y.left && x.right == y.right && x.via == y.via &&
                          x.tag == y.tag;
                 });
  return a.num_nodes_ == b.num_nodes_ && a.num_groups_ == b.num_groups_ &&
         a.group_of_ == b.group_of_ && same_pairs && same_entries && a.offsets_ == b.offsets_;
}

class PlanBuilder {
 public:
  static InteractionPlan dense(const Graph& g) {
    const int n = g.num_nodes();
    InteractionPlan p = start(PlanFlavor::kDense, n, 0);
    p.num_groups_ = n > 0 ? 1 : 0;
    p.group_of_.assign(n, 0);
    for (Node u = 0; u < n; ++u) {
      for (Node v = 0; v < n; ++v) add_pair(p, u, v);
    }
    p.entries_.reserve(static_cast<std::size_t>(n) * n * n);
    for (const NodePair& pr : p.pairs_) {
      const Node u = pr.u;
      const Node v = pr.v;
      for (Node t = 0; t < n; ++t) {
        NeighborTag tag;
        if (u == v) {
          tag = t == v ? NeighborTag::kDiagSelf : NeighborTag::kBack;
        } else if (t == u) {
          tag = NeighborTag::kSelfLeft;
        } else if (t == v) {
          tag = NeighborTag::kSelfRight;
        } else {
          tag = NeighborTag::kTriple;
        }
        p.entries_.push_back({p.find(u, t), p.find(t, v), t, tag});
      }
      p.offsets_.push_back(static_cast<std::int64_t>(p.entries_.size()));
    }
    return p;
  }

  // max_dist == 0 means unbounded.
  static InteractionPlan sparse(const Graph& g, const ConnectivityDecomposition& d, int max_dist) {
    const int n = g.num_nodes();
    if (d.num_nodes() != n || d.graph_fingerprint() != edge_fingerprint(g)) {
      throw std::invalid_argument("decomposition was not computed from this graph");
    }
    InteractionPlan p =
        start(max_dist > 0 ? PlanFlavor::kDistanceBounded : PlanFlavor::kCoSparse, n, max_dist);
    const auto& comps = d.components();
    p.num_groups_ = comps.count();
    p.group_of_ = comps.component_of;

    std::vector<int> dist;
    if (max_dist > 0) dist = all_pairs_distances(g);
    auto within = [&](Node a, Node b) {
      return max_dist == 0 || dist[static_cast<std::size_t>(a) * n + b] <= max_dist;
    };

    for (Node u = 0; u < n; ++u) {
      for (Node v : comps.members[comps.component_of[u]]) {
        if (u == v || within(u, v)) add_pair(p, u, v);
      }
    }

    const auto& blocks = d.blocks();
    for (const NodePair& pr : p.pairs_) {
      const Node u = pr.u;
      const Node v = pr.v;
      if (u == v) {
        for (Node t : comps.members[comps.component_of[v]]) {
          if (t == v) {
            const auto self = p.find(v, v);
            p.entries_.push_back({self, self, t, NeighborTag::kDiagSelf});
            continue;
          }
          const auto left = p.find(v, t);
          const auto right = p.find(t, v);
          if (left >= 0 && right >= 0) p.entries_.push_back({left, right, t, NeighborTag::kBack});
        }
      } else {
        const std::vector<Node>* shared = nullptr;
        for (int b : d.blocks_of(u)) {
          const auto& nodes = blocks[b];
          if (nodes.size() >= 3 && std::binary_search(nodes.begin(), nodes.end(), v)) {
            shared = &nodes;
            break;
          }
        }
        auto emit = [&](Node t) {
          if (t == u) {
            p.entries_.push_back({p.find(u, u), p.find(u, v), t, NeighborTag::kSelfLeft});
          } else if (t == v) {
            p.entries_.push_back({p.find(u, v), p.find(v, v), t, NeighborTag::kSelfRight});
          } else {
            const auto left = p.find(u, t);
            const auto right = p.find(t, v);
            if (left >= 0 && right >= 0) {
              p.entries_.push_back({left, right, t, NeighborTag::kTriple});
            }
          }
        };
        if (shared != nullptr) {
          for (Node t : *shared) emit(t);
        } else {
          emit(std::min(u, v));
          emit(std::max(u, v));
        }
      }
      p.offsets_.push_back(static_cast<std::int64_t>(p.entries_.size()));
    }
    return p;
  }

 private:
  static InteractionPlan start(PlanFlavor flavor, int n, int max_dist) {
    InteractionPlan p;
    p.flavor_ = flavor;
    p.num_nodes_ = n;
    p.max_distance_ = max_dist;
    p.index_.assign(static_cast<std::size_t>(n) * n, -1);
    return p;
  }

  static void add_pair(InteractionPlan& p, Node u, Node v) {
    p.index_[static_cast<std::size_t>(u) * p.num_nodes_ + v] =
        static_cast<std::int32_t>(p.pairs_.size());
    p.pairs_.push_back({u, v});
  }
};

InteractionPlan dense_plan(const Graph& g) { return PlanBuilder::dense(g); }

InteractionPlan cosparsify_plan(const Graph& g, const ConnectivityDecomposition& d) {
  return PlanBuilder::sparse(g, d, 0);
}

InteractionPlan distance_bounded_plan(const Graph& g, const ConnectivityDecomposition& d,
                                      int max_dist) {
  if (max_dist < 1) throw std::invalid_argument("max_dist must be positive");
  return PlanBuilder::sparse(g, d, max_dist);
}

PlanStats plan_stats(const InteractionPlan& plan) {
  PlanStats s;
  s.pair_count = static_cast<std::int64_t>(plan.pairs().size());
  for (const NeighborEntry& e : plan.entries()) {
    ++s.entry_count;
    ++s.per_tag[static_cast<int>(e.tag)];
  }
  s.triple_count = s.per_tag[static_cast<int>(NeighborTag::kTriple)];
  s.two_node_count = s.entry_count - s.triple_count;
  return s;
}

std::int64_t expected_pair_count(const ConnectivityDecomposition& d) {
  std::int64_t total = 0;
  for (const auto& c : d.components().members) {
    total += static_cast<std::int64_t>(c.size()) * static_cast<std::int64_t>(c.size());
  }
  return total;
}

std::int64_t expected_triple_count(const ConnectivityDecomposition& d) {
  std::int64_t total = 0;
  for (const auto& b : d.blocks()) {
    const auto s = static_cast<std::int64_t>(b.size());
    if (s >= 3) total += s * (s - 1) * (s - 2);
  }
  return total;
}

nlohmann::ordered_json stats_to_json(const PlanStats& stats) {
  nlohmann::ordered_json j;
  j["pair_count"] = stats.pair_count;
  j["entry_count"] = stats.entry_count;
  j["triple_count"] = stats.triple_count;
  j["two_node_count"] = stats.two_node_count;
  nlohmann::ordered_json tags;
  for (int t = 0; t < kNumTags; ++t) {
    tags[std::string(tag_name(static_cast<NeighborTag>(t)))] = stats.per_tag[t];
  }
  j["per_tag"] = tags;
  return j;
}

nlohmann::ordered_json plan_to_json(const InteractionPlan& plan) {
  static constexpr const char* kShort[] = {"T", "L", "R", "B", "D"};
  nlohmann::ordered_json j;
  j["flavor"] = flavor_name(plan.flavor());
  j["nodes"] = plan.num_nodes();
  if (plan.flavor() == PlanFlavor::kDistanceBounded) j["max_distance"] = plan.max_distance();
  j["stats"] = stats_to_json(plan_stats(plan));
  auto pairs = nlohmann::ordered_json::array();
  for (std::int32_t i = 0; i < plan.pair_count(); ++i) {
    auto entries = nlohmann::ordered_json::array();
    for (const NeighborEntry& e : plan.neighbors(i)) {
      entries.push_back({kShort[static_cast<int>(e.tag)], e.via});
    }
    pairs.push_back({plan.pairs()[i].u, plan.pairs()[i].v, std::move(entries)});
  }
  j["pairs"] = std::move(pairs);
  return j;
}

}  // namespace cosp
