#include "cosp/refine.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "cosp/parallel.hpp"

namespace cosp {

namespace {

constexpr std::uint64_t kPairInitDomain = 0x70616972696e6974ULL;
constexpr std::uint64_t kPairStepDomain = 0x7061697273746570ULL;
constexpr std::uint64_t kNodeInitDomain = 0x6e6f6465696e6974ULL;
constexpr std::uint64_t kNodeStepDomain = 0x6e6f646573746570ULL;
constexpr std::uint64_t kGroupDomain = 0x67726f7570ULL;
constexpr std::uint64_t kGraphDomain = 0x6772617068ULL;
constexpr std::uint64_t kWl1Domain = 0x776c31ULL;
constexpr std::uint64_t kNodeReadoutDomain = 0x6e6f6465726fULL;

// Exact interning of variable-length records. The 64-bit hash only selects
// a bucket; membership is decided by full comparison.
class RecordRegistry {
 public:
  std::pair<std::uint32_t, bool> intern(std::span<const std::uint64_t> record) {
    Hasher h;
    for (auto x : record) h.add(x);
    auto& bucket = buckets_[h.finish().lo];
    for (std::uint32_t id : bucket) {
      const auto begin = arena_.begin() + static_cast<std::ptrdiff_t>(starts_[id]);
      const auto end = arena_.begin() + static_cast<std::ptrdiff_t>(starts_[id + 1]);
      if (std::equal(begin, end, record.begin(), record.end())) return {id, false};
    }
    const auto id = static_cast<std::uint32_t>(starts_.size() - 1);
    arena_.insert(arena_.end(), record.begin(), record.end());
    starts_.push_back(arena_.size());
    bucket.push_back(id);
    return {id, true};
  }

  std::uint32_t size() const { return static_cast<std::uint32_t>(starts_.size() - 1); }

 private:
  std::vector<std::uint64_t> arena_;
  std::vector<std::size_t> starts_{0};
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
};

// Distinct compact colors must keep distinct keys; a clash means the
// 128-bit keys can no longer stand in for the exact records.
void check_key_uniqueness(const std::vector<Digest128>& keys) {
  std::vector<Digest128> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::logic_error("color key collision between distinct records");
  }
}

using KeyPair = std::pair<Digest128, Digest128>;

Digest128 pair_step_key(const Digest128& old, std::vector<KeyPair>& messages) {
  std::sort(messages.begin(), messages.end());
  Hasher h(kPairStepDomain);
  h.add(old).add(static_cast<std::uint64_t>(messages.size()));
  for (const auto& [a, b] : messages) h.add(a).add(b);
  return h.finish();
}

Digest128 node_step_key(const Digest128& old, std::vector<Digest128>& messages) {
  std::sort(messages.begin(), messages.end());
  Hasher h(kNodeStepDomain);
  h.add(old).add(static_cast<std::uint64_t>(messages.size()));
  for (const auto& m : messages) h.add(m);
  return h.finish();
}

// Canonical multiset digest: (key, multiplicity) sorted by key.
void add_multiset(Hasher& h, const std::vector<Digest128>& keys,
                  const std::map<std::uint32_t, std::int64_t>& counts) {
  std::vector<std::pair<Digest128, std::int64_t>> items;
  items.reserve(counts.size());
  for (const auto& [color, count] : counts) items.emplace_back(keys[color], count);
  std::sort(items.begin(), items.end());
  h.add(static_cast<std::uint64_t>(items.size()));
  for (const auto& [key, count] : items) h.add(key).add(count);
}

struct GroupCounts {
  std::map<std::uint32_t, std::int64_t> diagonal;
  std::map<std::uint32_t, std::int64_t> off_diagonal;
};

GraphSignature readout(const std::vector<Digest128>& keys, const std::vector<GroupCounts>& groups) {
  GraphSignature sig;
  for (const auto& group : groups) {
    Hasher h(kGroupDomain);
    add_multiset(h, keys, group.diagonal);
    add_multiset(h, keys, group.off_diagonal);
    sig.component_digests.push_back(h.finish());
  }
  std::sort(sig.component_digests.begin(), sig.component_digests.end());
  Hasher h(kGraphDomain);
  h.add(static_cast<std::uint64_t>(sig.component_digests.size()));
  for (const auto& d : sig.component_digests) h.add(d);
  sig.digest = h.finish();
  return sig;
}

std::vector<GroupCounts> group_counts(const PairColoring& c) {
  const auto& plan = c.plan();
  std::vector<GroupCounts> groups(plan.num_groups());
  for (std::int32_t i = 0; i < plan.pair_count(); ++i) {
    const NodePair& p = plan.pairs()[i];
    auto& group = groups[plan.group_of(p.u)];
    (p.u == p.v ? group.diagonal : group.off_diagonal)[c.color(i)] += 1;
  }
  return groups;
}

// Everything needed to keep advancing a stable coloring: once the partition
// is fixed, every pair of a color has the same record, so one representative
// per color determines the next keys.
class PairQuotient {
 public:
  explicit PairQuotient(const PairColoring& c)
      : keys_(c.num_colors()), messages_(c.num_colors()), groups_(group_counts(c)),
        iteration_(c.iteration()) {
    for (std::uint32_t col = 0; col < c.num_colors(); ++col) keys_[col] = c.key(col);
    std::vector<char> seen(c.num_colors(), 0);
    const auto& plan = c.plan();
    for (std::int32_t i = 0; i < plan.pair_count(); ++i) {
      const auto col = c.color(i);
      if (seen[col]) continue;
      seen[col] = 1;
      for (const NeighborEntry& e : plan.neighbors(i)) {
        messages_[col].emplace_back(c.color(e.left), c.color(e.right));
      }
    }
  }

  int iteration() const { return iteration_; }

  void advance() {
    std::vector<Digest128> next(keys_.size());
    std::vector<KeyPair> buffer;
    for (std::size_t col = 0; col < keys_.size(); ++col) {
      buffer.clear();
      for (auto [a, b] : messages_[col]) buffer.emplace_back(keys_[a], keys_[b]);
      next[col] = pair_step_key(keys_[col], buffer);
    }
    check_key_uniqueness(next);
    keys_ = std::move(next);
    ++iteration_;
  }

  GraphSignature signature() const { return readout(keys_, groups_); }

 private:
  std::vector<Digest128> keys_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> messages_;
  std::vector<GroupCounts> groups_;
  int iteration_;
};

class NodeColoring {
 public:
  NodeColoring(const Graph& g, const Labels& labels) : graph_(&g) {
    const int n = g.num_nodes();
    if (!labels.node.empty() && static_cast<int>(labels.node.size()) != n) {
      throw std::invalid_argument("node label count does not match graph");
    }
    colors_.resize(n);
    std::map<std::int32_t, std::uint32_t> ids;
    for (Node v = 0; v < n; ++v) {
      const std::int32_t label = labels.node.empty() ? kNoLabel : labels.node[v];
      auto [it, inserted] = ids.emplace(label, static_cast<std::uint32_t>(ids.size()));
      colors_[v] = it->second;
      if (inserted) keys_.push_back(Hasher(kNodeInitDomain).add(label).finish());
    }
  }

  std::uint32_t num_colors() const { return static_cast<std::uint32_t>(keys_.size()); }
  int iteration() const { return iteration_; }

  void step() {
    const Graph& g = *graph_;
    RecordRegistry registry;
    std::vector<std::uint32_t> next(colors_.size());
    std::vector<Node> representative;
    std::vector<std::uint64_t> record;
    for (Node v = 0; v < g.num_nodes(); ++v) {
      record.assign(1, colors_[v]);
      for (Node w : g.neighbors(v)) record.push_back(colors_[w]);
      std::sort(record.begin() + 1, record.end());
      auto [id, inserted] = registry.intern(record);
      next[v] = id;
      if (inserted) representative.push_back(v);
    }
    std::vector<Digest128> keys(representative.size());
    std::vector<Digest128> buffer;
    for (std::size_t col = 0; col < representative.size(); ++col) {
      const Node v = representative[col];
      buffer.clear();
      for (Node w : g.neighbors(v)) buffer.push_back(keys_[colors_[w]]);
      keys[col] = node_step_key(keys_[colors_[v]], buffer);
    }
    check_key_uniqueness(keys);
    colors_ = std::move(next);
    keys_ = std::move(keys);
    ++iteration_;
  }

  // Refines until a round leaves the partition unchanged; returns the round
  // at which it stopped changing.
  int run_to_stable() {
    for (;;) {
      const auto before = num_colors();
      step();
      if (num_colors() == before) return iteration_ - 1;
    }
  }

  // Valid only once stable (see PairQuotient).
  void advance_stable() {
    const Graph& g = *graph_;
    std::vector<char> seen(keys_.size(), 0);
    std::vector<Digest128> keys(keys_.size());
    std::vector<Digest128> buffer;
    for (Node v = 0; v < g.num_nodes(); ++v) {
      const auto col = colors_[v];
      if (seen[col]) continue;
      seen[col] = 1;
      buffer.clear();
      for (Node w : g.neighbors(v)) buffer.push_back(keys_[colors_[w]]);
      keys[col] = node_step_key(keys_[col], buffer);
    }
    check_key_uniqueness(keys);
    keys_ = std::move(keys);
    ++iteration_;
  }

  GraphSignature signature() const {
    std::map<std::uint32_t, std::int64_t> counts;
    for (auto c : colors_) counts[c] += 1;
    Hasher h(kWl1Domain);
    add_multiset(h, keys_, counts);
    GraphSignature sig;
    sig.digest = h.finish();
    sig.component_digests = {sig.digest};
    sig.rounds = iteration_;
    return sig;
  }

 private:
  const Graph* graph_;
  std::vector<std::uint32_t> colors_;
  std::vector<Digest128> keys_;
  int iteration_ = 0;
};

}  // namespace

PairColoring init_coloring(std::shared_ptr<const InteractionPlan> plan, const PairFeatures& feats) {
  if (!plan) throw std::invalid_argument("null plan");
  if (feats.num_nodes() != plan->num_nodes()) {
    throw std::invalid_argument("features and plan refer to different graphs");
  }
  if (feats.has_continuous()) {
    throw std::invalid_argument("refinement accepts discrete features only (drop the RRWP encoding)");
  }
  PairColoring c;
  c.plan_ = std::move(plan);
  const auto pairs = c.plan_->pairs();
  c.colors_.resize(pairs.size());
  std::map<std::tuple<std::int32_t, std::int32_t, std::int32_t, int>, std::uint32_t> ids;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const PairFeature& f = feats.at(pairs[i].u, pairs[i].v);
    const auto record =
        std::make_tuple(f.node_u, f.node_v, f.edge, static_cast<int>(f.category));
    auto [it, inserted] = ids.emplace(record, static_cast<std::uint32_t>(ids.size()));
    c.colors_[i] = it->second;
    if (inserted) {
      c.keys_.push_back(Hasher(kPairInitDomain)
                            .add(f.node_u)
                            .add(f.node_v)
                            .add(f.edge)
                            .add(static_cast<int>(f.category))
                            .finish());
    }
  }
  return c;
}

PairColoring refine_step(const PairColoring& c) {
  const InteractionPlan& plan = c.plan();
  PairColoring next;
  next.plan_ = c.plan_;
  next.iteration_ = c.iteration_ + 1;
  next.colors_.resize(c.colors_.size());

  RecordRegistry registry;
  std::vector<std::int32_t> representative;
  std::vector<std::uint64_t> record;
  for (std::int32_t i = 0; i < plan.pair_count(); ++i) {
    record.assign(1, c.colors_[i]);
    for (const NeighborEntry& e : plan.neighbors(i)) {
      record.push_back((static_cast<std::uint64_t>(c.colors_[e.left]) << 32) |
                       c.colors_[e.right]);
    }
    std::sort(record.begin() + 1, record.end());
    auto [id, inserted] = registry.intern(record);
    next.colors_[i] = id;
    if (inserted) representative.push_back(i);
  }

  next.keys_.resize(representative.size());
  std::vector<KeyPair> buffer;
  for (std::size_t col = 0; col < representative.size(); ++col) {
    const auto i = representative[col];
    buffer.clear();
    for (const NeighborEntry& e : plan.neighbors(i)) {
      buffer.emplace_back(c.keys_[c.colors_[e.left]], c.keys_[c.colors_[e.right]]);
    }
    next.keys_[col] = pair_step_key(c.keys_[c.colors_[i]], buffer);
  }
  check_key_uniqueness(next.keys_);
  return next;
}

StableColoring refine_to_stable(PairColoring coloring, std::optional<int> max_iters) {
  const int cap = max_iters.value_or(std::max<int>(1, coloring.plan().pair_count()));
  StableColoring out{std::move(coloring), 0, false};
  for (int round = 0; round < cap; ++round) {
    PairColoring next = refine_step(out.coloring);
    const bool unchanged = next.num_colors() == out.coloring.num_colors();
    out.stable_iterations = out.coloring.iteration();
    out.coloring = std::move(next);
    if (unchanged) {
      out.converged = true;
      return out;
    }
  }
  out.stable_iterations = out.coloring.iteration();
  return out;
}

GraphSignature graph_signature(const PairColoring& coloring) {
  std::vector<Digest128> keys(coloring.num_colors());
  for (std::uint32_t c = 0; c < coloring.num_colors(); ++c) keys[c] = coloring.key(c);
  GraphSignature sig = readout(keys, group_counts(coloring));
  sig.rounds = coloring.iteration();
  return sig;
}

Digest128 node_signature(const PairColoring& coloring, Node v) {
  const auto& plan = coloring.plan();
  if (v < 0 || v >= plan.num_nodes()) throw std::out_of_range("node out of range");
  std::vector<Digest128> incoming;
  for (Node u = 0; u < plan.num_nodes(); ++u) {
    if (plan.group_of(u) != plan.group_of(v)) continue;
    const auto pair = plan.find(u, v);
    if (pair >= 0) incoming.push_back(coloring.key(coloring.color(pair)));
  }
  std::sort(incoming.begin(), incoming.end());
  Hasher h(kNodeReadoutDomain);
  h.add(static_cast<std::uint64_t>(incoming.size()));
  for (const auto& k : incoming) h.add(k);
  return h.finish();
}

GraphSignature wl1_signature(const Graph& g, const Labels& labels) {
  NodeColoring c(g, labels);
  const int stable = c.run_to_stable();
  GraphSignature sig = c.signature();
  sig.stable_iterations = stable;
  return sig;
}

Engine Engine::parse(std::string_view text) {
  auto strip = [&](std::string_view prefix) {
    if (text.substr(0, prefix.size()) == prefix) text.remove_prefix(prefix.size());
  };
  strip("fwl2-");
  if (text == "wl1") return wl1();
  if (text == "dense") return dense();
  if (text == "cosp") return cosp();
  if (text.substr(0, 10) == "cosp-dist:") {
    auto digits = text.substr(10);
    int k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && k >= 1) return cosp_dist(k);
  }
  throw std::invalid_argument("unknown engine '" + std::string(text) +
                              "' (expected wl1, fwl2-dense, fwl2-cosp, fwl2-cosp-dist:<k>)");
}

std::string Engine::name() const {
  switch (kind) {
    case Kind::kWl1: return "wl1";
    case Kind::kFwl2Dense: return "fwl2-dense";
    case Kind::kFwl2Cosp: return "fwl2-cosp";
    case Kind::kFwl2CospDist: return "fwl2-cosp-dist:" + std::to_string(max_dist);
  }
  return "?";
}

std::shared_ptr<const InteractionPlan> engine_plan(const Graph& g, const Engine& engine) {
  switch (engine.kind) {
    case Engine::Kind::kFwl2Dense:
      return std::make_shared<const InteractionPlan>(dense_plan(g));
    case Engine::Kind::kFwl2Cosp:
      return std::make_shared<const InteractionPlan>(
          cosparsify_plan(g, biconnected_decomposition(g)));
    case Engine::Kind::kFwl2CospDist:
      return std::make_shared<const InteractionPlan>(
          distance_bounded_plan(g, biconnected_decomposition(g), engine.max_dist));
    case Engine::Kind::kWl1:
      break;
  }
  throw std::invalid_argument("WL1 does not refine over pair plans");
}

namespace {

// Per-graph state between the stabilization pass and the common-round
// readout.
struct RunState {
  std::optional<PairQuotient> pairs;
  std::optional<NodeColoring> nodes;
  GraphSignature fixed;  // set when running a fixed number of layers
  int stable_iterations = 0;
  int iteration = 0;
};

}  // namespace

std::vector<GraphSignature> compute_signatures(std::span<const Graph> graphs, const Engine& engine,
                                               const RefineOptions& options) {
  if (options.layers && *options.layers < 0) throw std::invalid_argument("layers must be >= 0");
  std::vector<RunState> states(graphs.size());
  parallel_for(graphs.size(), options.jobs, [&](std::size_t i) {
    const Graph& g = graphs[i];
    RunState& s = states[i];
    if (engine.kind == Engine::Kind::kWl1) {
      s.nodes.emplace(g, Labels{});
      if (options.layers) {
        for (int l = 0; l < *options.layers; ++l) s.nodes->step();
        s.fixed = s.nodes->signature();
        s.fixed.rounds = *options.layers;
        s.nodes.reset();
      } else {
        s.stable_iterations = s.nodes->run_to_stable();
        s.iteration = s.nodes->iteration();
      }
      return;
    }
    auto plan = engine_plan(g, engine);
    PairColoring c = init_coloring(plan, initial_pair_features(g));
    if (options.layers) {
      for (int l = 0; l < *options.layers; ++l) c = refine_step(c);
      s.fixed = graph_signature(c);
      s.fixed.rounds = *options.layers;
      return;
    }
    StableColoring st = refine_to_stable(std::move(c));
    if (!st.converged) throw std::logic_error("refinement did not converge within its bound");
    s.stable_iterations = st.stable_iterations;
    s.iteration = st.coloring.iteration();
    s.pairs.emplace(st.coloring);
  });

  std::vector<GraphSignature> out(graphs.size());
  if (options.layers) {
    for (std::size_t i = 0; i < graphs.size(); ++i) out[i] = std::move(states[i].fixed);
    return out;
  }
  int common = 0;
  for (const auto& s : states) common = std::max(common, s.iteration);
  parallel_for(graphs.size(), options.jobs, [&](std::size_t i) {
    RunState& s = states[i];
    if (s.nodes) {
      while (s.nodes->iteration() < common) s.nodes->advance_stable();
      out[i] = s.nodes->signature();
    } else {
      while (s.pairs->iteration() < common) s.pairs->advance();
      out[i] = s.pairs->signature();
    }
    out[i].stable_iterations = s.stable_iterations;
    out[i].rounds = common;
  });
  return out;
}

bool distinguishes(const Graph& a, const Graph& b, const Engine& engine,
                   const RefineOptions& options) {
  const Graph both[] = {a, b};
  auto sigs = compute_signatures(both, engine, options);
  return sigs[0].digest != sigs[1].digest;
}

}  // namespace cosp
