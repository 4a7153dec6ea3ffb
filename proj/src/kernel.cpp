#include "cosp/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cosp/connectivity.hpp"
#include "cosp/generators.hpp"

namespace cosp {

KernelParams KernelParams::seeded(int layers, int width, std::uint64_t seed) {
  if (layers < 0 || width < 1) throw std::invalid_argument("invalid kernel shape");
  KernelParams p;
  p.layers = layers;
  p.width = width;
  p.seed = seed;
  p.activation = Activation::kTanh;
  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(2.0 * width);
  auto draw = [&] { return (2.0 * uniform_unit(rng) - 1.0) * scale; };
  const auto square = static_cast<std::size_t>(width) * width;
  for (int l = 0; l < layers; ++l) {
    LayerWeights w;
    w.carried.resize(square);
    w.message.resize(square);
    w.bias.resize(width);
    for (auto& x : w.carried) x = draw();
    for (auto& x : w.message) x = draw();
    for (auto& x : w.bias) x = draw();
    p.weights.push_back(std::move(w));
  }
  return p;
}

KernelParams KernelParams::projection(int layers, int width) {
  if (layers < 0 || width < 1) throw std::invalid_argument("invalid kernel shape");
  KernelParams p;
  p.layers = layers;
  p.width = width;
  p.activation = Activation::kIdentity;
  const auto square = static_cast<std::size_t>(width) * width;
  for (int l = 0; l < layers; ++l) {
    LayerWeights w{std::vector<double>(square, 0.0), std::vector<double>(square, 0.0),
                   std::vector<double>(width, 0.0)};
    for (int i = 0; i < width; ++i) w.carried[static_cast<std::size_t>(i) * width + i] = 1.0;
    p.weights.push_back(std::move(w));
  }
  return p;
}

namespace {

void validate(const Graph& g, const RrwpEncoding& encoding, const KernelParams& params) {
  if (encoding.num_nodes() != g.num_nodes()) {
    throw std::invalid_argument("RRWP encoding was computed for a different graph");
  }
  if (params.width < encoding.order()) {
    throw std::invalid_argument("kernel width must be at least the RRWP order");
  }
  if (static_cast<int>(params.weights.size()) != params.layers) {
    throw std::invalid_argument("kernel params hold the wrong number of layers");
  }
  const auto square = static_cast<std::size_t>(params.width) * params.width;
  for (const auto& w : params.weights) {
    if (w.carried.size() != square || w.message.size() != square ||
        w.bias.size() != static_cast<std::size_t>(params.width)) {
      throw std::invalid_argument("kernel weight dimensions do not match width");
    }
  }
}

void fill_initial(const Graph& g, const RrwpEncoding& encoding, const Labels& labels, Node u, Node v,
                  std::span<double> out) {
  const int k = encoding.order();
  const int width = static_cast<int>(out.size());
  auto p = encoding.at(u, v);
  std::copy(p.begin(), p.end(), out.begin());
  if (width > k) out[k] = (u != v && g.has_edge(u, v)) ? 1.0 : 0.0;
  if (!labels.node.empty()) {
    if (width > k + 1) out[k + 1] = labels.node[u];
    if (width > k + 2) out[k + 2] = labels.node[v];
  }
}

void apply_mixing(const LayerWeights& w, Activation act, std::span<const double> carried,
                  std::span<const double> message, std::span<double> out) {
  const std::size_t width = out.size();
  for (std::size_t i = 0; i < width; ++i) {
    double acc = w.bias[i];
    const double* wc = w.carried.data() + i * width;
    const double* wm = w.message.data() + i * width;
    for (std::size_t j = 0; j < width; ++j) acc += wc[j] * carried[j];
    for (std::size_t j = 0; j < width; ++j) acc += wm[j] * message[j];
    out[i] = act == Activation::kTanh ? std::tanh(acc) : acc;
  }
}

}  // namespace

PairTensor initial_tensor(const Graph& g, std::shared_ptr<const InteractionPlan> plan,
                          const RrwpEncoding& encoding, int width, const Labels& labels) {
  if (plan->num_nodes() != g.num_nodes()) throw std::invalid_argument("plan/graph mismatch");
  if (!labels.node.empty() && static_cast<int>(labels.node.size()) != g.num_nodes()) {
    throw std::invalid_argument("node label count does not match graph");
  }
  if (width < encoding.order()) throw std::invalid_argument("width below RRWP order");
  PairTensor h(plan, width);
  for (std::int32_t i = 0; i < plan->pair_count(); ++i) {
    const NodePair p = plan->pairs()[i];
    fill_initial(g, encoding, labels, p.u, p.v, h.at(i));
  }
  return h;
}

ForwardResult forward(const Graph& g, std::shared_ptr<const InteractionPlan> plan,
                      const RrwpEncoding& encoding, const KernelParams& params,
                      const Labels& labels) {
  validate(g, encoding, params);
  const int width = params.width;
  PairTensor h = initial_tensor(g, plan, encoding, width, labels);
  MacCounts macs;
  std::vector<double> message(width);
  for (int l = 0; l < params.layers; ++l) {
    PairTensor next(plan, width);
    for (std::int32_t i = 0; i < plan->pair_count(); ++i) {
      std::fill(message.begin(), message.end(), 0.0);
      for (const NeighborEntry& e : plan->neighbors(i)) {
        auto a = h.at(e.left);
        auto b = h.at(e.right);
        for (int j = 0; j < width; ++j) message[j] += a[j] * b[j];
        (e.tag == NeighborTag::kTriple ? macs.triple : macs.two_node) += width;
      }
      apply_mixing(params.weights[l], params.activation, h.at(i), message, next.at(i));
      macs.mixing += 2 * static_cast<std::int64_t>(width) * width;
    }
    h = std::move(next);
  }
  return {std::move(h), macs};
}

std::vector<double> forward_masked_dense(const Graph& g, const InteractionPlan& mask,
                                         const RrwpEncoding& encoding, const KernelParams& params,
                                         const Labels& labels) {
  validate(g, encoding, params);
  const int n = g.num_nodes();
  const int width = params.width;
  auto cell = [&](std::vector<double>& t, Node u, Node v) {
    return std::span<double>(t.data() + (static_cast<std::size_t>(u) * n + v) * width,
                             static_cast<std::size_t>(width));
  };
  std::vector<double> h(static_cast<std::size_t>(n) * n * width, 0.0);
  for (Node u = 0; u < n; ++u) {
    for (Node v = 0; v < n; ++v) fill_initial(g, encoding, labels, u, v, cell(h, u, v));
  }

  // keep[(u*n + v)*n + t]: whether the mask lists intermediate t for (u,v).
  std::vector<char> keep(static_cast<std::size_t>(n) * n * n, 0);
  for (std::int32_t i = 0; i < mask.pair_count(); ++i) {
    const NodePair p = mask.pairs()[i];
    for (const NeighborEntry& e : mask.neighbors(i)) {
      keep[(static_cast<std::size_t>(p.u) * n + p.v) * n + e.via] = 1;
    }
  }

  std::vector<double> message(width);
  for (int l = 0; l < params.layers; ++l) {
    std::vector<double> next = h;
    for (Node u = 0; u < n; ++u) {
      for (Node v = 0; v < n; ++v) {
        if (mask.find(u, v) < 0) continue;
        std::fill(message.begin(), message.end(), 0.0);
        for (Node t = 0; t < n; ++t) {
          if (!keep[(static_cast<std::size_t>(u) * n + v) * n + t]) continue;
          auto a = cell(h, u, t);
          auto b = cell(h, t, v);
          for (int j = 0; j < width; ++j) message[j] += a[j] * b[j];
        }
        apply_mixing(params.weights[l], params.activation, cell(h, u, v), message,
                     cell(next, u, v));
      }
    }
    h = std::move(next);
  }
  return h;
}

double check_equivariance(const Graph& g, const KernelParams& params, int rrwp_order, int trials,
                          std::uint64_t seed, KernelPlanFlavor flavor) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  auto make_plan = [&](const Graph& graph) {
    return std::make_shared<const InteractionPlan>(
        flavor == KernelPlanFlavor::kDense ? dense_plan(graph)
                                           : cosparsify_plan(graph, biconnected_decomposition(graph)));
  };
  const auto base_plan = make_plan(g);
  const auto base = forward(g, base_plan, compute_rrwp(g, rrwp_order), params);

  double scale = 0.0;
  for (double x : base.output.values()) scale = std::max(scale, std::abs(x));
  scale = std::max(scale, 1e-300);

  Rng rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const auto perm = random_permutation(rng, g.num_nodes());
    const Graph moved = g.permuted(perm);
    const auto moved_plan = make_plan(moved);
    const auto out = forward(moved, moved_plan, compute_rrwp(moved, rrwp_order), params);
    if (moved_plan->pair_count() != base_plan->pair_count()) return std::numeric_limits<double>::infinity();
    for (std::int32_t i = 0; i < base_plan->pair_count(); ++i) {
      const NodePair p = base_plan->pairs()[i];
      const auto j = moved_plan->find(perm[p.u], perm[p.v]);
      if (j < 0) return std::numeric_limits<double>::infinity();
      auto a = base.output.at(i);
      auto b = out.output.at(j);
      for (int k = 0; k < params.width; ++k) worst = std::max(worst, std::abs(a[k] - b[k]) / scale);
    }
  }
  return worst;
}

}  // namespace cosp
