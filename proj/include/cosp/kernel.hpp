#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cosp/graph.hpp"
#include "cosp/rrwp.hpp"
#include "cosp/sparsify.hpp"

namespace cosp {

enum class Activation { kIdentity, kTanh };

// h' = act(W_carried h + W_message m + b), weights row-major width x width.
struct LayerWeights {
  std::vector<double> carried;
  std::vector<double> message;
  std::vector<double> bias;
};

struct KernelParams {
  int layers = 1;
  int width = 8;
  std::uint64_t seed = 0;
  Activation activation = Activation::kTanh;
  std::vector<LayerWeights> weights;

  // Uniform weights in [-s, s], s = 1/sqrt(2 width); tanh activation.
  static KernelParams seeded(int layers, int width, std::uint64_t seed);
  // W_carried = I, W_message = 0, b = 0, identity activation: the layer
  // returns its input.
  static KernelParams projection(int layers, int width);
};

// Per-pair feature vectors over exactly the plan's materialized pairs.
class PairTensor {
 public:
  PairTensor(std::shared_ptr<const InteractionPlan> plan, int width)
      : plan_(std::move(plan)), width_(width),
        values_(static_cast<std::size_t>(plan_->pair_count()) * width, 0.0) {}

  const InteractionPlan& plan() const { return *plan_; }
  int width() const { return width_; }
  std::span<double> at(std::int32_t pair) {
    return {values_.data() + static_cast<std::size_t>(pair) * width_, static_cast<std::size_t>(width_)};
  }
  std::span<const double> at(std::int32_t pair) const {
    return {values_.data() + static_cast<std::size_t>(pair) * width_, static_cast<std::size_t>(width_)};
  }
  std::span<const double> values() const { return values_; }

 private:
  std::shared_ptr<const InteractionPlan> plan_;
  int width_;
  std::vector<double> values_;
};

// Multiply-accumulate counts, summed over layers. `triple` counts the
// element-wise products of TRIPLE entries, `two_node` those of the other
// tags, `mixing` the affine map.
struct MacCounts {
  std::int64_t triple = 0;
  std::int64_t two_node = 0;
  std::int64_t mixing = 0;

  std::int64_t message() const { return triple + two_node; }
  std::int64_t total() const { return triple + two_node + mixing; }
};

struct ForwardResult {
  PairTensor output;
  MacCounts macs;
};

// Initial h0(u,v): RRWP in slots [0, K), edge indicator in slot K, node
// labels in K+1 and K+2 when the width allows; zero elsewhere.
PairTensor initial_tensor(const Graph& g, std::shared_ptr<const InteractionPlan> plan,
                          const RrwpEncoding& encoding, int width, const Labels& labels = {});

// Message m(u,v) = sum over plan entries of h(u,t) * h(t,v) (element-wise),
// in the plan's entry order; then h' = act(W_c h + W_m m + b).
ForwardResult forward(const Graph& g, std::shared_ptr<const InteractionPlan> plan,
                      const RrwpEncoding& encoding, const KernelParams& params,
                      const Labels& labels = {});

// Reference on a dense n x n x d tensor: sums over all t in V in ascending
// order, keeping a term only if the mask plan lists it. Returns row-major
// [u][v][d] values; pairs missing from the mask keep their initial values.
std::vector<double> forward_masked_dense(const Graph& g, const InteractionPlan& mask,
                                         const RrwpEncoding& encoding, const KernelParams& params,
                                         const Labels& labels = {});

enum class KernelPlanFlavor { kDense, kCoSparse };

// Worst relative deviation between forward(pi g) and pi-permuted forward(g)
// over `trials` seeded permutations: max |a - b| / max(max |a|, tiny).
double check_equivariance(const Graph& g, const KernelParams& params, int rrwp_order, int trials,
                          std::uint64_t seed, KernelPlanFlavor flavor = KernelPlanFlavor::kCoSparse);

}  // namespace cosp
