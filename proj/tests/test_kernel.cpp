#include <gtest/gtest.h>

#include <cmath>

#include "cosp/connectivity.hpp"
#include "cosp/generators.hpp"
#include "cosp/kernel.hpp"

using namespace cosp;

namespace {

std::shared_ptr<const InteractionPlan> cosp_plan(const Graph& g) {
  return std::make_shared<const InteractionPlan>(cosparsify_plan(g, biconnected_decomposition(g)));
}

std::shared_ptr<const InteractionPlan> full_plan(const Graph& g) {
  return std::make_shared<const InteractionPlan>(dense_plan(g));
}

double max_rel_gap(const PairTensor& t, const std::vector<double>& dense, int n) {
  const int d = t.width();
  double scale = 1e-300, gap = 0.0;
  for (double x : dense) scale = std::max(scale, std::abs(x));
  for (std::int32_t i = 0; i < t.plan().pair_count(); ++i) {
    const NodePair p = t.plan().pairs()[i];
    auto a = t.at(i);
    for (int k = 0; k < d; ++k) {
      gap = std::max(gap, std::abs(a[k] - dense[(static_cast<std::size_t>(p.u) * n + p.v) * d + k]));
    }
  }
  return gap / scale;
}

}  // namespace

TEST(Kernel, ProjectionReturnsInitialFeatures) {
  for (const Graph& g : {graphs::bowtie(), graphs::cycle(5), graphs::path(4)}) {
    for (const auto& plan : {cosp_plan(g), full_plan(g)}) {
      auto enc = compute_rrwp(g, 3);
      auto out = forward(g, plan, enc, KernelParams::projection(2, 6));
      auto init = initial_tensor(g, plan, enc, 6);
      ASSERT_EQ(out.output.values().size(), init.values().size());
      for (std::size_t i = 0; i < init.values().size(); ++i) EXPECT_EQ(out.output.values()[i], init.values()[i]);
    }
  }
}

TEST(Kernel, BowtieTripleMacRatio) {
  Graph g = graphs::bowtie();
  auto enc = compute_rrwp(g, 4);
  auto params = KernelParams::seeded(1, 8, 3);
  auto sparse = forward(g, cosp_plan(g), enc, params);
  auto dense = forward(g, full_plan(g), enc, params);
  EXPECT_EQ(sparse.macs.triple, 12 * 8);
  EXPECT_EQ(dense.macs.triple, 60 * 8);
  EXPECT_EQ(sparse.macs.triple * 5, dense.macs.triple);
}

TEST(Kernel, TripleMacsEqualTripleCountTimesWidth) {
  Rng rng(21);
  for (int i = 0; i < 30; ++i) {
    Graph g = graphs::erdos_renyi(3 + static_cast<int>(uniform_below(rng, 10)), 0.3, rng);
    for (const auto& plan : {cosp_plan(g), full_plan(g)}) {
      const int layers = 1 + static_cast<int>(uniform_below(rng, 3));
      auto out = forward(g, plan, compute_rrwp(g, 4), KernelParams::seeded(layers, 8, i));
      const auto s = plan_stats(*plan);
      EXPECT_EQ(out.macs.triple, s.triple_count * 8 * layers);
      EXPECT_EQ(out.macs.two_node, s.two_node_count * 8 * layers);
      EXPECT_EQ(out.macs.mixing, s.pair_count * 2 * 64 * layers);
    }
  }
}

TEST(Kernel, MaskedDenseReferenceMatchesOnCycle) {
  Graph g = graphs::cycle(5);
  auto plan = cosp_plan(g);
  auto enc = compute_rrwp(g, 4);
  auto params = KernelParams::seeded(3, 8, 17);
  auto out = forward(g, plan, enc, params);
  auto ref = forward_masked_dense(g, *plan, enc, params);
  EXPECT_LE(max_rel_gap(out.output, ref, 5), 1e-12);
}

TEST(Kernel, MaskedDenseReferenceMatchesOnRandomGraphs) {
  Rng rng(22);
  for (int i = 0; i < 30; ++i) {
    Graph g = graphs::erdos_renyi(2 + static_cast<int>(uniform_below(rng, 10)), 0.3, rng);
    auto enc = compute_rrwp(g, 3);
    auto params = KernelParams::seeded(2, 6, i);
    for (const auto& plan : {cosp_plan(g), full_plan(g)}) {
      auto out = forward(g, plan, enc, params);
      EXPECT_LE(max_rel_gap(out.output, forward_masked_dense(g, *plan, enc, params), g.num_nodes()), 1e-12);
    }
  }
}

TEST(Kernel, DeterministicForFixedSeed) {
  Rng rng(23);
  Graph g = graphs::erdos_renyi(10, 0.3, rng);
  auto enc = compute_rrwp(g, 4);
  auto a = forward(g, cosp_plan(g), enc, KernelParams::seeded(2, 8, 5));
  auto b = forward(g, cosp_plan(g), enc, KernelParams::seeded(2, 8, 5));
  EXPECT_TRUE(std::equal(a.output.values().begin(), a.output.values().end(), b.output.values().begin()));
  for (double x : a.output.values()) EXPECT_TRUE(std::isfinite(x));
}

TEST(Kernel, Equivariance) {
  auto params = KernelParams::seeded(2, 8, 1);
  EXPECT_LE(check_equivariance(graphs::complete(3), params, 4, 5, 9), 1e-9);
  EXPECT_LE(check_equivariance(graphs::bowtie(), params, 4, 5, 9, KernelPlanFlavor::kDense), 1e-9);
  std::vector<int> sizes{6, 5, 4, 3, 6, 5, 4, 3};
  Rng rng(31);
  Graph glued = generate_glued(sizes, Attachment::random(8, rng), 31);
  ASSERT_EQ(glued.num_nodes(), 29);
  EXPECT_LE(check_equivariance(glued, params, 4, 10, 10), 1e-6);
  EXPECT_EQ(check_equivariance(glued, KernelParams::projection(2, 8), 4, 3, 1), 0.0);
}

TEST(Kernel, DimensionErrors) {
  Graph g = graphs::path(3);
  auto plan = cosp_plan(g);
  EXPECT_THROW(forward(g, plan, compute_rrwp(g, 9), KernelParams::seeded(1, 8, 0)), std::invalid_argument);
  EXPECT_THROW(forward(g, plan, compute_rrwp(graphs::path(4), 2), KernelParams::seeded(1, 8, 0)),
               std::invalid_argument);
  auto bad = KernelParams::seeded(2, 8, 0);
  bad.weights[1].bias.pop_back();
  EXPECT_THROW(forward(g, plan, compute_rrwp(g, 2), bad), std::invalid_argument);
  EXPECT_THROW(check_equivariance(g, KernelParams::seeded(1, 8, 0), 2, 0, 1), std::invalid_argument);
}
