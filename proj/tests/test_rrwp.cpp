#include <gtest/gtest.h>

#include "cosp/connectivity.hpp"
#include "cosp/generators.hpp"
#include "cosp/rrwp.hpp"

using namespace cosp;

namespace {

// Probability that a uniform walk of `steps` steps from u ends at v,
// enumerated walk by walk.
double walk_probability(const Graph& g, Node u, Node v, int steps) {
  if (steps == 0) return u == v ? 1.0 : 0.0;
  if (g.degree(u) == 0) return 0.0;
  double total = 0.0;
  for (Node w : g.neighbors(u)) total += walk_probability(g, w, v, steps - 1);
  return total / g.degree(u);
}

}  // namespace

TEST(Rrwp, SingleEdgeParity) {
  auto e = compute_rrwp(graphs::complete(2), 3);
  auto a = e.at(0, 1);
  EXPECT_EQ(std::vector<double>(a.begin(), a.end()), (std::vector<double>{0, 1, 0}));
  auto b = e.at(0, 0);
  EXPECT_EQ(std::vector<double>(b.begin(), b.end()), (std::vector<double>{1, 0, 1}));
}

TEST(Rrwp, Triangle) {
  auto e = compute_rrwp(graphs::complete(3), 2);
  EXPECT_DOUBLE_EQ(e.at(0, 1)[1], 0.5);
  EXPECT_DOUBLE_EQ(e.at(0, 0)[1], 0.0);
}

TEST(Rrwp, PathEndpoints) {
  auto e = compute_rrwp(graphs::path(3), 3);
  EXPECT_DOUBLE_EQ(e.at(0, 2)[0], 0.0);
  EXPECT_DOUBLE_EQ(e.at(0, 2)[1], 0.0);
  EXPECT_DOUBLE_EQ(e.at(0, 2)[2], 0.5);
}

TEST(Rrwp, MatchesWalkEnumeration) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = graphs::erdos_renyi(7, 0.35, rng);
    auto e = compute_rrwp(g, 5);
    for (Node u = 0; u < 7; ++u) {
      for (Node v = 0; v < 7; ++v) {
        for (int k = 0; k < 5; ++k) EXPECT_NEAR(e.at(u, v)[k], walk_probability(g, u, v, k), 1e-12);
      }
    }
  }
}

TEST(Rrwp, SlicesAreStochasticAndBounded) {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = graphs::erdos_renyi(12, 0.2, rng);
    const int k = 6;
    auto e = compute_rrwp(g, k);
    auto comp = connected_components(g);
    for (Node u = 0; u < 12; ++u) {
      for (int s = 0; s < k; ++s) {
        double row = 0.0;
        for (Node v = 0; v < 12; ++v) {
          const double x = e.at(u, v)[s];
          EXPECT_GE(x, 0.0);
          EXPECT_LE(x, 1.0 + 1e-12);
          if (comp.component_of[u] != comp.component_of[v]) EXPECT_EQ(x, 0.0);
          row += x;
        }
        const double want = (s == 0 || g.degree(u) > 0) ? 1.0 : 0.0;
        EXPECT_NEAR(row, want, 1e-12);
      }
      EXPECT_EQ(e.at(u, u)[0], 1.0);
    }
  }
}

TEST(Rrwp, PermutationEquivariantExactly) {
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = graphs::erdos_renyi(9, 0.3, rng);
    auto perm = random_permutation(rng, 9);
    auto a = compute_rrwp(g, 4);
    auto b = compute_rrwp(g.permuted(perm), 4);
    for (Node u = 0; u < 9; ++u) {
      for (Node v = 0; v < 9; ++v) {
        for (int k = 0; k < 4; ++k) EXPECT_EQ(a.at(u, v)[k], b.at(perm[u], perm[v])[k]);
      }
    }
  }
}

TEST(Rrwp, RejectsNonPositiveOrder) {
  EXPECT_THROW(compute_rrwp(graphs::path(3), 0), std::invalid_argument);
}

TEST(PairFeatures, SingleEdge) {
  auto f = initial_pair_features(graphs::complete(2));
  const auto& x = f.at(0, 1);
  EXPECT_EQ(x.node_u, kNoLabel);
  EXPECT_EQ(x.node_v, kNoLabel);
  EXPECT_EQ(x.edge, 1);
  EXPECT_EQ(x.category, PairCategory::kAdjacent);
  EXPECT_FALSE(f.has_continuous());
}

TEST(PairFeatures, Categories) {
  Graph g(5, {{0, 1}, {1, 2}, {0, 2}, {3, 4}});
  auto f = initial_pair_features(g);
  EXPECT_EQ(f.at(0, 3).category, PairCategory::kDisconnected);
  EXPECT_EQ(f.at(2, 2).category, PairCategory::kSelf);
  auto p = initial_pair_features(graphs::path(3));
  EXPECT_EQ(p.at(0, 2).category, PairCategory::kConnected);
  EXPECT_EQ(p.at(0, 2).edge, 0);
}

TEST(PairFeatures, WithEncodingAndLabels) {
  Graph g = graphs::path(3);
  auto enc = compute_rrwp(g, 3);
  Labels labels;
  labels.node = {5, 6, 7};
  labels.edge[{0, 1}] = 2;
  labels.edge[{1, 2}] = 0;
  auto f = initial_pair_features(g, labels, &enc);
  EXPECT_TRUE(f.has_continuous());
  EXPECT_EQ(f.at(0, 2).rrwp, (std::vector<double>{0, 0, 0.5}));
  EXPECT_EQ(f.at(1, 0).edge, 3);
  EXPECT_EQ(f.at(1, 2).edge, 1);
  EXPECT_EQ(f.at(0, 2).edge, 0);
  EXPECT_EQ(f.at(2, 0).node_u, 7);
}

TEST(PairFeatures, RejectsForeignInputs) {
  Graph g = graphs::path(3);
  auto other = compute_rrwp(graphs::path(4), 2);
  EXPECT_THROW(initial_pair_features(g, {}, &other), std::invalid_argument);
  Labels short_labels;
  short_labels.node = {1, 2};
  EXPECT_THROW(initial_pair_features(g, short_labels), std::invalid_argument);
}
