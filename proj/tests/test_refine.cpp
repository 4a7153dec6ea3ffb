#include <gtest/gtest.h>

#include <map>
#include <set>

#include "cosp/generators.hpp"
#include "cosp/harness.hpp"
#include "cosp/oracle.hpp"
#include "cosp/refine.hpp"

using namespace cosp;

namespace {

PairColoring init_for(const Graph& g, const Engine& e) {
  return init_coloring(engine_plan(g, e), initial_pair_features(g));
}

StableColoring stable_for(const Graph& g, const Engine& e) {
  return refine_to_stable(init_for(g, e));
}

// Number of classes in the partition of pairs; with compact ids this is the
// color count, but computed independently here.
std::size_t classes(const PairColoring& c) {
  return std::set<std::uint32_t>(c.colors().begin(), c.colors().end()).size();
}

// True if every class of `fine` lies inside one class of `coarse`.
bool refines(const PairColoring& fine, const PairColoring& coarse) {
  std::map<std::uint32_t, std::uint32_t> up;
  for (std::int32_t i = 0; i < fine.plan().pair_count(); ++i) {
    auto [it, inserted] = up.try_emplace(fine.color(i), coarse.color(i));
    if (it->second != coarse.color(i)) return false;
  }
  return true;
}

Graph c6() { return graphs::cycle(6); }
Graph two_triangles() { return disjoint_union(graphs::complete(3), graphs::complete(3)); }

const Engine kFwlEngines[] = {Engine::dense(), Engine::cosp(), Engine::cosp_dist(2)};

}  // namespace

TEST(InitColoring, Triangle) {
  EXPECT_EQ(init_for(graphs::complete(3), Engine::dense()).num_colors(), 2u);
}

TEST(InitColoring, Path3) {
  auto c = init_for(graphs::path(3), Engine::cosp());
  EXPECT_EQ(c.num_colors(), 3u);
  const auto& p = c.plan();
  EXPECT_EQ(c.color(p.find(0, 2)), c.color(p.find(2, 0)));
  EXPECT_NE(c.color(p.find(0, 2)), c.color(p.find(0, 1)));
}

TEST(InitColoring, CrossComponentColorOnlyInDensePlan) {
  Graph g(5, {{0, 1}, {1, 2}, {0, 2}, {3, 4}});
  auto dense = init_for(g, Engine::dense());
  auto sparse = init_for(g, Engine::cosp());
  EXPECT_EQ(dense.num_colors(), sparse.num_colors() + 1);
  EXPECT_EQ(sparse.plan().find(0, 3), -1);
}

TEST(InitColoring, RejectsContinuousFeatures) {
  Graph g = graphs::path(3);
  auto enc = compute_rrwp(g, 2);
  EXPECT_THROW(init_coloring(engine_plan(g, Engine::cosp()), initial_pair_features(g, {}, &enc)),
               std::invalid_argument);
}

TEST(InitColoring, LabelsSplitColors) {
  Graph g = graphs::complete(3);
  Labels labels;
  labels.node = {0, 0, 1};
  auto c = init_coloring(engine_plan(g, Engine::cosp()), initial_pair_features(g, labels));
  EXPECT_GT(c.num_colors(), 2u);
}

TEST(Refine, StableColoringIsAFixedPoint) {
  Rng rng(1);
  for (int i = 0; i < 30; ++i) {
    Graph g = graphs::erdos_renyi(8, 0.35, rng);
    for (const auto& e : kFwlEngines) {
      auto s = stable_for(g, e);
      ASSERT_TRUE(s.converged);
      auto next = refine_step(s.coloring);
      EXPECT_EQ(next.num_colors(), s.coloring.num_colors());
      EXPECT_TRUE(refines(s.coloring, next));
      EXPECT_TRUE(refines(next, s.coloring));
    }
  }
}

TEST(Refine, MonotoneRefinement) {
  Rng rng(2);
  for (int i = 0; i < 30; ++i) {
    Graph g = graphs::erdos_renyi(9, 0.3, rng);
    for (const auto& e : kFwlEngines) {
      auto c = init_for(g, e);
      for (int round = 0; round < 6; ++round) {
        auto next = refine_step(c);
        EXPECT_TRUE(refines(next, c));
        EXPECT_GE(next.num_colors(), c.num_colors());
        EXPECT_EQ(next.iteration(), c.iteration() + 1);
        EXPECT_EQ(next.num_colors(), classes(next));
        c = std::move(next);
      }
    }
  }
}

TEST(Refine, ColorIdsAreCompactByFirstOccurrence) {
  auto c = refine_step(init_for(graphs::bowtie(), Engine::cosp()));
  std::uint32_t next = 0;
  for (auto col : c.colors()) {
    ASSERT_LE(col, next);
    if (col == next) ++next;
  }
  EXPECT_EQ(next, c.num_colors());
}

TEST(Refine, TriangleStabilizesQuickly) {
  auto s = stable_for(graphs::complete(3), Engine::dense());
  EXPECT_LE(s.stable_iterations, 2);
  EXPECT_EQ(s.coloring.num_colors(), 2u);
}

TEST(Refine, Path4Bound) {
  auto s = stable_for(graphs::path(4), Engine::dense());
  EXPECT_TRUE(s.converged);
  EXPECT_LE(s.stable_iterations, 16);
}

TEST(Refine, MaxItersCapsWork) {
  auto s = refine_to_stable(init_for(graphs::path(8), Engine::dense()), 1);
  EXPECT_FALSE(s.converged);
  EXPECT_EQ(s.coloring.iteration(), 1);
}

// Stable 2-FWL classes on small vertex-transitive graphs coincide with the
// orbits of the automorphism group on ordered pairs.
TEST(Refine, StableClassesMatchPairOrbits) {
  for (const Graph& g : {graphs::petersen(), graphs::cycle(7), graphs::complete(5), graphs::cycle(6)}) {
    const int n = g.num_nodes();
    auto autos = automorphisms(g);
    std::vector<int> orbit(static_cast<std::size_t>(n) * n, -1);
    int orbits = 0;
    for (int idx = 0; idx < n * n; ++idx) {
      if (orbit[idx] >= 0) continue;
      for (const auto& a : autos) orbit[a[idx / n] * n + a[idx % n]] = orbits;
      ++orbits;
    }
    for (const auto& e : {Engine::dense(), Engine::cosp()}) {
      auto s = stable_for(g, e);
      EXPECT_EQ(static_cast<int>(s.coloring.num_colors()), orbits);
      const auto& p = s.coloring.plan();
      for (int a = 0; a < n * n; ++a) {
        for (int b = 0; b < n * n; ++b) {
          const bool same_color = s.coloring.color(p.find(a / n, a % n)) == s.coloring.color(p.find(b / n, b % n));
          EXPECT_EQ(same_color, orbit[a] == orbit[b]);
        }
      }
    }
  }
}

TEST(Wl1, HierarchyFixtures) {
  EXPECT_EQ(wl1_signature(c6()).digest, wl1_signature(two_triangles()).digest);
  EXPECT_NE(wl1_signature(graphs::complete(3)).digest, wl1_signature(graphs::path(3)).digest);
  EXPECT_EQ(wl1_signature(graphs::rook_4x4()).digest, wl1_signature(graphs::shrikhande()).digest);
}

TEST(Distinguishes, CycleVersusTwoTriangles) {
  EXPECT_FALSE(distinguishes(c6(), two_triangles(), Engine::wl1()));
  EXPECT_TRUE(distinguishes(c6(), two_triangles(), Engine::dense()));
  EXPECT_TRUE(distinguishes(c6(), two_triangles(), Engine::cosp()));
}

TEST(Signature, CycleVersusTwoTrianglesComponentReadout) {
  auto a = graph_signature(stable_for(c6(), Engine::cosp()).coloring);
  auto b = graph_signature(stable_for(two_triangles(), Engine::cosp()).coloring);
  EXPECT_NE(a.digest, b.digest);
  EXPECT_EQ(a.component_digests.size(), 1u);
  EXPECT_EQ(b.component_digests.size(), 2u);
  EXPECT_EQ(b.component_digests[0], b.component_digests[1]);
}

TEST(Signature, CopiesChangeTheDigest) {
  EXPECT_TRUE(distinguishes(graphs::complete(3), two_triangles(), Engine::cosp()));
  EXPECT_TRUE(distinguishes(graphs::complete(3), two_triangles(), Engine::dense()));
}

// Strongly regular graphs with equal parameters: 2-FWL stabilizes on the
// same three-class partition (diagonal, adjacent, non-adjacent) for both, so
// neither engine separates them. The two engines agree.
TEST(Distinguishes, StronglyRegularPairAgreementAcrossEngines) {
  const Graph rook = graphs::rook_4x4();
  const Graph shri = graphs::shrikhande();
  for (const auto& e : {Engine::dense(), Engine::cosp()}) {
    EXPECT_EQ(stable_for(rook, e).coloring.num_colors(), 3u);
    EXPECT_EQ(stable_for(shri, e).coloring.num_colors(), 3u);
  }
  EXPECT_EQ(distinguishes(rook, shri, Engine::dense()), distinguishes(rook, shri, Engine::cosp()));
  EXPECT_FALSE(distinguishes(rook, shri, Engine::wl1()));
}

TEST(Signature, InvariantUnderRelabeling) {
  Rng rng(3);
  for (int i = 0; i < 40; ++i) {
    Graph g = graphs::erdos_renyi(2 + static_cast<int>(uniform_below(rng, 9)), 0.3, rng);
    Graph h = g.permuted(random_permutation(rng, g.num_nodes()));
    for (const auto& e : {Engine::wl1(), Engine::dense(), Engine::cosp(), Engine::cosp_dist(2)}) {
      EXPECT_FALSE(distinguishes(g, h, e)) << e.name();
    }
  }
}

TEST(Signature, FixedLayersStillComparable) {
  RefineOptions o;
  o.layers = 1;
  Graph g = graphs::bowtie();
  EXPECT_FALSE(distinguishes(g, g.permuted(std::vector<Node>{4, 3, 2, 1, 0}), Engine::cosp(), o));
}

TEST(NodeSignature, Orbits) {
  auto k3 = stable_for(graphs::complete(3), Engine::cosp()).coloring;
  EXPECT_EQ(node_signature(k3, 0), node_signature(k3, 1));
  EXPECT_EQ(node_signature(k3, 1), node_signature(k3, 2));

  auto p3 = stable_for(graphs::path(3), Engine::cosp()).coloring;
  EXPECT_EQ(node_signature(p3, 0), node_signature(p3, 2));
  EXPECT_NE(node_signature(p3, 0), node_signature(p3, 1));

  auto bow = stable_for(graphs::bowtie(), Engine::cosp()).coloring;
  for (Node v : {0, 1, 3, 4}) {
    EXPECT_EQ(node_signature(bow, v), node_signature(bow, 0));
    EXPECT_NE(node_signature(bow, v), node_signature(bow, 2));
  }
}

TEST(Engine, ParseAndName) {
  EXPECT_EQ(Engine::parse("wl1"), Engine::wl1());
  EXPECT_EQ(Engine::parse("fwl2-dense"), Engine::dense());
  EXPECT_EQ(Engine::parse("dense"), Engine::dense());
  EXPECT_EQ(Engine::parse("cosp"), Engine::cosp());
  EXPECT_EQ(Engine::parse("fwl2-cosp-dist:3"), Engine::cosp_dist(3));
  EXPECT_EQ(Engine::parse(Engine::cosp_dist(4).name()), Engine::cosp_dist(4));
  EXPECT_THROW(Engine::parse("fwl3"), std::invalid_argument);
  EXPECT_THROW(Engine::parse("cosp-dist:0"), std::invalid_argument);
  EXPECT_THROW(Engine::parse("cosp-dist:x"), std::invalid_argument);
}

// Engine hierarchy and counting soundness over an exhaustive corpus plus
// disjoint unions.
TEST(Hierarchy, Wl1IsCoarserAndTwoFwlEnginesAgree) {
  Corpus c = enumerate_connected_upto(5);
  Corpus u = union_corpus(c, 300, 5);
  for (auto& e : u.entries) c.entries.push_back(std::move(e));
  const auto graphs = c.graphs();
  const auto wl = signature_classes(compute_signatures(graphs, Engine::wl1()));
  const auto dense = signature_classes(compute_signatures(graphs, Engine::dense()));
  const auto cosp = signature_classes(compute_signatures(graphs, Engine::cosp()));
  const auto tri = Pattern::named("cycle3");
  std::vector<std::int64_t> counts;
  for (const auto& g : graphs) counts.push_back(count_occurrences(g, tri).total);
  std::int64_t wl_only = 0, fwl_only = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (std::size_t j = i + 1; j < graphs.size(); ++j) {
      const bool sw = wl[i] != wl[j], sd = dense[i] != dense[j], sc = cosp[i] != cosp[j];
      ASSERT_EQ(sd, sc) << i << " " << j;
      wl_only += sw && !sc;
      fwl_only += sc && !sw;
      if (counts[i] != counts[j] && sd) EXPECT_TRUE(sc);
    }
  }
  EXPECT_EQ(wl_only, 0);
  EXPECT_GT(fwl_only, 0);
}

TEST(ComputeSignatures, ParallelMatchesSequential) {
  const auto graphs = glued_corpus(20, 9).graphs();
  RefineOptions par;
  par.jobs = 4;
  const auto a = compute_signatures(graphs, Engine::cosp());
  const auto b = compute_signatures(graphs, Engine::cosp(), par);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].digest, b[i].digest);
}
