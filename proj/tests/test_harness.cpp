#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cosp/connectivity.hpp"
#include "cosp/generators.hpp"
#include "cosp/harness.hpp"

using namespace cosp;

namespace {

// Every labeled graph on n nodes, deduplicated pairwise with the brute-force
// isomorphism oracle.
std::vector<Graph> isomorphism_classes_bruteforce(int n) {
  std::vector<std::pair<Node, Node>> slots;
  for (Node v = 0; v < n; ++v) {
    for (Node u = 0; u < v; ++u) slots.emplace_back(u, v);
  }
  std::vector<Graph> reps;
  for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    std::vector<std::pair<Node, Node>> edges;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (mask >> i & 1u) edges.push_back(slots[i]);
    }
    Graph g(n, edges);
    bool seen = false;
    for (const auto& r : reps) {
      if (r.num_edges() == g.num_edges() && isomorphic_bruteforce(r, g)) {
        seen = true;
        break;
      }
    }
    if (!seen) reps.push_back(std::move(g));
  }
  return reps;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("cosp_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Enumeration, PublishedCounts) {
  const int connected[] = {1, 1, 2, 6, 21, 112, 853};
  const int all[] = {1, 2, 4, 11, 34, 156, 1044};
  for (int n = 1; n <= 7; ++n) {
    EXPECT_EQ(static_cast<int>(enumerate_connected(n).size()), connected[n - 1]) << n;
    EXPECT_EQ(static_cast<int>(all_graphs(n).size()), all[n - 1]) << n;
  }
  EXPECT_THROW(enumerate_connected(9), OracleRefusal);
}

TEST(Enumeration, MatchesBruteForceDedup) {
  for (int n = 1; n <= 5; ++n) {
    const auto reps = isomorphism_classes_bruteforce(n);
    EXPECT_EQ(reps.size(), all_graphs(n).size());
    int connected = 0;
    for (const auto& r : reps) connected += connected_components(r).count() == 1;
    EXPECT_EQ(connected, static_cast<int>(enumerate_connected(n).size()));
    // Every class is represented exactly once.
    for (const auto& r : reps) {
      int hits = 0;
      for (const auto& g : all_graphs(n)) hits += isomorphic_bruteforce(r, g);
      EXPECT_EQ(hits, 1);
    }
  }
}

TEST(Enumeration, TreesAreTrees) {
  // Unlabeled trees on 7 nodes (OEIS A000055).
  EXPECT_EQ(enumerate_trees(7).size(), 11u);
}

TEST(Provenance, ReconstructsEveryKind) {
  std::vector<Corpus> corpora{enumerate_connected_upto(5), union_corpus(enumerate_connected_upto(4), 30, 3),
                              glued_corpus(15, 4), random_corpus(20, 9, 5), cycle_corpus(3, 6)};
  for (const auto& c : corpora) {
    for (const auto& e : c.entries) EXPECT_EQ(reconstruct(e.provenance), e.graph) << e.provenance.describe();
  }
}

TEST(Corpora, SeededAndDeterministic) {
  auto a = glued_corpus(25, 11);
  auto b = glued_corpus(25, 11);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.entries[i].graph, b.entries[i].graph);
  auto c = glued_corpus(25, 12);
  int same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a.entries[i].graph == c.entries[i].graph;
  EXPECT_LT(same, 3);
}

TEST(Corpora, GluedShape) {
  for (const auto& e : glued_corpus(100, 1).entries) {
    EXPECT_GE(e.graph.num_nodes(), 18);
    EXPECT_LE(e.graph.num_nodes(), 30);
    auto d = biconnected_decomposition(e.graph);
    EXPECT_EQ(d.components().count(), 1);
    for (const auto& b : d.blocks()) EXPECT_LE(b.size(), 8u);
  }
}

TEST(Corpora, UnionsAreDisconnected) {
  for (const auto& e : union_corpus(enumerate_connected_upto(5), 50, 2).entries) {
    const auto parts = static_cast<int>(e.provenance.parts.size());
    EXPECT_TRUE(parts == 2 || parts == 3);
    EXPECT_EQ(connected_components(e.graph).count(), parts);
  }
}

TEST(Corpora, SpecParsing) {
  EXPECT_EQ(corpus_from_spec("connected:4", 0).size(), 6u);
  EXPECT_EQ(corpus_from_spec("connected-upto:4", 0).size(), 10u);
  EXPECT_EQ(corpus_from_spec("unions:7:3", 0).size(), 7u);
  EXPECT_EQ(corpus_from_spec("glued:3:10:12", 0).size(), 3u);
  EXPECT_EQ(corpus_from_spec("cycles:3:8", 0).size(), 6u);
  EXPECT_EQ(corpus_from_spec("random:5:6", 0).size(), 5u);
  for (const char* bad : {"connected", "connected:x", "glued:3:10", "nope:1", "cycles:2:5", "connected:9"}) {
    EXPECT_THROW(corpus_from_spec(bad, 0), std::invalid_argument) << bad;
  }
}

TEST(Corpora, LoadsGraph6FileAndEdgeListDirectory) {
  auto dir = temp_dir("load");
  {
    std::ofstream g6(dir / "small.g6");
    g6 << ">>graph6<<Bw\n\nB_\nCF\n";
  }
  auto c = load_corpus(dir / "small.g6", GraphFormat::kGraph6);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.entries[0].graph, graphs::complete(3));
  EXPECT_EQ(c.entries[2].provenance.line, 4);
  for (const auto& e : c.entries) EXPECT_EQ(reconstruct(e.provenance), e.graph);

  auto edges = dir / "edges";
  std::filesystem::create_directories(edges);
  std::ofstream(edges / "b.txt") << "3 2\n0 1\n1 2\n";
  std::ofstream(edges / "a.txt") << "# triangle\n3 3\n0 1\n1 2\n2 0\n";
  auto d = load_corpus(edges, GraphFormat::kEdgeList);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.entries[0].graph, graphs::complete(3));
  EXPECT_EQ(d.entries[1].graph, graphs::path(3));
  for (const auto& e : d.entries) EXPECT_EQ(reconstruct(e.provenance), e.graph);

  std::ofstream(dir / "bad.g6") << "Bw\nB!\n";
  try {
    load_corpus(dir / "bad.g6", GraphFormat::kGraph6);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(Certify, DenseAndCoSparseAgreeOnSmallCorpus) {
  auto c = enumerate_connected_upto(5);
  auto r = certify_equivalence(c, Engine::dense(), Engine::cosp());
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.classes_a, r.classes_b);
  EXPECT_EQ(r.classes_a, static_cast<std::int64_t>(c.size()));
}

TEST(Certify, SymmetricAndDeterministic) {
  Corpus c = union_corpus(enumerate_connected_upto(5), 200, 8);
  auto ab = certify_equivalence(c, Engine::wl1(), Engine::cosp());
  auto ba = certify_equivalence(c, Engine::cosp(), Engine::wl1());
  EXPECT_EQ(ab.violation_count, ba.violation_count);
  EXPECT_EQ(ab.separated_only_by_a, ba.separated_only_by_b);
  EXPECT_EQ(ab.violations, ba.violations);
  EXPECT_EQ(ab.to_json(c).dump(), certify_equivalence(c, Engine::wl1(), Engine::cosp()).to_json(c).dump());
}

TEST(Certify, Wl1IsCoarserOnMixedCorpus) {
  Corpus c = enumerate_connected_upto(6);
  for (auto& e : union_corpus(enumerate_connected_upto(5), 300, 1).entries) c.entries.push_back(std::move(e));
  auto r = certify_equivalence(c, Engine::wl1(), Engine::dense());
  EXPECT_GT(r.violation_count, 0);
  EXPECT_EQ(r.separated_only_by_a, 0);
  EXPECT_LE(r.violations.size(), 100u);
  EXPECT_TRUE(certify_equivalence(c, Engine::dense(), Engine::cosp()).ok());
}

TEST(CountingProbe, TrianglesAreAlwaysSeparated) {
  auto c = enumerate_connected_upto(6);
  auto tri = Pattern::named("cycle3");
  auto d = counting_probe(c, tri, Engine::dense());
  auto s = counting_probe(c, tri, Engine::cosp());
  EXPECT_EQ(d.table.merged_count_differs, 0);
  EXPECT_EQ(s.table.merged_count_differs, 0);
  EXPECT_EQ(d.table, s.table);
  EXPECT_TRUE(s.missed.empty());
}

TEST(CountingProbe, SixCyclesSameSeparationForBothEngines) {
  auto c = enumerate_connected_upto(6);
  auto p = Pattern::named("cycle6");
  auto d = counting_probe(c, p, Engine::dense());
  auto s = counting_probe(c, p, Engine::cosp());
  EXPECT_EQ(d.table, s.table);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) ASSERT_EQ(d.separates(i, j), s.separates(i, j));
  }
}

TEST(CountingProbe, TreesHaveNoTriangles) {
  auto c = enumerate_trees(7);
  auto r = counting_probe(c, Pattern::named("cycle3"), Engine::cosp());
  for (auto x : r.counts) EXPECT_EQ(x, 0);
  EXPECT_EQ(r.table.separated_count_differs + r.table.merged_count_differs, 0);
}

TEST(Profile, TreesHaveZeroTripleRatio) {
  auto r = profile_complexity(enumerate_trees(7));
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.sparse_triples, 0);
    EXPECT_EQ(row.triple_ratio, 0.0);
  }
  EXPECT_TRUE(r.all_plan_counts_match);
}

TEST(Profile, CyclesKeepEveryDistinctTriple) {
  auto r = profile_complexity(cycle_corpus(3, 12));
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.sparse_triples, row.dense_triples);
    EXPECT_EQ(row.triple_ratio, 1.0);
    EXPECT_EQ(row.pair_ratio, 1.0);
  }
}

TEST(Profile, GluedSmallBlocksAreSparse) {
  GluedOptions o;
  o.min_nodes = 30;
  o.max_nodes = 30;
  o.max_block = 6;
  auto r = profile_complexity(glued_corpus(200, 6, o));
  EXPECT_LE(r.mean_triple_ratio, 0.05);
  EXPECT_TRUE(r.all_plan_counts_match);
  for (const auto& row : r.rows) EXPECT_EQ(row.padded_bytes, 30 * 30 * 8 * 8);
}

TEST(Profile, KernelMacsConfirmCounts) {
  ProfileOptions o;
  o.kernel = true;
  auto r = profile_complexity(glued_corpus(10, 2), o);
  EXPECT_TRUE(r.kernel_macs_match);
  for (const auto& row : r.rows) {
    ASSERT_TRUE(row.sparse_triple_macs.has_value());
    EXPECT_EQ(*row.sparse_triple_macs, row.sparse_triples * 8 * 2);
  }
  EXPECT_EQ(r.to_json().dump(), profile_complexity(glued_corpus(10, 2), o).to_json().dump());
}
