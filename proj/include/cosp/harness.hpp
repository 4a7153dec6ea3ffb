#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cosp/connectivity.hpp"
#include "cosp/graph.hpp"
#include "cosp/oracle.hpp"
#include "cosp/refine.hpp"

namespace cosp {

inline constexpr std::string_view kReportSchema = "cosp-report/1";

// Enough information to rebuild a corpus graph exactly.
struct Provenance {
  enum class Kind { kEnumerated, kFile, kGenerated };
  Kind kind = Kind::kGenerated;
  // enumerated(n, index)
  int n = 0;
  int index = 0;
  // file(path, line)
  std::string path;
  int line = 0;
  // generated(generator, seed, params); unions list their parts
  std::string generator;
  std::uint64_t seed = 0;
  std::vector<int> params;
  std::vector<Provenance> parts;

  std::string describe() const;
};

struct CorpusEntry {
  Graph graph;
  Provenance provenance;
};

struct Corpus {
  std::string name;
  std::vector<CorpusEntry> entries;

  std::size_t size() const { return entries.size(); }
  std::vector<Graph> graphs() const;
};

enum class GraphFormat { kEdgeList, kGraph6 };

// All graphs on n nodes up to isomorphism (n <= 8), canonically labeled and
// ordered by canonical code. Counts follow OEIS A000088.
const std::vector<Graph>& all_graphs(int n);
// Connected ones only (OEIS A001349); refuses n > 8.
Corpus enumerate_connected(int n);
Corpus enumerate_connected_upto(int n);
Corpus enumerate_trees(int n);

// Disjoint unions of two (occasionally three) graphs drawn from `base`,
// whose entries must be enumerated.
Corpus union_corpus(const Corpus& base, int count, std::uint64_t seed);

struct GluedOptions {
  int min_nodes = 18;
  int max_nodes = 30;
  int min_block = 2;
  int max_block = 8;
};
Corpus glued_corpus(int count, std::uint64_t seed, const GluedOptions& options = {});
// G(n, p) with n in [2, max_nodes] and p in [0.1, 0.6].
Corpus random_corpus(int count, int max_nodes, std::uint64_t seed);
Corpus cycle_corpus(int min_n, int max_n);

// graph6: one graph per line. Edge list: a single file, or a directory of
// files read in lexicographic order.
Corpus load_corpus(const std::filesystem::path& path, GraphFormat format);

// Specs: connected:N, connected-upto:N, trees:N, unions:COUNT:MAXN,
// glued:COUNT[:MIN_NODES:MAX_NODES], random:COUNT:MAXN, cycles:MIN:MAX.
// Throws std::invalid_argument.
Corpus corpus_from_spec(std::string_view spec, std::uint64_t seed);

Graph reconstruct(const Provenance& provenance);

struct RunOptions {
  int jobs = 1;
  std::optional<int> layers;
  // Emit wall-clock seconds in reports (breaks byte-for-byte determinism).
  bool timing = false;
};

struct EquivalenceReport {
  std::string corpus;
  Engine engine_a;
  Engine engine_b;
  std::int64_t graphs = 0;
  std::int64_t classes_a = 0;
  std::int64_t classes_b = 0;
  std::int64_t separated_only_by_a = 0;
  std::int64_t separated_only_by_b = 0;
  // Pairs (i, j), i < j, where exactly one engine separates; capped list.
  std::int64_t violation_count = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> violations;
  int rounds_a = 0;
  int rounds_b = 0;
  double seconds_a = 0.0;
  double seconds_b = 0.0;

  bool ok() const { return violation_count == 0; }
  nlohmann::ordered_json to_json(const Corpus& c, bool timing = false) const;
};

EquivalenceReport certify_equivalence(const Corpus& c, const Engine& a, const Engine& b,
                                      const RunOptions& options = {});

// Separation across all graph pairs, split by whether the oracle counts
// differ.
struct ContingencyTable {
  std::int64_t separated_count_differs = 0;
  std::int64_t separated_count_equal = 0;
  std::int64_t merged_count_differs = 0;
  std::int64_t merged_count_equal = 0;

  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;
};

struct CountingProbeReport {
  std::string corpus;
  std::string pattern;
  Engine engine;
  std::vector<std::int64_t> counts;
  // Signature class of each graph; i and j are separated iff classes differ.
  std::vector<std::int64_t> signature_class;
  ContingencyTable table;
  // Count-differing pairs the engine failed to separate (capped list).
  std::vector<std::pair<std::int64_t, std::int64_t>> missed;

  bool separates(std::size_t i, std::size_t j) const {
    return signature_class[i] != signature_class[j];
  }
  nlohmann::ordered_json to_json() const;
};

CountingProbeReport counting_probe(const Corpus& c, const Pattern& p, const Engine& engine,
                                   const RunOptions& options = {});
// Reuses signatures already computed for `c` under `engine`.
CountingProbeReport counting_probe(const Corpus& c, const Pattern& p, const Engine& engine,
                                   std::span<const GraphSignature> signatures,
                                   const RunOptions& options = {});

struct ProfileRow {
  int n = 0;
  std::int64_t m = 0;
  int components = 0;
  int blocks = 0;
  int largest_block = 0;
  std::int64_t sparse_pairs = 0;      // sum over components of n_i^2
  std::int64_t sparse_triples = 0;    // sum over blocks of |B|(|B|-1)(|B|-2)
  std::int64_t dense_pairs = 0;       // n^2
  std::int64_t dense_triples = 0;     // n(n-1)(n-2)
  std::int64_t dense_entries = 0;     // n^3
  bool plan_counts_match = false;     // closed forms == plan_stats iteration
  double pair_ratio = 0.0;
  double triple_ratio = 0.0;          // sparse / dense distinct triples
  double cubic_ratio = 0.0;           // sparse triples / n^3
  std::int64_t exact_bytes = 0;       // sparse pairs * d * 8
  std::int64_t padded_bytes = 0;      // eta^2 * d * 8, eta = corpus max n
  std::optional<std::int64_t> sparse_triple_macs;
  std::optional<std::int64_t> dense_triple_macs;
};

struct ProfileOptions {
  bool kernel = false;
  int width = 8;
  int layers = 2;
  int rrwp_order = 4;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct ProfileReport {
  std::string corpus;
  std::vector<ProfileRow> rows;
  double mean_pair_ratio = 0.0;
  double mean_triple_ratio = 0.0;
  double mean_cubic_ratio = 0.0;
  bool all_plan_counts_match = true;
  bool kernel_macs_match = true;
  ProfileOptions options;

  nlohmann::ordered_json to_json() const;
};

ProfileReport profile_complexity(const Corpus& c, const ProfileOptions& options = {});

// Components, blocks, cut nodes and block-cut tree edges of one graph.
nlohmann::ordered_json decomposition_to_json(const Graph& g, const ConnectivityDecomposition& d);

// Signature class ids (first-occurrence numbering of digests).
std::vector<std::int64_t> signature_classes(std::span<const GraphSignature> signatures);

}  // namespace cosp
