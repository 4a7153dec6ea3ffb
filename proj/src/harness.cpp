#include "cosp/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "cosp/connectivity.hpp"
#include "cosp/generators.hpp"
#include "cosp/kernel.hpp"
#include "cosp/parallel.hpp"
#include "cosp/rrwp.hpp"
#include "cosp/sparsify.hpp"

namespace cosp {

namespace {

constexpr std::size_t kListCap = 100;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool is_connected(const Graph& g) {
  return g.num_nodes() <= 1 || connected_components(g).count() == 1;
}

Provenance enumerated(int n, int index) {
  Provenance p;
  p.kind = Provenance::Kind::kEnumerated;
  p.n = n;
  p.index = index;
  return p;
}

Provenance generated(std::string generator, std::uint64_t seed, std::vector<int> params) {
  Provenance p;
  p.kind = Provenance::Kind::kGenerated;
  p.generator = std::move(generator);
  p.seed = seed;
  p.params = std::move(params);
  return p;
}

std::vector<Graph> augment_all(const std::vector<Graph>& smaller, int n) {
  std::map<CanonicalCode, Graph> seen;
  const int old = n - 1;
  std::vector<std::pair<Node, Node>> edges;
  for (const Graph& g : smaller) {
    for (std::uint32_t mask = 0; mask < (1u << old); ++mask) {
      edges.clear();
      for (const Edge& e : g.edges()) edges.emplace_back(e.u, e.v);
      for (int v = 0; v < old; ++v) {
        if (mask >> v & 1u) edges.emplace_back(v, old);
      }
      Graph h(n, edges);
      auto code = canonical_code(h);
      if (!seen.contains(code)) seen.emplace(code, graph_from_code(code));
    }
  }
  std::vector<Graph> out;
  out.reserve(seen.size());
  for (auto& [code, g] : seen) out.push_back(std::move(g));
  return out;
}

Graph glued_instance(std::uint64_t seed, const GluedOptions& o) {
  Rng rng(seed);
  const int target = o.min_nodes + static_cast<int>(uniform_below(rng, o.max_nodes - o.min_nodes + 1));
  auto draw_size = [&] {
    return o.min_block + static_cast<int>(uniform_below(rng, o.max_block - o.min_block + 1));
  };
  std::vector<int> sizes{std::min(draw_size(), target)};
  int n = sizes[0];
  while (n < target) {
    const int s = std::min(draw_size(), target - n + 1);
    sizes.push_back(s);
    n += s - 1;
  }
  const auto attachment = Attachment::random(static_cast<int>(sizes.size()), rng);
  return generate_glued(sizes, attachment, derive_seed(seed, 0xb10c));
}

Graph random_instance(std::uint64_t seed, int max_nodes) {
  Rng rng(seed);
  const int n = 2 + static_cast<int>(uniform_below(rng, max_nodes - 1));
  const double p = 0.1 + 0.5 * uniform_unit(rng);
  return graphs::erdos_renyi(n, p, rng);
}

Graph union_of(std::span<const Provenance> parts) {
  Graph g(0, {});
  for (const auto& part : parts) g = disjoint_union(g, reconstruct(part));
  return g;
}

int parse_int(std::string_view text, std::string_view spec) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad number '" + std::string(text) + "' in corpus spec '" +
                                std::string(spec) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::ordered_json pair_list(const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs,
                                 const Corpus* c) {
  auto out = nlohmann::ordered_json::array();
  for (auto [i, j] : pairs) {
    nlohmann::ordered_json item{{"i", i}, {"j", j}};
    if (c != nullptr) {
      item["graph_i"] = c->entries[i].provenance.describe();
      item["graph_j"] = c->entries[j].provenance.describe();
    }
    out.push_back(std::move(item));
  }
  return out;
}

double ratio(std::int64_t a, std::int64_t b) {
  return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
}

}  // namespace

std::string Provenance::describe() const {
  std::ostringstream ss;
  switch (kind) {
    case Kind::kEnumerated:
      ss << "enumerated(" << n << "," << index << ")";
      break;
    case Kind::kFile:
      ss << "file(" << path << ":" << line << ")";
      break;
    case Kind::kGenerated:
      if (!parts.empty()) {
        ss << "union(";
        for (std::size_t i = 0; i < parts.size(); ++i) ss << (i ? "+" : "") << parts[i].describe();
        ss << ")";
        break;
      }
      ss << "generated(" << generator << ",seed=" << seed;
      for (int p : params) ss << "," << p;
      ss << ")";
      break;
  }
  return ss.str();
}

std::vector<Graph> Corpus::graphs() const {
  std::vector<Graph> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.graph);
  return out;
}

const std::vector<Graph>& all_graphs(int n) {
  if (n < 0 || n > 8) throw OracleRefusal("exhaustive enumeration is limited to n <= 8");
  static std::mutex mutex;
  static std::vector<std::vector<Graph>> cache;
  std::lock_guard lock(mutex);
  if (cache.empty()) cache.push_back({Graph(0, {})});
  while (static_cast<int>(cache.size()) <= n) {
    const int next = static_cast<int>(cache.size());
    cache.push_back(augment_all(cache.back(), next));
  }
  return cache[n];
}

Corpus enumerate_connected(int n) {
  if (n > 8) throw OracleRefusal("enumerate_connected refuses n > 8");
  if (n < 1) throw std::invalid_argument("enumerate_connected needs n >= 1");
  Corpus c{"connected:" + std::to_string(n), {}};
  for (const Graph& g : all_graphs(n)) {
    if (!is_connected(g)) continue;
    c.entries.push_back({g, enumerated(n, static_cast<int>(c.entries.size()))});
  }
  return c;
}

Corpus enumerate_connected_upto(int n) {
  Corpus c{"connected-upto:" + std::to_string(n), {}};
  for (int k = 1; k <= n; ++k) {
    auto part = enumerate_connected(k);
    for (auto& e : part.entries) c.entries.push_back(std::move(e));
  }
  return c;
}

Corpus enumerate_trees(int n) {
  auto all = enumerate_connected(n);
  Corpus c{"trees:" + std::to_string(n), {}};
  for (auto& e : all.entries) {
    if (e.graph.num_edges() == n - 1) c.entries.push_back(std::move(e));
  }
  return c;
}

Corpus union_corpus(const Corpus& base, int count, std::uint64_t seed) {
  if (base.entries.empty()) throw std::invalid_argument("union corpus needs a non-empty base");
  for (const auto& e : base.entries) {
    if (e.provenance.kind != Provenance::Kind::kEnumerated) {
      throw std::invalid_argument("union corpus base must be enumerated");
    }
  }
  Corpus c{"unions:" + std::to_string(count) + "@" + base.name, {}};
  for (int i = 0; i < count; ++i) {
    const auto item_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    Rng rng(item_seed);
    const int parts = uniform_below(rng, 4) == 0 ? 3 : 2;
    Provenance p = generated("union", item_seed, {});
    Graph g(0, {});
    for (int k = 0; k < parts; ++k) {
      const auto& part = base.entries[uniform_below(rng, base.entries.size())];
      p.parts.push_back(part.provenance);
      g = disjoint_union(g, part.graph);
    }
    c.entries.push_back({std::move(g), std::move(p)});
  }
  return c;
}

Corpus glued_corpus(int count, std::uint64_t seed, const GluedOptions& o) {
  if (o.min_block < 2 || o.max_block < o.min_block || o.min_nodes < 2 || o.max_nodes < o.min_nodes) {
    throw std::invalid_argument("invalid glued corpus options");
  }
  Corpus c{"glued:" + std::to_string(count), {}};
  for (int i = 0; i < count; ++i) {
    const auto item_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    c.entries.push_back({glued_instance(item_seed, o),
                         generated("glued", item_seed,
                                   {o.min_nodes, o.max_nodes, o.min_block, o.max_block})});
  }
  return c;
}

Corpus random_corpus(int count, int max_nodes, std::uint64_t seed) {
  if (max_nodes < 2) throw std::invalid_argument("random corpus needs max_nodes >= 2");
  Corpus c{"random:" + std::to_string(count) + ":" + std::to_string(max_nodes), {}};
  for (int i = 0; i < count; ++i) {
    const auto item_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    c.entries.push_back({random_instance(item_seed, max_nodes), generated("random", item_seed, {max_nodes})});
  }
  return c;
}

Corpus cycle_corpus(int min_n, int max_n) {
  if (min_n < 3 || max_n < min_n) throw std::invalid_argument("cycle corpus needs 3 <= min <= max");
  Corpus c{"cycles:" + std::to_string(min_n) + ":" + std::to_string(max_n), {}};
  for (int n = min_n; n <= max_n; ++n) c.entries.push_back({graphs::cycle(n), generated("cycle", 0, {n})});
  return c;
}

Corpus load_corpus(const std::filesystem::path& path, GraphFormat format) {
  Corpus c{path.filename().string(), {}};
  auto file_entry = [format](Graph g, const std::filesystem::path& p, int line) {
    Provenance prov;
    prov.kind = Provenance::Kind::kFile;
    prov.generator = format == GraphFormat::kGraph6 ? "graph6" : "edgelist";
    prov.path = p.string();
    prov.line = line;
    return CorpusEntry{std::move(g), std::move(prov)};
  };

  if (format == GraphFormat::kGraph6) {
    const std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      std::string_view view = line;
      if (view.starts_with(">>graph6<<")) view.remove_prefix(10);
      while (!view.empty() && std::isspace(static_cast<unsigned char>(view.back()))) view.remove_suffix(1);
      if (view.empty() || view.front() == '#') continue;
      try {
        c.entries.push_back(file_entry(parse_graph6(view), path, number));
      } catch (const ParseError& e) {
        throw ParseError(number, e.what());
      }
    }
    return c;
  }

  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(path)) {
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  for (const auto& f : files) c.entries.push_back(file_entry(parse_edge_list(read_file(f)), f, 1));
  return c;
}

Corpus corpus_from_spec(std::string_view spec, std::uint64_t seed) {
  const auto parts = split(spec, ':');
  const std::string_view kind = parts[0];
  auto arg = [&](std::size_t i) { return parse_int(parts.at(i), spec); };
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo + 1 || parts.size() > hi + 1) {
      throw std::invalid_argument("wrong number of arguments in corpus spec '" + std::string(spec) + "'");
    }
  };
  if (kind == "connected") {
    need(1, 1);
    return enumerate_connected(arg(1));
  }
  if (kind == "connected-upto") {
    need(1, 1);
    return enumerate_connected_upto(arg(1));
  }
  if (kind == "trees") {
    need(1, 1);
    return enumerate_trees(arg(1));
  }
  if (kind == "unions") {
    need(2, 2);
    if (arg(1) < 0) throw std::invalid_argument("union count must be non-negative");
    return union_corpus(enumerate_connected_upto(arg(2)), arg(1), seed);
  }
  if (kind == "glued") {
    need(1, 3);
    if (parts.size() == 3) throw std::invalid_argument("glued spec needs both MIN_NODES and MAX_NODES");
    GluedOptions o;
    if (parts.size() == 4) {
      o.min_nodes = arg(2);
      o.max_nodes = arg(3);
    }
    if (arg(1) < 0) throw std::invalid_argument("glued count must be non-negative");
    return glued_corpus(arg(1), seed, o);
  }
  if (kind == "random") {
    need(2, 2);
    if (arg(1) < 0) throw std::invalid_argument("random count must be non-negative");
    return random_corpus(arg(1), arg(2), seed);
  }
  if (kind == "cycles") {
    need(2, 2);
    return cycle_corpus(arg(1), arg(2));
  }
  throw std::invalid_argument("unknown corpus kind '" + std::string(kind) + "'");
}

Graph reconstruct(const Provenance& p) {
  switch (p.kind) {
    case Provenance::Kind::kEnumerated: {
      const auto c = enumerate_connected(p.n);
      return c.entries.at(p.index).graph;
    }
    case Provenance::Kind::kFile: {
      const std::string text = read_file(p.path);
      if (p.generator != "graph6") return parse_edge_list(text);
      std::istringstream in(text);
      std::string line;
      for (int i = 0; i < p.line; ++i) std::getline(in, line);
      std::string_view view = line;
      if (view.starts_with(">>graph6<<")) view.remove_prefix(10);
      return parse_graph6(view);
    }
    case Provenance::Kind::kGenerated:
      if (!p.parts.empty() || p.generator == "union") return union_of(p.parts);
      if (p.generator == "glued") {
        return glued_instance(p.seed, {p.params.at(0), p.params.at(1), p.params.at(2), p.params.at(3)});
      }
      if (p.generator == "random") return random_instance(p.seed, p.params.at(0));
      if (p.generator == "cycle") return graphs::cycle(p.params.at(0));
      throw std::invalid_argument("unknown generator '" + p.generator + "'");
  }
  throw std::logic_error("unreachable");
}

std::vector<std::int64_t> signature_classes(std::span<const GraphSignature> signatures) {
  std::map<Digest128, std::int64_t> ids;
  std::vector<std::int64_t> out;
  out.reserve(signatures.size());
  for (const auto& s : signatures) {
    auto [it, inserted] = ids.try_emplace(s.digest, static_cast<std::int64_t>(ids.size()));
    out.push_back(it->second);
  }
  return out;
}

EquivalenceReport certify_equivalence(const Corpus& c, const Engine& a, const Engine& b,
                                      const RunOptions& options) {
  const auto graphs = c.graphs();
  const RefineOptions refine{options.layers, options.jobs};

  EquivalenceReport r;
  r.corpus = c.name;
  r.engine_a = a;
  r.engine_b = b;
  r.graphs = static_cast<std::int64_t>(graphs.size());

  auto start = Clock::now();
  const auto sig_a = compute_signatures(graphs, a, refine);
  r.seconds_a = seconds_since(start);
  start = Clock::now();
  const auto sig_b = compute_signatures(graphs, b, refine);
  r.seconds_b = seconds_since(start);

  const auto ca = signature_classes(sig_a);
  const auto cb = signature_classes(sig_b);
  r.classes_a = ca.empty() ? 0 : *std::max_element(ca.begin(), ca.end()) + 1;
  r.classes_b = cb.empty() ? 0 : *std::max_element(cb.begin(), cb.end()) + 1;
  if (!sig_a.empty()) r.rounds_a = sig_a.front().rounds;
  if (!sig_b.empty()) r.rounds_b = sig_b.front().rounds;

  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (std::size_t j = i + 1; j < graphs.size(); ++j) {
      const bool sep_a = ca[i] != ca[j];
      const bool sep_b = cb[i] != cb[j];
      if (sep_a == sep_b) continue;
      (sep_a ? r.separated_only_by_a : r.separated_only_by_b) += 1;
      ++r.violation_count;
      if (r.violations.size() < kListCap) {
        r.violations.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));
      }
    }
  }
  return r;
}

nlohmann::ordered_json EquivalenceReport::to_json(const Corpus& c, bool timing) const {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["report"] = "equivalence";
  j["corpus"] = corpus;
  j["graphs"] = graphs;
  j["engine_a"] = engine_a.name();
  j["engine_b"] = engine_b.name();
  j["classes_a"] = classes_a;
  j["classes_b"] = classes_b;
  j["rounds_a"] = rounds_a;
  j["rounds_b"] = rounds_b;
  j["separated_only_by_a"] = separated_only_by_a;
  j["separated_only_by_b"] = separated_only_by_b;
  j["violation_count"] = violation_count;
  j["violations"] = pair_list(violations, &c);
  j["violations_truncated"] = static_cast<std::int64_t>(violations.size()) < violation_count;
  if (timing) j["seconds"] = {{"a", seconds_a}, {"b", seconds_b}};
  return j;
}

CountingProbeReport counting_probe(const Corpus& c, const Pattern& p, const Engine& engine,
                                   const RunOptions& options) {
  const auto graphs = c.graphs();
  const auto sigs = compute_signatures(graphs, engine, RefineOptions{options.layers, options.jobs});
  return counting_probe(c, p, engine, sigs, options);
}

CountingProbeReport counting_probe(const Corpus& c, const Pattern& p, const Engine& engine,
                                   std::span<const GraphSignature> signatures,
                                   const RunOptions& options) {
  if (signatures.size() != c.size()) throw std::invalid_argument("signature count does not match corpus");
  CountingProbeReport r;
  r.corpus = c.name;
  r.pattern = p.name;
  r.engine = engine;
  r.counts.assign(c.size(), 0);
  parallel_for(c.size(), options.jobs, [&](std::size_t i) {
    r.counts[i] = count_occurrences(c.entries[i].graph, p).total;
  });
  r.signature_class = signature_classes(signatures);

  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const bool differs = r.counts[i] != r.counts[j];
      if (r.separates(i, j)) {
        (differs ? r.table.separated_count_differs : r.table.separated_count_equal) += 1;
      } else {
        (differs ? r.table.merged_count_differs : r.table.merged_count_equal) += 1;
        if (differs && r.missed.size() < kListCap) {
          r.missed.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));
        }
      }
    }
  }
  return r;
}

nlohmann::ordered_json CountingProbeReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["report"] = "counting";
  j["corpus"] = corpus;
  j["pattern"] = pattern;
  j["engine"] = engine.name();
  j["graphs"] = counts.size();
  j["table"] = {
      {"separated", {{"count_differs", table.separated_count_differs},
                     {"count_equal", table.separated_count_equal}}},
      {"not_separated", {{"count_differs", table.merged_count_differs},
                         {"count_equal", table.merged_count_equal}}},
  };
  j["counts"] = counts;
  j["signature_class"] = signature_class;
  j["missed"] = pair_list(missed, nullptr);
  return j;
}

ProfileReport profile_complexity(const Corpus& c, const ProfileOptions& options) {
  ProfileReport r;
  r.corpus = c.name;
  r.options = options;
  r.rows.resize(c.size());
  int eta = 0;
  for (const auto& e : c.entries) eta = std::max(eta, e.graph.num_nodes());

  parallel_for(c.size(), options.jobs, [&](std::size_t i) {
    const Graph& g = c.entries[i].graph;
    const auto d = biconnected_decomposition(g);
    ProfileRow& row = r.rows[i];
    const std::int64_t n = g.num_nodes();
    row.n = g.num_nodes();
    row.m = g.num_edges();
    row.components = d.components().count();
    row.blocks = static_cast<int>(d.blocks().size());
    for (const auto& b : d.blocks()) row.largest_block = std::max(row.largest_block, static_cast<int>(b.size()));
    row.sparse_pairs = expected_pair_count(d);
    row.sparse_triples = expected_triple_count(d);
    row.dense_pairs = n * n;
    row.dense_triples = n * (n - 1) * (n - 2);
    if (n < 3) row.dense_triples = 0;
    row.dense_entries = n * n * n;

    auto plan = std::make_shared<const InteractionPlan>(cosparsify_plan(g, d));
    const auto stats = plan_stats(*plan);
    row.plan_counts_match = stats.pair_count == row.sparse_pairs && stats.triple_count == row.sparse_triples;

    row.pair_ratio = ratio(row.sparse_pairs, row.dense_pairs);
    row.triple_ratio = ratio(row.sparse_triples, row.dense_triples);
    row.cubic_ratio = ratio(row.sparse_triples, row.dense_entries);
    row.exact_bytes = row.sparse_pairs * options.width * static_cast<std::int64_t>(sizeof(double));
    row.padded_bytes = static_cast<std::int64_t>(eta) * eta * options.width * static_cast<std::int64_t>(sizeof(double));

    if (options.kernel && n > 0) {
      const auto params = KernelParams::seeded(options.layers, options.width, options.seed);
      const auto enc = compute_rrwp(g, options.rrwp_order);
      row.sparse_triple_macs = forward(g, plan, enc, params).macs.triple;
      auto dense = std::make_shared<const InteractionPlan>(dense_plan(g));
      row.dense_triple_macs = forward(g, dense, enc, params).macs.triple;
    }
  });

  double pair_sum = 0, triple_sum = 0, cubic_sum = 0;
  const std::int64_t scale = static_cast<std::int64_t>(options.width) * options.layers;
  for (const auto& row : r.rows) {
    pair_sum += row.pair_ratio;
    triple_sum += row.triple_ratio;
    cubic_sum += row.cubic_ratio;
    r.all_plan_counts_match = r.all_plan_counts_match && row.plan_counts_match;
    if (row.sparse_triple_macs) {
      r.kernel_macs_match = r.kernel_macs_match && *row.sparse_triple_macs == row.sparse_triples * scale &&
                            *row.dense_triple_macs == row.dense_triples * scale;
    }
  }
  if (!r.rows.empty()) {
    const double count = static_cast<double>(r.rows.size());
    r.mean_pair_ratio = pair_sum / count;
    r.mean_triple_ratio = triple_sum / count;
    r.mean_cubic_ratio = cubic_sum / count;
  }
  return r;
}

nlohmann::ordered_json ProfileReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["report"] = "profile";
  j["corpus"] = corpus;
  j["graphs"] = rows.size();
  j["kernel"] = options.kernel
                    ? nlohmann::ordered_json{{"width", options.width},
                                             {"layers", options.layers},
                                             {"rrwp_order", options.rrwp_order},
                                             {"seed", options.seed},
                                             {"triple_macs_match", kernel_macs_match}}
                    : nlohmann::ordered_json(nullptr);
  j["mean_pair_ratio"] = mean_pair_ratio;
  j["mean_triple_ratio"] = mean_triple_ratio;
  j["mean_cubic_ratio"] = mean_cubic_ratio;
  j["plan_counts_match"] = all_plan_counts_match;
  auto rows_json = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json x;
    x["n"] = row.n;
    x["m"] = row.m;
    x["components"] = row.components;
    x["blocks"] = row.blocks;
    x["largest_block"] = row.largest_block;
    x["sparse_pairs"] = row.sparse_pairs;
    x["dense_pairs"] = row.dense_pairs;
    x["sparse_triples"] = row.sparse_triples;
    x["dense_triples"] = row.dense_triples;
    x["dense_entries"] = row.dense_entries;
    x["pair_ratio"] = row.pair_ratio;
    x["triple_ratio"] = row.triple_ratio;
    x["cubic_ratio"] = row.cubic_ratio;
    x["exact_bytes"] = row.exact_bytes;
    x["padded_bytes"] = row.padded_bytes;
    if (row.sparse_triple_macs) {
      x["sparse_triple_macs"] = *row.sparse_triple_macs;
      x["dense_triple_macs"] = *row.dense_triple_macs;
    }
    rows_json.push_back(std::move(x));
  }
  j["rows"] = std::move(rows_json);
  return j;
}

nlohmann::ordered_json decomposition_to_json(const Graph& g, const ConnectivityDecomposition& d) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["report"] = "decomposition";
  j["nodes"] = g.num_nodes();
  j["edges"] = g.num_edges();
  j["components"] = d.components().members;
  j["blocks"] = d.blocks();
  j["cut_nodes"] = d.cut_nodes();
  auto tree = nlohmann::ordered_json::array();
  for (auto [block, cut] : d.block_cut_tree().edges) {
    tree.push_back({{"block", block}, {"cut_node", d.block_cut_tree().cut_nodes[cut]}});
  }
  j["block_cut_tree"] = std::move(tree);
  return j;
}

}  // namespace cosp
