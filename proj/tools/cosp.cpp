// Command-line front end: decompose, plan, compare, certify, count, profile.
//
// Exit codes: 0 success, 1 the command's contract failed (certify found
// violations), 2 invalid configuration, 3 input or output error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cosp/connectivity.hpp"
#include "cosp/graph.hpp"
#include "cosp/harness.hpp"
#include "cosp/oracle.hpp"
#include "cosp/refine.hpp"
#include "cosp/sparsify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace cosp;

namespace {

enum Exit { kOk = 0, kContract = 1, kConfig = 2, kIo = 3 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string format = "edgelist";
  std::optional<std::string> corpus;
  std::vector<std::string> engines;
  std::string flavor = "cosp";
  int k = 4;
  int max_dist = 0;
  std::optional<int> layers;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::vector<std::string> patterns;
  bool kernel = false;
  int width = 8;
  std::string out;
  int verbosity = 0;

  GraphFormat graph_format() const {
    return format == "graph6" ? GraphFormat::kGraph6 : GraphFormat::kEdgeList;
  }
  RunOptions run_options() const { return {jobs, layers, false}; }
};

void note(const RunConfig& cfg, const std::string& msg) {
  if (cfg.verbosity > 0) std::cerr << "cosp: " << msg << "\n";
}

// Rejects bad configurations before any work is done.
std::vector<Engine> validate(const RunConfig& cfg) {
  if (cfg.k < 1) throw ConfigError("--k must be at least 1");
  if (cfg.jobs < 1) throw ConfigError("--jobs must be at least 1");
  if (cfg.layers && *cfg.layers < 0) throw ConfigError("--layers must be non-negative");
  if (cfg.width < cfg.k) throw ConfigError("--width must be at least --k");
  for (const auto& in : cfg.inputs) {
    if (!fs::exists(in)) throw IoError("input not found: " + in);
  }
  if (!cfg.out.empty()) {
    const auto parent = fs::absolute(cfg.out).parent_path();
    if (!fs::is_directory(parent)) throw IoError("output directory does not exist: " + parent.string());
  }

  const std::string& c = cfg.command;
  auto need_inputs = [&](std::size_t count) {
    if (cfg.inputs.size() != count) {
      throw ConfigError(c + " needs exactly " + std::to_string(count) + " --input");
    }
  };
  if (c == "decompose") need_inputs(1);
  if (c == "plan") {
    need_inputs(1);
    if (cfg.flavor == "cosp-dist" && cfg.max_dist < 1) throw ConfigError("cosp-dist needs --max-dist >= 1");
    if (cfg.flavor != "cosp-dist" && cfg.max_dist != 0) throw ConfigError("--max-dist only applies to cosp-dist");
  }
  if (c == "compare") need_inputs(2);
  if (c == "certify" || c == "count" || c == "profile") {
    if (cfg.corpus.has_value() == !cfg.inputs.empty()) {
      throw ConfigError(c + " needs either --corpus or --input, not both");
    }
  }

  std::vector<Engine> engines;
  try {
    for (const auto& e : cfg.engines) engines.push_back(Engine::parse(e));
    for (const auto& p : cfg.patterns) Pattern::named(p);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (c == "compare") {
    if (engines.empty()) engines.push_back(Engine::cosp());
    if (engines.size() != 1) throw ConfigError("compare takes one --engine");
  }
  if (c == "certify") {
    if (engines.empty()) engines = {Engine::dense(), Engine::cosp()};
    if (engines.size() != 2) throw ConfigError("certify takes two --engine values");
  }
  if (c == "count" && engines.empty()) engines = {Engine::dense(), Engine::cosp()};
  return engines;
}

Graph load_one(const RunConfig& cfg, const std::string& path) {
  Corpus c = load_corpus(path, cfg.graph_format());
  if (c.size() != 1) throw ConfigError(path + " must hold exactly one graph");
  return c.entries[0].graph;
}

Corpus load_inputs(const RunConfig& cfg) {
  if (cfg.corpus) {
    try {
      return corpus_from_spec(*cfg.corpus, cfg.seed);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  Corpus all;
  for (const auto& in : cfg.inputs) {
    Corpus part = load_corpus(in, cfg.graph_format());
    all.name += (all.name.empty() ? "" : "+") + part.name;
    for (auto& e : part.entries) all.entries.push_back(std::move(e));
  }
  return all;
}

void emit(const RunConfig& cfg, const json& report) {
  const std::string text = report.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  // Write to a sibling temp file, then rename over the target.
  const fs::path target(cfg.out);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + tmp.string());
    f << text;
    if (!f.flush()) throw IoError("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("cannot write " + target.string() + ": " + ec.message());
  }
}

int cmd_decompose(const RunConfig& cfg) {
  const Graph g = load_one(cfg, cfg.inputs[0]);
  emit(cfg, decomposition_to_json(g, biconnected_decomposition(g)));
  return kOk;
}

int cmd_plan(const RunConfig& cfg) {
  const Graph g = load_one(cfg, cfg.inputs[0]);
  const InteractionPlan plan = cfg.flavor == "dense" ? dense_plan(g)
                               : cfg.flavor == "cosp"
                                   ? cosparsify_plan(g, biconnected_decomposition(g))
                                   : distance_bounded_plan(g, biconnected_decomposition(g), cfg.max_dist);
  json j;
  j["schema"] = kReportSchema;
  j["report"] = "plan";
  const json body = plan_to_json(plan);
  for (const auto& [key, value] : body.items()) j[key] = value;
  emit(cfg, j);
  return kOk;
}

int cmd_compare(const RunConfig& cfg, const Engine& engine) {
  std::vector<Graph> graphs{load_one(cfg, cfg.inputs[0]), load_one(cfg, cfg.inputs[1])};
  const auto sigs = compute_signatures(graphs, engine, RefineOptions{cfg.layers, cfg.jobs});
  json j;
  j["schema"] = kReportSchema;
  j["report"] = "compare";
  j["engine"] = engine.name();
  j["inputs"] = cfg.inputs;
  j["result"] = sigs[0].digest == sigs[1].digest ? "equivalent" : "distinguished";
  j["rounds"] = sigs[0].rounds;
  j["signatures"] = {sigs[0].digest.hex(), sigs[1].digest.hex()};
  emit(cfg, j);
  return kOk;
}

int cmd_certify(const RunConfig& cfg, const std::vector<Engine>& engines) {
  const Corpus c = load_inputs(cfg);
  note(cfg, "certifying " + std::to_string(c.size()) + " graphs");
  const auto start = std::chrono::steady_clock::now();
  const auto r = certify_equivalence(c, engines[0], engines[1], cfg.run_options());
  note(cfg, "done in " +
                std::to_string(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()) +
                " s");
  emit(cfg, r.to_json(c));
  return r.ok() ? kOk : kContract;
}

int cmd_count(const RunConfig& cfg, const std::vector<Engine>& engines) {
  const Corpus c = load_inputs(cfg);
  const auto graphs = c.graphs();
  std::vector<std::string> names = cfg.patterns.empty() ? Pattern::builtin_names() : cfg.patterns;
  std::vector<std::vector<GraphSignature>> sigs;
  for (const auto& e : engines) sigs.push_back(compute_signatures(graphs, e, RefineOptions{cfg.layers, cfg.jobs}));

  json j;
  j["schema"] = kReportSchema;
  j["report"] = "count";
  j["corpus"] = c.name;
  j["graphs"] = c.size();
  auto probes = json::array();
  for (const auto& name : names) {
    const auto pattern = Pattern::named(name);
    json entry;
    entry["pattern"] = name;
    entry["automorphisms"] = pattern.automorphism_count;
    auto per_engine = json::array();
    std::vector<CountingProbeReport> reports;
    for (std::size_t i = 0; i < engines.size(); ++i) {
      reports.push_back(counting_probe(c, pattern, engines[i], sigs[i], cfg.run_options()));
      json r = reports.back().to_json();
      json slim;
      slim["engine"] = r["engine"];
      slim["table"] = r["table"];
      slim["missed"] = r["missed"];
      per_engine.push_back(std::move(slim));
    }
    entry["counts"] = reports.front().counts;
    entry["engines"] = std::move(per_engine);
    probes.push_back(std::move(entry));
  }
  j["probes"] = std::move(probes);
  emit(cfg, j);
  return kOk;
}

int cmd_profile(const RunConfig& cfg) {
  const Corpus c = load_inputs(cfg);
  ProfileOptions o;
  o.kernel = cfg.kernel;
  o.width = cfg.width;
  o.layers = cfg.layers.value_or(2);
  o.rrwp_order = cfg.k;
  o.seed = cfg.seed;
  o.jobs = cfg.jobs;
  emit(cfg, profile_complexity(c, o).to_json());
  return kOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "Input format")
      ->check(CLI::IsMember({"edgelist", "graph6"}));
  sub->add_option("--seed", cfg.seed, "Seed for every random choice");
  sub->add_option("--jobs", cfg.jobs, "Worker threads");
  sub->add_option("--out", cfg.out, "Report path (default stdout)");
  sub->add_flag("-v,--verbose", cfg.verbosity, "Progress on stderr");
}

void add_corpus(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--input", cfg.inputs, "graph6 file, edge-list file or edge-list directory");
  sub->add_option("--corpus", cfg.corpus,
                  "connected:N | connected-upto:N | trees:N | unions:COUNT:MAXN | "
                  "glued:COUNT[:MIN:MAX] | random:COUNT:MAXN | cycles:MIN:MAX");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Connectivity-aware sparsification of 2-FWL refinement"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* decompose = app.add_subcommand("decompose", "Components, blocks and cut nodes of one graph");
  decompose->add_option("--input", cfg.inputs, "Graph file")->required();
  add_common(decompose, cfg);

  auto* plan = app.add_subcommand("plan", "Export an interaction plan with its counts");
  plan->add_option("--input", cfg.inputs, "Graph file")->required();
  plan->add_option("--flavor", cfg.flavor, "Plan flavor")->check(CLI::IsMember({"dense", "cosp", "cosp-dist"}));
  plan->add_option("--max-dist", cfg.max_dist, "Distance bound for cosp-dist");
  add_common(plan, cfg);

  auto* compare = app.add_subcommand("compare", "Whether an engine separates two graphs");
  compare->add_option("--input", cfg.inputs, "Two graph files")->required();
  compare->add_option("--engine", cfg.engines, "wl1 | dense | cosp | cosp-dist:K");
  compare->add_option("--layers", cfg.layers, "Fixed round count instead of stability");
  add_common(compare, cfg);

  auto* certify = app.add_subcommand("certify", "Check that two engines partition a corpus identically");
  add_corpus(certify, cfg);
  certify->add_option("--engine", cfg.engines, "Two engines (default dense and cosp)");
  certify->add_option("--layers", cfg.layers, "Fixed round count instead of stability");
  add_common(certify, cfg);

  auto* count = app.add_subcommand("count", "Substructure counting probes");
  add_corpus(count, cfg);
  count->add_option("--pattern", cfg.patterns, "Pattern names (default all built-ins)");
  count->add_option("--engine", cfg.engines, "Engines (default dense and cosp)");
  count->add_option("--layers", cfg.layers, "Fixed round count instead of stability");
  add_common(count, cfg);

  auto* profile = app.add_subcommand("profile", "Pair and triple counts, dense versus sparsified");
  add_corpus(profile, cfg);
  profile->add_flag("--kernel", cfg.kernel, "Also run the numeric kernel and count MACs");
  profile->add_option("--k", cfg.k, "RRWP order");
  profile->add_option("--width", cfg.width, "Kernel feature width");
  profile->add_option("--layers", cfg.layers, "Kernel layers (default 2)");
  add_common(profile, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    const auto engines = validate(cfg);
    if (cfg.command == "decompose") return cmd_decompose(cfg);
    if (cfg.command == "plan") return cmd_plan(cfg);
    if (cfg.command == "compare") return cmd_compare(cfg, engines[0]);
    if (cfg.command == "certify") return cmd_certify(cfg, engines);
    if (cfg.command == "count") return cmd_count(cfg, engines);
    if (cfg.command == "profile") return cmd_profile(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "cosp: " << e.what() << "\n";
    return kConfig;
  } catch (const OracleRefusal& e) {
    std::cerr << "cosp: " << e.what() << "\n";
    return kConfig;
  } catch (const ParseError& e) {
    std::cerr << "cosp: parse error: " << e.what() << "\n";
    return kIo;
  } catch (const IoError& e) {
    std::cerr << "cosp: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "cosp: " << e.what() << "\n";
    return kIo;
  }
  return kConfig;
}
