#include "cfl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "cfl/absorption.hpp"
#include "cfl/bounds.hpp"
#include "cfl/cliques.hpp"
#include "cfl/constructions.hpp"
#include "cfl/embedding.hpp"
#include "cfl/generators.hpp"
#include "cfl/graph_io.hpp"
#include "cfl/invariants.hpp"
#include "cfl/random.hpp"
#include "cfl/regularity.hpp"
#include "cfl/tiling.hpp"

namespace cfl {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json rational(const Rational& r) { return r.to_string(); }

json ids(const VertexSet& s) { return s.to_vector(); }

json tiling_json(const CliqueTiling& t) {
  json out = json::array();
  for (const auto& m : t.members) out.push_back(ids(m));
  return out;
}

struct GraphSpec {
  std::string source;
  std::string name;
  std::string path;
  int n = 0;
  double p = 0;
  std::vector<int> parts;
  int r = 0;
  int ell = 0;
  Rational eta;
  std::string inner;
  int tries = 0;
  double gamma = 0;
  std::optional<int> min_degree;
};

struct Context {
  explicit Context(ConfigReader& reader) : cfg(reader) {}

  ConfigReader& cfg;
  std::uint64_t seed = 0;
  std::int64_t budget = kDefaultNodeBudget;
  fs::path out_dir;
  std::vector<std::string> sections{"run"};
  json results = json::object();
  json certificates = json::object();
  bool cap_hit = false;
  std::optional<bool> exhaustive;
  std::vector<fs::path> written;

  std::uint64_t graph_seed() const { return derive_seed(seed, 0); }
  std::uint64_t algo_seed() const { return derive_seed(seed, 1); }

  void done_reading() const { cfg.reject_unknown(sections); }

  void write(const std::string& name, const std::string& content) {
    write_file_atomic(out_dir / name, content);
    written.push_back(out_dir / name);
  }

  void write_graph(const Graph& g, const std::string& stem) {
    write(stem + ".g6", serialize_graph6(g));
    write(stem + ".txt", serialize_edge_list(g));
  }
};

Graph read_graph_input(const std::string& path) {
  try {
    return read_graph_file(path);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + to_string(e.kind()) + " at line " + std::to_string(e.line()) + ", offset " +
                     std::to_string(e.offset()) + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

Graph named_graph(const std::string& key, const std::string& name) {
  try {
    return builtin_graph(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

GraphSpec read_graph_spec(Context& ctx) {
  ctx.sections.push_back("graph");
  ConfigReader& c = ctx.cfg;
  GraphSpec s;
  s.source = c.one_of("graph.source",
                      {"builtin", "file", "gnp", "multipartite", "lower_bound", "cover_threshold", "sparse_klfree"});
  if (s.source == "builtin") {
    s.name = c.str("graph.name");
  } else if (s.source == "file") {
    s.path = c.str("graph.path");
  } else if (s.source == "gnp") {
    s.n = static_cast<int>(c.integer("graph.n", std::nullopt, 1, 4096));
    s.p = c.real("graph.p");
    if (!(s.p >= 0 && s.p <= 1)) throw ConfigError("graph.p", "must lie in [0, 1]");
  } else if (s.source == "multipartite") {
    s.parts = c.int_list("graph.parts");
    if (s.parts.empty()) throw ConfigError("graph.parts", "needs at least one part");
    for (int x : s.parts)
      if (x <= 0) throw ConfigError("graph.parts", "part sizes must be positive");
  } else if (s.source == "lower_bound" || s.source == "cover_threshold") {
    s.n = static_cast<int>(c.integer("graph.n", std::nullopt, 1, 4096));
    s.r = static_cast<int>(c.integer("graph.r", std::nullopt, 2, 64));
    s.ell = static_cast<int>(c.integer("graph.ell", std::nullopt, 1, 64));
    s.eta = c.rational(s.source == "lower_bound" ? "graph.eta" : "graph.x");
    if (c.has("graph.inner_path")) {
      s.path = c.str("graph.inner_path");
    } else {
      s.inner = c.str("graph.inner");
    }
  } else {
    s.n = static_cast<int>(c.integer("graph.n", std::nullopt, 2, 4096));
    s.ell = static_cast<int>(c.integer("graph.ell", std::nullopt, 2, 64));
    s.gamma = c.real("graph.gamma");
    s.tries = static_cast<int>(c.integer("graph.tries", 20, 1, 1'000'000));
  }
  if (c.has("graph.min_degree")) s.min_degree = static_cast<int>(c.integer("graph.min_degree", std::nullopt, 0));
  return s;
}

/// Builds the described graph; nullopt only when sparse sampling ran out of tries.
std::optional<Graph> build_graph(Context& ctx, const GraphSpec& s) {
  json info = {{"source", s.source}};
  std::optional<Graph> g;
  auto inner = [&]() { return s.path.empty() ? named_graph("graph.inner", s.inner) : read_graph_input(s.path); };
  if (s.source == "builtin") {
    g = named_graph("graph.name", s.name);
  } else if (s.source == "file") {
    g = read_graph_input(s.path);
  } else if (s.source == "gnp") {
    g = random_gnp(s.n, s.p, ctx.graph_seed());
  } else if (s.source == "multipartite") {
    g = complete_multipartite(s.parts);
  } else if (s.source == "lower_bound") {
    LowerBoundGraph lb;
    try {
      lb = build_lower_bound_graph({s.n, s.r, s.ell, s.eta, inner()});
    } catch (const std::invalid_argument& e) {
      throw ConfigError("graph", e.what());
    }
    info["x1"] = ids(lb.x1);
    info["x2"] = ids(lb.x2);
    info["mu"] = rational(lb.mu);
    info["tiling_cap"] = rational(Rational(s.r * lb.x1.count(), s.r - s.ell));
    ctx.certificates["inner_kl1_free"] = !contains_clique(lb.graph.induced(lb.x2), s.ell + 1);
    g = std::move(lb.graph);
  } else if (s.source == "cover_threshold") {
    CoverThresholdGraph ct;
    try {
      ct = build_cover_threshold_graph({s.n, s.r, s.ell, s.eta, inner()});
    } catch (const std::invalid_argument& e) {
      throw ConfigError("graph", e.what());
    }
    info["v"] = ct.v;
    info["neighborhood"] = ids(ct.neighborhood);
    info["clique"] = ids(ct.clique);
    info["min_degree_claimed"] = ct.min_degree;
    ctx.certificates["no_cover_at_v"] = !has_clique_cover(ct.graph, ct.v, s.r, VertexSet(ct.graph.order())).has_value();
    g = std::move(ct.graph);
  } else {
    SparseSample sample;
    try {
      sample = sample_sparse_klfree(s.n, s.ell, s.gamma, ctx.graph_seed(), s.tries, ctx.budget);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("graph", e.what());
    }
    info["p"] = number(sample.p);
    info["alpha_bound"] = sample.alpha_bound;
    json log = json::array();
    for (const auto& a : sample.log)
      log.push_back({{"seed", a.seed}, {"edges", a.edges}, {"outcome", a.outcome}, {"alpha", a.alpha}});
    info["attempts"] = log;
    info["found"] = sample.graph.has_value();
    if (sample.graph) {
      ctx.certificates["kl1_free"] = !contains_clique(*sample.graph, s.ell + 1);
      ctx.certificates["alpha_at_most_bound"] =
          alpha_ell_at_most(*sample.graph, s.ell, sample.alpha_bound, ctx.budget) == std::optional<bool>(true);
    }
    g = std::move(sample.graph);
  }
  if (g && s.min_degree) {
    if (*s.min_degree >= g->order()) throw ConfigError("graph.min_degree", "must be below the order");
    g = raise_min_degree(*g, *s.min_degree);
  }
  if (g) {
    info["order"] = g->order();
    info["edges"] = g->edge_count();
    info["min_degree"] = g->order() ? g->min_degree() : 0;
  }
  ctx.results["graph"] = info;
  return g;
}

Graph require_graph(Context& ctx, const GraphSpec& s) {
  auto g = build_graph(ctx, s);
  if (!g) {
    ctx.cap_hit = true;
    throw InputError("sparse sampling produced no graph within graph.tries");
  }
  return *g;
}

// Every handler reads all of its keys before calling done_reading(), so a
// bad config fails before any work starts.

void run_construct(Context& ctx) {
  GraphSpec s = read_graph_spec(ctx);
  ctx.done_reading();
  auto g = build_graph(ctx, s);
  if (g) ctx.write_graph(*g, "graph");
}

void run_alpha(Context& ctx) {
  GraphSpec s = read_graph_spec(ctx);
  ctx.sections.push_back("alpha");
  int ell = static_cast<int>(ctx.cfg.integer("alpha.ell", std::nullopt, 2, 64));
  std::string mode = ctx.cfg.one_of("alpha.mode", {"exact", "greedy"}, "exact");
  ctx.done_reading();
  Graph g = require_graph(ctx, s);
  AlphaResult r;
  if (mode == "exact") {
    AlphaOptions o;
    o.node_budget = ctx.budget;
    o.seed = ctx.algo_seed();
    r = alpha_ell_exact(g, ell, o);
    ctx.cap_hit = !r.exact;
  } else {
    r = alpha_ell_greedy(g, ell, ctx.algo_seed());
  }
  ctx.exhaustive = r.exact;
  ctx.results["value"] = r.value;
  ctx.results["exact"] = r.exact;
  ctx.results["nodes_explored"] = r.nodes_explored;
  ctx.certificates["witness"] = ids(r.witness);
  ctx.certificates["verified"] = is_kl_free(g, r.witness, ell) && r.witness.count() == r.value;
}

void run_tile(Context& ctx) {
  GraphSpec s = read_graph_spec(ctx);
  ctx.sections.push_back("tile");
  int r = static_cast<int>(ctx.cfg.integer("tile.r", std::nullopt, 1, 64));
  ctx.done_reading();
  Graph g = require_graph(ctx, s);
  TilingResult t = max_tiling(g, r, ctx.budget);
  ctx.cap_hit = !t.optimal;
  ctx.exhaustive = t.optimal;
  ctx.results["size"] = t.best.size();
  ctx.results["covered"] = t.best.covered.count();
  ctx.results["deficiency"] = t.deficiency;
  ctx.results["optimal"] = t.optimal;
  ctx.results["nodes_explored"] = t.nodes_explored;
  ctx.certificates["tiling"] = tiling_json(t.best);
  ctx.certificates["verified"] = verify_tiling(g, t.best);
}

void run_factor(Context& ctx) {
  GraphSpec s = read_graph_spec(ctx);
  ctx.sections.push_back("factor");
  int r = static_cast<int>(ctx.cfg.integer("factor.r", std::nullopt, 1, 64));
  ctx.done_reading();
  Graph g = require_graph(ctx, s);
  FactorResult f = has_factor(g, r, ctx.budget);
  ctx.cap_hit = f.status == FactorStatus::kIndeterminate;
  ctx.exhaustive = !ctx.cap_hit;
  ctx.results["status"] = to_string(f.status);
  ctx.results["found"] = f.found();
  ctx.results["reason"] = f.reason;
  ctx.results["nodes_explored"] = f.nodes_explored;
  if (f.factor) {
    ctx.certificates["factor"] = tiling_json(*f.factor);
    ctx.certificates["verified"] = verify_factor(g, *f.factor, g.all());
  }
}

void run_cover(Context& ctx) {
  GraphSpec s = read_graph_spec(ctx);
  ctx.sections.push_back("cover");
  int r = static_cast<int>(ctx.cfg.integer("cover.r", std::nullopt, 1, 64));
  auto v = ctx.cfg.integer("cover.vertex", 0, 0);
  std::string forbidden = ctx.cfg.str("cover.forbidden", "");
  ctx.done_reading();
  Graph g = require_graph(ctx, s);
  if (v >= g.order()) throw ConfigError("cover.vertex", "vertex outside the graph");
  Config tmp;
  tmp.set("cover.forbidden", forbidden);
  ConfigReader tr(tmp);
  VertexSet f = tr.vertex_set("cover.forbidden", g.order());
  if (f.contains(static_cast<Vertex>(v))) throw ConfigError("cover.forbidden", "contains the vertex itself");
  auto c = has_clique_cover(g, static_cast<Vertex>(v), r, f);
  ctx.exhaustive = true;
  ctx.results["found"] = c.has_value();
  if (c) {
    ctx.certificates["clique"] = ids(*c);
    ctx.certificates["verified"] = is_clique(g, *c) && c->count() == r && c->contains(static_cast<Vertex>(v)) &&
                                   !c->intersects(f);
  }
}

json verdict_json(const RegularityVerdict& v) {
  json out = {{"epsilon", rational(v.epsilon)},
              {"mode", to_string(v.mode)},
              {"regular", v.regular},
              {"certified", v.certified()},
              {"density", rational(v.density)},
              {"samples_used", v.samples_used}};
  if (v.witness) out["witness"] = {ids(v.witness->first), ids(v.witness->second)};
  if (v.failing_vertex) out["failing_vertex"] = *v.failing_vertex;
  return out;
}

void run_regcheck(Context& ctx) {
  GraphSpec s = read_graph_spec(ctx);
  ctx.sections.push_back("regcheck");
  ConfigReader& c = ctx.cfg;
  std::string task = c.one_of("regcheck.task", {"pair", "reduced", "super_regularize"}, "pair");
  SamplingOptions sampling;
  sampling.samples = c.integer("regcheck.samples", 2000, 1);
  sampling.seed = ctx.algo_seed();
  if (task == "reduced") {
    std::string path = c.str("regcheck.partition");
    Rational d = c.rational("regcheck.d");
    ctx.done_reading();
    Graph g = require_graph(ctx, s);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read partition " + path);
    std::ostringstream text;
    text << in.rdbuf();
    Partition p;
    try {
      p = parse_partition(text.str(), g.order());
      p.validate(g);
    } catch (const std::exception& e) {
      throw InputError(path + ": " + e.what());
    }
    ReducedGraph rg = reduced_graph(g, p, d);
    ctx.results["k"] = rg.k;
    ctx.results["d"] = rational(rg.d);
    ctx.results["edges"] = rg.graph.edge_count();
    ctx.results["min_degree"] = rg.min_degree;
    json w = json::array();
    for (const auto& row : rg.weights) {
      json jr = json::array();
      for (const auto& x : row) jr.push_back(rational(x));
      w.push_back(jr);
    }
    ctx.results["weights"] = w;
    ctx.write_graph(rg.graph, "reduced");
    return;
  }
  if (task == "super_regularize") {
    // clusters are read after the graph is known
    std::string clusters_text = c.str("regcheck.clusters");
    Rational eps = c.rational("regcheck.epsilon");
    ctx.done_reading();
    Graph g = require_graph(ctx, s);
    Config tmp;
    tmp.set("regcheck.clusters", clusters_text);
    ConfigReader tr(tmp);
    auto clusters = tr.vertex_sets("regcheck.clusters", g.order());
    SuperRegularization sr = make_super_regular(g, clusters, eps, sampling);
    json removed = json::array();
    for (const auto& r : sr.removed) removed.push_back(r);
    json refined = json::array();
    for (const auto& r : sr.refined) refined.push_back(ids(r));
    ctx.results["inputs_regular"] = sr.inputs_regular;
    ctx.results["sizes_ok"] = sr.sizes_ok;
    ctx.results["outputs_super_regular"] = sr.outputs_super_regular;
    ctx.results["removed"] = removed;
    json in_v = json::array();
    json out_v = json::array();
    for (const auto& v : sr.input_verdicts) in_v.push_back(verdict_json(v));
    for (const auto& v : sr.output_verdicts) out_v.push_back(verdict_json(v));
    ctx.results["input_verdicts"] = in_v;
    ctx.results["output_verdicts"] = out_v;
    ctx.certificates["refined"] = refined;
    bool all_exhaustive = true;
    for (const auto& v : sr.output_verdicts) all_exhaustive = all_exhaustive && v.mode == RegularityMode::kExhaustive;
    ctx.exhaustive = all_exhaustive;
    return;
  }
  std::string xs = c.str("regcheck.x");
  std::string ys = c.str("regcheck.y");
  Rational eps = c.rational("regcheck.epsilon");
  std::string mode = c.one_of("regcheck.mode", {"auto", "exhaustive", "sampled"}, "auto");
  std::optional<Rational> d;
  if (c.has("regcheck.d")) d = c.rational("regcheck.d");
  ctx.done_reading();
  Graph g = require_graph(ctx, s);
  Config tmp;
  tmp.set("regcheck.x", xs);
  tmp.set("regcheck.y", ys);
  ConfigReader tr(tmp);
  VertexSet x = tr.vertex_set("regcheck.x", g.order());
  VertexSet y = tr.vertex_set("regcheck.y", g.order());
  RegularityMode m = mode == "auto"         ? auto_mode(x, y)
                     : mode == "exhaustive" ? RegularityMode::kExhaustive
                                            : RegularityMode::kSampled;
  RegularityVerdict v = d ? is_super_regular(g, x, y, eps, *d, m, sampling) : is_regular_pair(g, x, y, eps, m, sampling);
  ctx.exhaustive = v.mode == RegularityMode::kExhaustive;
  ctx.results["verdict"] = verdict_json(v);
  ctx.results["regular"] = v.regular;
  ctx.results["certified"] = v.certified();
  if (v.witness) {
    Rational dd = pair_density(g, v.witness->first, v.witness->second);
    ctx.certificates["witness_density"] = rational(dd);
    ctx.certificates["verified"] = abs(dd - v.density) > eps;
  }
}

void run_drc(Context& ctx) {
  GraphSpec s = read_graph_spec(ctx);
  ctx.sections.push_back("drc");
  ConfigReader& c = ctx.cfg;
  std::string target = c.str("drc.target");
  std::string witness = c.str("drc.witness");
  int t = static_cast<int>(c.integer("drc.t", std::nullopt, 1, 64));
  int r = static_cast<int>(c.integer("drc.r", std::nullopt, 1, 16));
  int m = static_cast<int>(c.integer("drc.m", std::nullopt, 0));
  DrcOptions o;
  o.max_trials = static_cast<int>(c.integer("drc.trials", 20, 1));
  o.target_size = static_cast<int>(c.integer("drc.target_size", 0, 0));
  o.seed = ctx.algo_seed();
  ctx.done_reading();
  Graph g = require_graph(ctx, s);
  Config tmp;
  tmp.set("drc.target", target);
  tmp.set("drc.witness", witness);
  ConfigReader tr(tmp);
  VertexSet tc = tr.vertex_set("drc.target", g.order());
  VertexSet wc = tr.vertex_set("drc.witness", g.order());
  DrcOutcome out = drc_select(g, tc, wc, t, r, m, o);
  ctx.exhaustive = true;
  ctx.results["size"] = out.u.count();
  ctx.results["t_used"] = out.t_used;
  ctx.results["trials"] = out.trials;
  ctx.results["deletions"] = out.deletions;
  ctx.results["certified"] = out.certified;
  ctx.certificates["u"] = ids(out.u);
  ctx.certificates["verified"] = verify_drc(g, out.u, wc, r, m);
}

void run_embed(Context& ctx) {
  GraphSpec s = read_graph_spec(ctx);
  ctx.sections.push_back("embed");
  ConfigReader& c = ctx.cfg;
  std::string classes_text = c.str("embed.classes");
  int p = static_cast<int>(c.integer("embed.p", std::nullopt, 1, 16));
  int alpha_bound = static_cast<int>(c.integer("embed.alpha_bound", p, 1));
  EmbedOptions o;
  o.s = static_cast<int>(c.integer("embed.s", 2, 1, 64));
  o.beta = c.real("embed.beta", 0.1);
  o.drc_trials = static_cast<int>(c.integer("embed.trials", 50, 1));
  o.search_budget = c.integer("embed.search_budget", ctx.budget, 1);
  o.run_fallback = c.boolean("embed.fallback", true);
  o.seed = ctx.algo_seed();
  ctx.done_reading();
  Graph g = require_graph(ctx, s);
  Config tmp;
  tmp.set("embed.classes", classes_text);
  ConfigReader tr(tmp);
  auto classes = tr.vertex_sets("embed.classes", g.order());
  EmbedReport rep = embed_clique_in_tuple(g, classes, p, alpha_bound, o);
  ctx.results["success"] = rep.success;
  ctx.results["path"] = rep.path;
  ctx.results["stage"] = rep.stage;
  ctx.results["telemetry"] = rep.telemetry;
  if (rep.fallback_found) ctx.results["fallback_found"] = *rep.fallback_found;
  if (rep.clique) {
    ctx.certificates["clique"] = ids(*rep.clique);
    ctx.certificates["verified"] = verify_partite_clique(g, classes, p, *rep.clique);
  }
}

json reachable_json(const ReachableCertificate& c) {
  return {{"u", c.u},
          {"v", c.v},
          {"s", ids(c.s)},
          {"factor_u", tiling_json(c.factor_u)},
          {"factor_v", tiling_json(c.factor_v)}};
}

void run_absorb(Context& ctx) {
  ctx.sections.push_back("absorb");
  ConfigReader& c = ctx.cfg;
  std::string task = c.one_of("absorb.task", {"absorber", "reachable", "search", "xi", "closedness", "gadget"});
  int r = static_cast<int>(c.integer("absorb.r", std::nullopt, 2, 16));
  if (task == "gadget") {
    ctx.done_reading();
    ReachableGadget gad = build_reachable_gadget(r);
    auto cert = certify_reachable(gad.graph, gad.u, gad.v, gad.e, r, ctx.budget);
    ctx.exhaustive = true;
    ctx.results["order"] = gad.graph.order();
    ctx.results["e_size"] = gad.e.count();
    ctx.results["reachable"] = static_cast<bool>(cert);
    ctx.results["reason"] = cert.reason;
    json uc = json::array();
    json vc = json::array();
    for (const auto& x : gad.u_cliques) uc.push_back(ids(x));
    for (const auto& x : gad.v_cliques) vc.push_back(ids(x));
    ctx.certificates["u_cliques"] = uc;
    ctx.certificates["v_cliques"] = vc;
    if (cert) {
      ctx.certificates["reachable"] = reachable_json(*cert.certificate);
      ctx.certificates["verified"] = verify_reachable(gad.graph, *cert.certificate, r);
    }
    ctx.write_graph(gad.graph, "gadget");
    return;
  }
  GraphSpec s = read_graph_spec(ctx);
  std::map<std::string, std::string> sets;
  auto set_key = [&](const std::string& k) { sets[k] = c.str("absorb." + k); };
  std::int64_t t = 0;
  std::int64_t u = 0;
  std::int64_t v = 0;
  int limit = 0;
  Rational xi;
  std::string mode;
  SamplingOptions sampling;
  sampling.seed = ctx.algo_seed();
  std::int64_t pairs = 0;
  bool inner = false;
  if (task == "absorber") {
    set_key("s");
    set_key("a");
    t = c.integer("absorb.t", std::nullopt, 1);
  } else if (task == "reachable") {
    u = c.integer("absorb.u", std::nullopt, 0);
    v = c.integer("absorb.v", std::nullopt, 0);
    set_key("s");
  } else if (task == "search") {
    u = c.integer("absorb.u", std::nullopt, 0);
    v = c.integer("absorb.v", std::nullopt, 0);
    t = c.integer("absorb.t", std::nullopt, 1, 16);
    limit = static_cast<int>(c.integer("absorb.limit", 0, 0));
  } else if (task == "xi") {
    set_key("a");
    xi = c.rational("absorb.xi");
    mode = c.one_of("absorb.mode", {"exhaustive", "sampled"}, "exhaustive");
    sampling.samples = c.integer("absorb.samples", 2000, 1);
  } else {
    set_key("set");
    t = c.integer("absorb.t", std::nullopt, 1, 16);
    pairs = c.integer("absorb.pairs", 1000, 1);
    inner = c.boolean("absorb.inner", false);
    limit = static_cast<int>(c.integer("absorb.limit", 0, 0));
  }
  ctx.done_reading();
  Graph g = require_graph(ctx, s);
  Config tmp;
  for (const auto& [k, val] : sets) tmp.set("absorb." + k, val);
  ConfigReader tr(tmp);
  auto set_of = [&](const std::string& k) { return tr.vertex_set("absorb." + k, g.order()); };
  auto vertex = [&](const std::string& k, std::int64_t x) {
    if (x >= g.order()) throw ConfigError("absorb." + k, "vertex outside the graph");
    return static_cast<Vertex>(x);
  };
  if (task == "absorber") {
    auto cert = certify_absorber(g, set_of("s"), set_of("a"), r, static_cast<int>(t), ctx.budget);
    ctx.cap_hit = cert.reason == "node budget";
    ctx.results["absorber"] = static_cast<bool>(cert);
    ctx.results["reason"] = cert.reason;
    if (cert) {
      const auto& a = *cert.certificate;
      ctx.certificates["factor_of_a"] = tiling_json(a.factor_of_a);
      ctx.certificates["factor_of_a_union_s"] = tiling_json(a.factor_of_a_union_s);
      ctx.certificates["verified"] = verify_absorber(g, a, r);
    }
  } else if (task == "reachable") {
    auto cert = certify_reachable(g, vertex("u", u), vertex("v", v), set_of("s"), r, ctx.budget);
    ctx.cap_hit = cert.reason == "node budget";
    ctx.results["reachable"] = static_cast<bool>(cert);
    ctx.results["reason"] = cert.reason;
    if (cert) {
      ctx.certificates["reachable"] = reachable_json(*cert.certificate);
      ctx.certificates["verified"] = verify_reachable(g, *cert.certificate, r);
    }
  } else if (task == "search") {
    auto res = find_disjoint_reachable_sets(g, vertex("u", u), vertex("v", v), r, static_cast<int>(t), limit,
                                            std::nullopt, ctx.budget);
    ctx.cap_hit = !res.candidates_exhausted;
    ctx.exhaustive = res.candidates_exhausted;
    ctx.results["count"] = res.sets.size();
    ctx.results["candidates_examined"] = res.candidates_examined;
    json list = json::array();
    bool ok = true;
    for (const auto& cert : res.sets) {
      list.push_back(reachable_json(cert));
      ok = ok && verify_reachable(g, cert, r);
    }
    ctx.certificates["sets"] = list;
    ctx.certificates["verified"] = ok;
  } else if (task == "xi") {
    auto verdict = certify_xi_absorbing(g, set_of("a"), r, xi,
                                        mode == "exhaustive" ? RegularityMode::kExhaustive : RegularityMode::kSampled,
                                        sampling);
    ctx.cap_hit = verdict.budget_hit;
    ctx.exhaustive = verdict.mode == RegularityMode::kExhaustive && !verdict.budget_hit;
    ctx.results["absorbing"] = verdict.absorbing;
    ctx.results["mode"] = to_string(verdict.mode);
    ctx.results["max_leftover"] = verdict.max_leftover;
    ctx.results["sets_checked"] = verdict.sets_checked;
    if (verdict.witness) {
      ctx.certificates["witness"] = ids(*verdict.witness);
      ctx.certificates["verified"] =
          has_factor(g, r, set_of("a") | *verdict.witness, ctx.budget).status == FactorStatus::kAbsent;
    }
  } else {
    auto rep = closedness_report(g, set_of("set"), r, static_cast<int>(t), pairs, inner, ctx.algo_seed(), limit);
    ctx.exhaustive = rep.all_pairs;
    ctx.results["pairs_examined"] = rep.pairs_examined;
    ctx.results["all_pairs"] = rep.all_pairs;
    ctx.results["min_count"] = rep.min_count;
    ctx.results["median_count"] = number(rep.median_count);
    ctx.results["implied_beta"] = rational(rep.implied_beta);
    json weakest = json::array();
    for (auto [a, b] : rep.weakest_pairs) weakest.push_back({a, b});
    ctx.results["weakest_pairs"] = weakest;
  }
}

void run_rtt(Context& ctx) {
  ctx.sections.push_back("rtt");
  ConfigReader& c = ctx.cfg;
  int n = static_cast<int>(c.integer("rtt.n", std::nullopt, 1, 64));
  int r = static_cast<int>(c.integer("rtt.r", std::nullopt, 2, 16));
  int ell = static_cast<int>(c.integer("rtt.ell", std::nullopt, 2, 16));
  int alpha_bound = static_cast<int>(c.integer("rtt.alpha_bound", std::nullopt, 0, 64));
  RttOptions o;
  o.local_search_iterations = static_cast<int>(c.integer("rtt.iterations", 2000, 0));
  o.seed = ctx.algo_seed();
  o.node_budget = ctx.budget;
  ctx.done_reading();
  RttResult res = rtt_oracle(n, r, ell, alpha_bound, o);
  ctx.exhaustive = res.exhaustive;
  ctx.results["value"] = res.value;
  ctx.results["feasible"] = res.feasible;
  ctx.results["exhaustive"] = res.exhaustive;
  ctx.results["degenerate"] = res.degenerate;
  ctx.results["graphs_examined"] = res.graphs_examined;
  if (res.feasible) {
    const Graph& w = res.witness_graph;
    ctx.certificates["witness_graph6"] = serialize_graph6(w).substr(0, serialize_graph6(w).size() - 1);
    bool ok = w.order() == n && w.min_degree() == res.value &&
              alpha_ell_at_most(w, ell, alpha_bound, ctx.budget) == std::optional<bool>(true) &&
              has_factor(w, r, ctx.budget).status == FactorStatus::kAbsent;
    ctx.certificates["verified"] = ok;
  }
}

void run_thresholds(Context& ctx) {
  ctx.sections.push_back("thresholds");
  ConfigReader& c = ctx.cfg;
  int r = static_cast<int>(c.integer("thresholds.r", std::nullopt, 2, 1'000'000));
  int ell = static_cast<int>(c.integer("thresholds.ell", std::nullopt, 1, 1'000'000));
  int n = static_cast<int>(c.integer("thresholds.n", 1, 1));
  Rational rho = c.rational("thresholds.rho_star", Rational(0));
  std::vector<int> parts;
  if (c.has("thresholds.parts")) parts = c.int_list("thresholds.parts");
  ctx.done_reading();
  if (ell >= r) throw ConfigError("thresholds.ell", "must be below r");
  DegreeThresholds d;
  try {
    d = degree_thresholds(n, r, ell, rho);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("thresholds.rho_star", e.what());
  }
  ctx.exhaustive = true;
  ctx.results["tiling_term"] = rational(d.tiling_term);
  ctx.results["cover_term"] = rational(d.cover_term);
  ctx.results["fraction"] = rational(d.fraction);
  ctx.results["fraction_value"] = d.fraction.to_double();
  ctx.results["degree"] = rational(d.degree);
  if (!parts.empty()) {
    try {
      ctx.results["chi_cr"] = rational(chi_cr(parts));
      ctx.results["komlos_threshold"] = rational(komlos_threshold(parts));
    } catch (const std::exception& e) {
      throw ConfigError("thresholds.parts", e.what());
    }
  }
}

void run_bounds(Context& ctx) {
  ctx.sections.push_back("bounds");
  ConfigReader& c = ctx.cfg;
  std::string task = c.one_of("bounds.task", {"fkg", "janson", "delta", "drc", "growth"});
  ctx.exhaustive = true;
  if (task == "fkg") {
    int n = static_cast<int>(c.integer("bounds.n", std::nullopt, 0));
    int ell = static_cast<int>(c.integer("bounds.ell", std::nullopt, 1));
    double p = c.real("bounds.p");
    ctx.done_reading();
    double lb = fkg_lower_bound(n, ell, p);
    ctx.results["log_lower_bound"] = number(lb);
    ctx.results["lower_bound"] = number(std::exp(lb));
  } else if (task == "janson") {
    int a = static_cast<int>(c.integer("bounds.a", std::nullopt, 0));
    int ell = static_cast<int>(c.integer("bounds.ell", std::nullopt, 2));
    double p = c.real("bounds.p");
    ctx.done_reading();
    JansonReport j = janson_bound(a, ell, p);
    ctx.results["expected_x"] = number(j.expected_x);
    ctx.results["delta"] = number(j.delta);
    ctx.results["log_upper_bound"] = number(j.log_upper_bound);
    ctx.results["upper_bound"] = number(j.upper_bound());
  } else if (task == "delta") {
    int a = static_cast<int>(c.integer("bounds.a", std::nullopt, 0, 200));
    int ell = static_cast<int>(c.integer("bounds.ell", std::nullopt, 2, 64));
    ctx.done_reading();
    json poly = json::object();
    for (auto [e, count] : janson_delta_polynomial(a, ell)) poly[std::to_string(e)] = count;
    ctx.results["polynomial"] = poly;
  } else if (task == "drc") {
    int n = static_cast<int>(c.integer("bounds.n", std::nullopt, 1));
    double d = c.real("bounds.d");
    int t = static_cast<int>(c.integer("bounds.t", std::nullopt, 1));
    int r = static_cast<int>(c.integer("bounds.r", std::nullopt, 1));
    double m = c.real("bounds.m");
    double a = c.real("bounds.a");
    ctx.done_reading();
    DrcSlack s = drc_condition(n, d, t, r, m, a);
    ctx.results["slack"] = number(s.slack);
    ctx.results["log_gain"] = number(s.log_gain);
    ctx.results["log_loss"] = number(s.log_loss);
    ctx.results["holds"] = s.holds();
  } else {
    double n = c.real("bounds.n");
    double cc = c.real("bounds.c");
    double lambda = c.real("bounds.lambda");
    ctx.done_reading();
    ctx.results["alpha_bound"] = number(alpha_growth_bound(n, cc, lambda));
  }
}

const std::map<std::string, std::function<void(Context&)>>& handlers() {
  static const std::map<std::string, std::function<void(Context&)>> table{
      {"construct", run_construct}, {"alpha", run_alpha},   {"tile", run_tile},
      {"factor", run_factor},       {"cover", run_cover},   {"regcheck", run_regcheck},
      {"drc", run_drc},             {"embed", run_embed},   {"absorb", run_absorb},
      {"rtt", run_rtt},             {"thresholds", run_thresholds}, {"bounds", run_bounds}};
  return table;
}

}  // namespace

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds = [] {
    std::vector<std::string> k;
    for (const auto& [name, fn] : handlers()) k.push_back(name);
    return k;
  }();
  return kinds;
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

RunOutcome run_experiment(const std::string& kind, Config config, const RunOptions& options) {
  auto h = handlers().find(kind);
  if (h == handlers().end()) throw ConfigError("run.kind", "unknown experiment kind '" + kind + "'");
  if (auto k = config.get("run.kind"); k && *k != kind)
    throw ConfigError("run.kind", "config is for '" + *k + "', not '" + kind + "'");
  if (options.seed) config.set("run.seed", std::to_string(*options.seed));
  if (options.node_budget) config.set("run.node_budget", std::to_string(*options.node_budget));
  if (config.has("sweep.key") || config.has("sweep.values"))
    throw ConfigError("sweep", "sweep configs run through run_scan");

  ConfigReader reader(config);
  reader.str("run.kind", kind);
  Context ctx(reader);
  ctx.seed = reader.unsigned_integer("run.seed", 0);
  ctx.budget = reader.integer("run.node_budget", kDefaultNodeBudget, 1);
  ctx.out_dir = options.out_dir;
  fs::create_directories(ctx.out_dir);

  auto start = std::chrono::steady_clock::now();
  bool failed_input = false;
  std::string input_message;
  try {
    h->second(ctx);
  } catch (const InputError& e) {
    // a sampling shortfall still leaves a partial report behind
    if (!ctx.cap_hit) throw;
    failed_input = true;
    input_message = e.what();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(kind, e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(kind, e.what());
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  RunOutcome out;
  out.exit_code = ctx.cap_hit ? kExitCapHit : kExitOk;
  json flags = {{"cap_hit", ctx.cap_hit}};
  flags["exhaustive"] = ctx.exhaustive ? json(*ctx.exhaustive) : json(nullptr);
  if (failed_input) flags["message"] = input_message;
  json cfg = json::object();
  for (const auto& [k, v] : config.entries()) cfg[k] = v;
  out.report = {{"schema", kReportSchema},
                {"tool", "cfl"},
                {"version", kToolVersion},
                {"kind", kind},
                {"config_hash", config.hash()},
                {"config", cfg},
                {"seed", ctx.seed},
                {"rng", kRngName},
                {"node_budget", ctx.budget},
                {"results", ctx.results},
                {"certificates", ctx.certificates},
                {"flags", flags},
                {"exit_code", out.exit_code},
                {"timings", {{"wall_ms", ms}}}};
  write_file_atomic(ctx.out_dir / "report.json", out.report.dump(2) + "\n");
  out.written = std::move(ctx.written);
  out.written.push_back(ctx.out_dir / "report.json");
  return out;
}

namespace {

void flatten_scalars(const json& j, const std::string& prefix, std::map<std::string, std::string>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten_scalars(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_string()) {
    out[prefix] = j.get<std::string>();
  } else if (j.is_primitive() && !j.is_null()) {
    out[prefix] = j.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

RunOutcome run_scan(const std::string& kind, Config config, const RunOptions& options) {
  if (options.seed) config.set("run.seed", std::to_string(*options.seed));
  const std::string master_hash = config.hash();
  auto sweep = config.take_section("sweep");
  for (const auto& [k, v] : sweep)
    if (k != "key" && k != "values" && k != "replicates") throw ConfigError("sweep." + k, "unknown key");
  if (!sweep.count("key")) throw ConfigError("sweep.key", "missing required key");
  if (!sweep.count("values")) throw ConfigError("sweep.values", "missing required key");
  const std::string key = sweep["key"];
  if (key.find('.') == std::string::npos || key.rfind("sweep.", 0) == 0 || key == "run.seed")
    throw ConfigError("sweep.key", "must name a section.key outside [sweep], other than run.seed");
  std::vector<std::string> values;
  {
    std::string list = sweep["values"];
    std::size_t start = 0;
    while (start <= list.size()) {
      std::size_t at = list.find(',', start);
      std::string item = list.substr(start, at == std::string::npos ? std::string::npos : at - start);
      item.erase(0, item.find_first_not_of(" \t"));
      item.erase(item.find_last_not_of(" \t") + 1);
      if (!item.empty()) values.push_back(item);
      if (at == std::string::npos) break;
      start = at + 1;
    }
  }
  int replicates = 1;
  if (sweep.count("replicates")) {
    Config tmp;
    tmp.set("sweep.replicates", sweep["replicates"]);
    ConfigReader tr(tmp);
    replicates = static_cast<int>(tr.integer("sweep.replicates", std::nullopt, 1, 100'000));
  }
  std::uint64_t master_seed = 0;
  {
    ConfigReader tr(config);
    master_seed = tr.unsigned_integer("run.seed", 0);
  }

  struct Job {
    std::size_t point;
    int replicate;
    std::uint64_t seed;
    fs::path dir;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (int rep = 0; rep < replicates; ++rep) {
      char name[64];
      if (replicates == 1)
        std::snprintf(name, sizeof name, "point-%04zu", i);
      else
        std::snprintf(name, sizeof name, "point-%04zu-rep-%03d", i, rep);
      // replicate j uses the same seed at every grid point
      std::uint64_t seed = replicates == 1 ? master_seed : derive_seed(master_seed, static_cast<std::uint64_t>(rep));
      jobs.push_back({i, rep, seed, options.out_dir / name});
    }

  fs::create_directories(options.out_dir);
  std::vector<RunOutcome> outcomes(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
      try {
        Config point = config;
        point.set(key, values[jobs[j].point]);
        point.set("run.seed", std::to_string(jobs[j].seed));
        RunOptions po = options;
        po.out_dir = jobs[j].dir;
        po.seed.reset();
        outcomes[j] = run_experiment(kind, std::move(point), po);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };
  int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(std::max<std::size_t>(jobs.size(), 1))));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<std::map<std::string, std::string>> rows(jobs.size());
  std::set<std::string> columns;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    flatten_scalars(outcomes[j].report["results"], "results", rows[j]);
    for (const auto& [c, v] : rows[j]) columns.insert(c);
  }
  std::string csv = "point,replicate," + csv_field(key) + ",seed,exit_code,cap_hit";
  for (const auto& c : columns) csv += "," + csv_field(c);
  csv += "\n";
  RunOutcome out;
  json points = json::array();
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const json& rep = outcomes[j].report;
    csv += std::to_string(jobs[j].point) + "," + std::to_string(jobs[j].replicate) + "," +
           csv_field(values[jobs[j].point]) + "," + std::to_string(jobs[j].seed) + "," +
           std::to_string(outcomes[j].exit_code) + "," + (rep["flags"]["cap_hit"].get<bool>() ? "true" : "false");
    for (const auto& c : columns) {
      auto it = rows[j].find(c);
      csv += "," + (it == rows[j].end() ? std::string() : csv_field(it->second));
    }
    csv += "\n";
    points.push_back({{"point", jobs[j].point},
                      {"replicate", jobs[j].replicate},
                      {"value", values[jobs[j].point]},
                      {"seed", jobs[j].seed},
                      {"dir", jobs[j].dir.filename().string()},
                      {"config_hash", rep["config_hash"]},
                      {"exit_code", outcomes[j].exit_code}});
    if (outcomes[j].exit_code == kExitCapHit) out.exit_code = kExitCapHit;
    for (auto& w : outcomes[j].written) out.written.push_back(w);
  }
  write_file_atomic(options.out_dir / "aggregate.csv", csv);
  out.report = {{"schema", kReportSchema},
                {"tool", "cfl"},
                {"version", kToolVersion},
                {"kind", kind},
                {"config_hash", master_hash},
                {"seed", master_seed},
                {"rng", kRngName},
                {"sweep", {{"key", key}, {"values", values}, {"replicates", replicates}}},
                {"points", points},
                {"exit_code", out.exit_code}};
  write_file_atomic(options.out_dir / "scan.json", out.report.dump(2) + "\n");
  out.written.push_back(options.out_dir / "aggregate.csv");
  out.written.push_back(options.out_dir / "scan.json");
  return out;
}

RunOutcome run(const std::string& kind, Config config, const RunOptions& options) {
  bool sweep = false;
  for (const auto& [k, v] : config.entries()) sweep = sweep || k.rfind("sweep.", 0) == 0;
  return sweep ? run_scan(kind, std::move(config), options) : run_experiment(kind, std::move(config), options);
}

}  // namespace cfl
