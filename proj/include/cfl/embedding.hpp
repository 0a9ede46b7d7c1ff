#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cfl/graph.hpp"
#include "cfl/tiling.hpp"

namespace cfl {

struct DrcOptions {
  int max_trials = 20;
  std::uint64_t seed = 0;
  /// Stop at the first certified U at least this large (0: run every trial).
  int target_size = 0;
};

struct DrcOutcome {
  VertexSet u;
  int t_used = 0;
  int trials = 0;
  std::int64_t deletions = 0;  // in the trial that produced u
  bool certified = false;
};

/// Dependent random choice: draw t vertices of `witness_class` with
/// repetition, keep their common neighbourhood inside `target_class`, then
/// delete a vertex from every r-subset with fewer than m common neighbours
/// in `witness_class` until none is left. Keeps the largest U over the trials.
DrcOutcome drc_select(const Graph& g, const VertexSet& target_class, const VertexSet& witness_class, int t, int r,
                      int m, const DrcOptions& options = {});

/// Full scan: every r-subset of u has at least m common neighbours in `witness_class`.
bool verify_drc(const Graph& g, const VertexSet& u, const VertexSet& witness_class, int r, int m);

/// r-uniform r-partite hypergraph. Each edge lists one vertex per class, in
/// class order.
struct PartiteHypergraph {
  int universe = 0;
  std::vector<VertexSet> classes;
  std::set<std::vector<Vertex>> edges;

  int arity() const { return static_cast<int>(classes.size()); }
  /// Throws std::invalid_argument unless classes are disjoint and every edge is a transversal.
  void validate() const;
  bool contains(const std::vector<Vertex>& e) const { return edges.count(e) != 0; }
  /// {e : v + e is an edge} for v in the first class.
  std::set<std::vector<Vertex>> link(Vertex v) const;
};

/// Transversal q-sets of the classes spanning cliques of G.
PartiteHypergraph transversal_clique_hypergraph(const Graph& g, const std::vector<VertexSet>& classes);

struct AuditOptions {
  int delta_cap = 4;            // |S| <= delta_cap
  int weight_cap = 12;          // |union of S| <= weight_cap
  std::int64_t exhaustive_limit = 200'000;  // candidate sets before switching to sampling
  std::int64_t samples = 20'000;
  std::size_t keep = 64;        // dangerous sets stored verbatim
};

struct DangerAudit {
  bool exhaustive = true;
  std::int64_t sets_examined = 0;
  std::int64_t dangerous = 0;
  std::vector<std::int64_t> dangerous_by_size;  // index |S|
  double threshold = 0;  // beta * |V_1|
  std::vector<std::vector<std::vector<Vertex>>> examples;
};

struct DrcStep {
  PartiteHypergraph result;
  std::vector<Vertex> sampled;
  DangerAudit audit;
};

/// Samples s vertices of V_1 with repetition and keeps the intersection of
/// their links. The audit counts, for edge sets S of the result, the vertices
/// of V_1 extending every edge of S; S is dangerous if fewer than beta |V_1|.
DrcStep hypergraph_drc_step(const PartiteHypergraph& h, int s, double beta, std::uint64_t seed,
                            const AuditOptions& audit = {});

struct EmbedOptions {
  int s = 2;
  double beta = 0.1;
  int drc_trials = 50;
  std::uint64_t seed = 0;
  std::int64_t search_budget = 2'000'000;
  bool run_fallback = true;  // also run the direct search when the cascade succeeds
};

struct EmbedReport {
  bool success = false;
  std::optional<VertexSet> clique;
  std::string path;   // "drc", "fallback" or "none"
  std::string stage;  // where the cascade stopped ("complete" on success)
  std::vector<std::string> telemetry;
  std::optional<bool> fallback_found;  // result of the direct search, when it ran
};

/// A K_{pq} with exactly p vertices in each of the q classes, found by the
/// hypergraph DRC cascade and checked directly; the direct multipartite
/// search backs it up. alpha_bound sets the DRC multiplicity m = max(p, alpha_bound).
EmbedReport embed_clique_in_tuple(const Graph& g, const std::vector<VertexSet>& classes, int p, int alpha_bound,
                                  const EmbedOptions& options = {});

/// Direct search for p vertices per class forming a clique; nullopt when none
/// exists, or when the node budget runs out (then *exhausted is set).
std::optional<VertexSet> find_partite_clique(const Graph& g, const std::vector<VertexSet>& classes, int p,
                                             std::int64_t node_budget, bool* exhausted = nullptr);

/// Clique of size p per class, verified directly.
bool verify_partite_clique(const Graph& g, const std::vector<VertexSet>& classes, int p, const VertexSet& s);

}  // namespace cfl
