#pragma once

#include <cstdint>
#include <optional>

#include "cfl/graph.hpp"
#include "cfl/tiling.hpp"

namespace cfl {

/// Result of an ℓ-independence computation: `witness` induces no K_ℓ.
struct AlphaResult {
  int value = 0;
  VertexSet witness;
  bool exact = false;
  std::int64_t nodes_explored = 0;
};

struct AlphaOptions {
  std::int64_t node_budget = kDefaultNodeBudget;
  /// Stop as soon as a K_ℓ-free set larger than this is known (exact = false).
  std::optional<int> stop_above;
  std::uint64_t seed = 0;  // greedy warm start
};

/// α_ℓ(G): the largest vertex subset spanning no K_ℓ. Branch and bound on a
/// max-degree candidate, bounded by a greedy clique partition (each clique
/// contributes at most ℓ-1 vertices).
AlphaResult alpha_ell_exact(const Graph& g, int ell, const AlphaOptions& options = {});

/// Maximal K_ℓ-free set built along a seeded random vertex order.
AlphaResult alpha_ell_greedy(const Graph& g, int ell, std::uint64_t seed);

/// true if α_ℓ(G) <= bound, false if not, nullopt if the budget ran out first.
std::optional<bool> alpha_ell_at_most(const Graph& g, int ell, int bound,
                                      std::int64_t node_budget = kDefaultNodeBudget);

/// Whether `s` spans no K_ℓ.
bool is_kl_free(const Graph& g, const VertexSet& s, int ell);

/// An r-clique through v avoiding `forbidden`, if one exists.
std::optional<VertexSet> has_clique_cover(const Graph& g, Vertex v, int r, const VertexSet& forbidden);

/// The finite tiling threshold: the largest min degree of an n-vertex graph
/// with α_ℓ <= alpha_bound and no K_r-factor.
struct RttResult {
  int n = 0;
  int r = 0;
  int ell = 0;
  int alpha_bound = 0;
  bool feasible = false;  // some graph satisfies the constraints
  int value = -1;         // max min degree; -1 when infeasible
  Graph witness_graph;
  bool exhaustive = false;
  bool degenerate = false;  // r does not divide n, every graph lacks a factor
  std::int64_t graphs_examined = 0;
};

struct RttOptions {
  std::uint64_t seed = 0;
  int local_search_iterations = 2000;  // used when n > kRttExhaustiveMaxN
  std::int64_t node_budget = kDefaultNodeBudget;
};

inline constexpr int kRttExhaustiveMaxN = 7;

RttResult rtt_oracle(int n, int r, int ell, int alpha_bound, const RttOptions& options = {});

}  // namespace cfl
