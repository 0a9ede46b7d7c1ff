#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfl/graph.hpp"

namespace cfl {

inline constexpr std::int64_t kDefaultNodeBudget = 20'000'000;

/// Vertex-disjoint copies of K_r.
struct CliqueTiling {
  int r = 0;
  std::vector<VertexSet> members;  // sorted lexicographically
  VertexSet covered;

  CliqueTiling() = default;
  CliqueTiling(int universe, int r) : r(r), covered(universe) {}

  void add(const VertexSet& clique);
  int size() const { return static_cast<int>(members.size()); }
};

/// Independent re-check: members pairwise disjoint, each an r-clique of G,
/// covered equals their union. Fills `why` on failure.
bool verify_tiling(const Graph& g, const CliqueTiling& t, std::string* why = nullptr);

/// verify_tiling plus "covers exactly `target`".
bool verify_factor(const Graph& g, const CliqueTiling& t, const VertexSet& target, std::string* why = nullptr);

struct TilingResult {
  CliqueTiling best;
  bool optimal = false;
  int deficiency = 0;  // |within| - |covered|
  std::int64_t nodes_explored = 0;
};

/// Maximum K_r-tiling of G[within] (all of G by default). On budget
/// exhaustion returns the best tiling known with optimal = false.
TilingResult max_tiling(const Graph& g, int r, std::int64_t node_budget = kDefaultNodeBudget);
TilingResult max_tiling(const Graph& g, int r, const VertexSet& within,
                        std::int64_t node_budget = kDefaultNodeBudget);

enum class FactorStatus { kFound, kAbsent, kIndeterminate };
const char* to_string(FactorStatus s);

struct FactorResult {
  FactorStatus status = FactorStatus::kIndeterminate;
  std::optional<CliqueTiling> factor;
  std::string reason;  // "divisibility", "exhausted", "node budget"
  std::int64_t nodes_explored = 0;

  bool found() const { return status == FactorStatus::kFound; }
};

/// K_r-factor of G[within]. Vertex ids in the result are those of G.
FactorResult has_factor(const Graph& g, int r, std::int64_t node_budget = kDefaultNodeBudget);
FactorResult has_factor(const Graph& g, int r, const VertexSet& within,
                        std::int64_t node_budget = kDefaultNodeBudget);

/// Random vertex order; each still-free vertex takes the lexicographically
/// first r-clique through it among free vertices.
CliqueTiling greedy_tiling(const Graph& g, int r, std::uint64_t seed);

}  // namespace cfl
