#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "cfl/graph.hpp"

namespace cfl {

struct CliqueList {
  std::vector<VertexSet> cliques;  // lexicographic order of sorted vertex tuples
  bool truncated = false;          // cap reached before the search finished
};

/// All k-cliques of G (inside `within` when given). cap == 0 means unlimited;
/// a capped run returns the lexicographically first `cap` cliques.
CliqueList enumerate_cliques(const Graph& g, int k, std::size_t cap = 0);
CliqueList enumerate_cliques(const Graph& g, int k, const VertexSet& within, std::size_t cap = 0);

/// Visits k-cliques inside `within` in lexicographic order until `visit`
/// returns false. Returns false iff stopped early.
bool for_each_clique(const Graph& g, int k, const VertexSet& within,
                     const std::function<bool(const VertexSet&)>& visit);

/// Vertices adjacent to every member of s (never members of s). Throws on empty s.
VertexSet common_neighborhood(const Graph& g, const VertexSet& s);

bool is_clique(const Graph& g, const VertexSet& s);

/// Lexicographically first k-clique inside `within`, if any.
std::optional<VertexSet> find_clique(const Graph& g, const VertexSet& within, int k);

/// Whether G contains K_k (k <= 0 is trivially true).
bool contains_clique(const Graph& g, int k);

}  // namespace cfl
