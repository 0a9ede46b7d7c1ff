#pragma once

#include <cstdint>
#include <span>

#include "cfl/graph.hpp"

namespace cfl {

/// Parts occupy consecutive index ranges in the given order.
Graph complete_multipartite(std::span<const int> part_sizes);

/// G(n, p): pairs (u, v), u < v, visited in lexicographic order; each is
/// kept iff Rng(seed).uniform01() < p. See random.hpp for the generator.
Graph random_gnp(int n, double p, std::uint64_t seed);

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph petersen_graph();
/// Kneser graph K(n, k): k-subsets of [n] in colex order of their bitmasks,
/// adjacent iff disjoint.
Graph kneser_graph(int n, int k);

/// Adds edges until the minimum degree reaches `target`: repeatedly joins the
/// lowest-degree vertex to its lowest-degree non-neighbour (ties to the
/// smaller id). The rule ignores `target`, so larger targets extend the edge
/// sequence of smaller ones. Throws std::invalid_argument if target >= n.
Graph raise_min_degree(const Graph& g, int target);

}  // namespace cfl
