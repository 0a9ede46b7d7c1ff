#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfl/graph.hpp"
#include "cfl/rational.hpp"

namespace cfl {

/// X_1 (a clique of round(eta*n) vertices) completely joined to X_2, which
/// induces `inner`. `inner` must be K_{ell+1}-free.
struct LowerBoundSpec {
  int n = 0;
  int r = 0;
  int ell = 0;
  Rational eta;
  Graph inner;
};

struct LowerBoundGraph {
  Graph graph;
  VertexSet x1;  // vertices 0..|X_1|-1
  VertexSet x2;
  /// r/(r-ell) * ((r-ell)/r - eta), the asymptotic deficiency constant.
  Rational mu;
};

/// Throws std::invalid_argument if the spec is inconsistent or inner contains K_{ell+1}.
LowerBoundGraph build_lower_bound_graph(const LowerBoundSpec& spec);

/// Vertex v = 0 whose neighbourhood induces `inner` (K_{r-1}-free), plus a
/// clique of n - |N(v)| - 1 vertices complete to N(v) and not adjacent to v.
struct CoverThresholdSpec {
  int n = 0;
  int r = 0;
  int ell = 0;
  Rational x;
  Graph inner;
};

struct CoverThresholdGraph {
  Graph graph;
  Vertex v = 0;
  VertexSet neighborhood;  // 1..|N(v)|
  VertexSet clique;
  int min_degree = 0;
};

/// Throws std::invalid_argument on bad sizes or if inner contains K_{r-1};
/// std::logic_error if an r-clique through v survives (cannot happen).
CoverThresholdGraph build_cover_threshold_graph(const CoverThresholdSpec& spec);

struct SampleAttempt {
  std::uint64_t seed = 0;
  std::int64_t edges = 0;
  std::string outcome;  // "ok", "contains K_{l+1}", "alpha_l too large", "alpha budget"
  int alpha = -1;       // -1 when not computed
};

struct SparseSample {
  std::optional<Graph> graph;
  double p = 0;
  int alpha_bound = 0;  // ceil(n^{1-gamma})
  std::vector<SampleAttempt> log;
};

/// Samples G(n, n^{-(2-gamma)/(ell+1)}) until a K_{ell+1}-free sample with
/// α_ℓ <= ceil(n^{1-gamma}) turns up. Attempt i uses derive_seed(seed, i).
/// Running out of tries is reported through an empty `graph`.
SparseSample sample_sparse_klfree(int n, int ell, double gamma, std::uint64_t seed, int max_tries,
                                  std::int64_t alpha_node_budget = 2'000'000);

/// Named small graphs: c5, petersen, kneser73, kneser:N:K, cycle:N, path:N,
/// complete:N, empty:N. Throws std::invalid_argument for unknown names.
Graph builtin_graph(std::string_view name);

}  // namespace cfl
