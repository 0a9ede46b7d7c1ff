#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace cfl {

using Vertex = int;

/// Subset of {0..universe-1} stored as dense 64-bit words.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
  VertexSet(int universe, std::initializer_list<Vertex> members);
  VertexSet(int universe, std::span<const Vertex> members);

  static VertexSet full(int universe);
  /// The range [lo, hi).
  static VertexSet range(int universe, Vertex lo, Vertex hi);

  int universe() const { return universe_; }
  bool contains(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
  void insert(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  int count() const;
  bool empty() const;
  bool intersects(const VertexSet& other) const;
  bool is_subset_of(const VertexSet& other) const;
  int intersection_count(const VertexSet& other) const;

  /// Smallest member, or -1.
  Vertex first() const;
  /// Smallest member greater than v, or -1.
  Vertex next(Vertex v) const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(static_cast<Vertex>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<Vertex> to_vector() const;
  std::span<const std::uint64_t> words() const { return words_; }

  VertexSet& operator&=(const VertexSet& o);
  VertexSet& operator|=(const VertexSet& o);
  VertexSet& operator-=(const VertexSet& o);
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  void check_same_universe(const VertexSet& o) const;

  int universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Lexicographic on the sorted member lists.
bool lex_less(const VertexSet& a, const VertexSet& b);

struct Edge {
  Vertex u;
  Vertex v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Graph;

/// Mutable accumulator; Graph itself is immutable once built.
class GraphBuilder {
 public:
  explicit GraphBuilder(int n);

  int order() const { return n_; }
  /// Returns false if the edge was already present. Throws on loops / range.
  bool add_edge(Vertex u, Vertex v);
  bool remove_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const { return adj_[u].contains(v); }
  /// Adds every edge of `g` with vertices shifted by `offset`.
  void add_graph(const Graph& g, Vertex offset);
  /// Makes `s` a clique.
  void add_clique(const VertexSet& s);
  /// Joins every vertex of `a` to every vertex of `b` (a, b disjoint).
  void add_join(const VertexSet& a, const VertexSet& b);

  Graph build() &&;

 private:
  int n_;
  std::vector<VertexSet> adj_;
};

/// Immutable simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  /// Edgeless graph on n vertices.
  explicit Graph(int n);
  /// Throws std::invalid_argument on loops, out-of-range ends or repeated edges.
  static Graph from_edges(int n, std::span<const Edge> edges);

  int order() const { return static_cast<int>(adj_.size()); }
  std::int64_t edge_count() const { return edge_count_; }
  bool adjacent(Vertex u, Vertex v) const { return adj_[u].contains(v); }
  const VertexSet& neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return adj_[v].count(); }
  int min_degree() const;
  int max_degree() const;
  /// Degree of v into `within` (d_X(v)).
  int degree_into(Vertex v, const VertexSet& within) const { return adj_[v].intersection_count(within); }

  /// Edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;
  /// Number of edges with one end in a and the other in b (a, b disjoint).
  std::int64_t edges_between(const VertexSet& a, const VertexSet& b) const;

  /// Materialized G[S]; vertex i of the result is the i-th smallest member of S.
  Graph induced(const VertexSet& s) const;
  Graph complement() const;

  VertexSet all() const { return VertexSet::full(order()); }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend class GraphBuilder;
  std::vector<VertexSet> adj_;
  std::int64_t edge_count_ = 0;
};

}  // namespace cfl
