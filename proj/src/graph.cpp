#include "cfl/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cfl {

VertexSet::VertexSet(int universe, std::initializer_list<Vertex> members) : VertexSet(universe) {
  for (Vertex v : members) {
    if (v < 0 || v >= universe) throw std::out_of_range("vertex " + std::to_string(v) + " outside universe");
    insert(v);
  }
}

VertexSet::VertexSet(int universe, std::span<const Vertex> members) : VertexSet(universe) {
  for (Vertex v : members) {
    if (v < 0 || v >= universe) throw std::out_of_range("vertex " + std::to_string(v) + " outside universe");
    insert(v);
  }
}

VertexSet VertexSet::full(int universe) { return range(universe, 0, universe); }

VertexSet VertexSet::range(int universe, Vertex lo, Vertex hi) {
  VertexSet s(universe);
  for (Vertex v = lo; v < hi; ++v) s.insert(v);
  return s;
}

int VertexSet::count() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool VertexSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool VertexSet::intersects(const VertexSet& other) const {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

int VertexSet::intersection_count(const VertexSet& other) const {
  check_same_universe(other);
  int c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & other.words_[i]);
  return c;
}

Vertex VertexSet::first() const { return next(-1); }

Vertex VertexSet::next(Vertex v) const {
  Vertex start = v + 1;
  if (start >= universe_) return -1;
  std::size_t w = static_cast<std::size_t>(start) >> 6;
  std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (start & 63));
  while (true) {
    if (bits != 0) return static_cast<Vertex>(w * 64 + std::countr_zero(bits));
    if (++w >= words_.size()) return -1;
    bits = words_[w];
  }
}

std::vector<Vertex> VertexSet::to_vector() const {
  std::vector<Vertex> out;
  out.reserve(count());
  for_each([&](Vertex v) { out.push_back(v); });
  return out;
}

VertexSet& VertexSet::operator&=(const VertexSet& o) {
  check_same_universe(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

VertexSet& VertexSet::operator|=(const VertexSet& o) {
  check_same_universe(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& o) {
  check_same_universe(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  return *this;
}

bool lex_less(const VertexSet& a, const VertexSet& b) {
  Vertex x = a.first();
  Vertex y = b.first();
  while (x != -1 && y != -1) {
    if (x != y) return x < y;
    x = a.next(x);
    y = b.next(y);
  }
  return x == -1 && y != -1;
}

void VertexSet::check_same_universe(const VertexSet& o) const {
  if (o.universe_ != universe_) throw std::invalid_argument("vertex sets over different universes");
}

GraphBuilder::GraphBuilder(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  adj_.assign(n, VertexSet(n));
}

bool GraphBuilder::add_edge(Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("edge end outside 0..n-1");
  if (u == v) throw std::invalid_argument("loop at vertex " + std::to_string(u));
  if (adj_[u].contains(v)) return false;
  adj_[u].insert(v);
  adj_[v].insert(u);
  return true;
}

bool GraphBuilder::remove_edge(Vertex u, Vertex v) {
  if (!adj_[u].contains(v)) return false;
  adj_[u].erase(v);
  adj_[v].erase(u);
  return true;
}

void GraphBuilder::add_graph(const Graph& g, Vertex offset) {
  for (const Edge& e : g.edges()) add_edge(e.u + offset, e.v + offset);
}

void GraphBuilder::add_clique(const VertexSet& s) {
  auto vs = s.to_vector();
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) add_edge(vs[i], vs[j]);
}

void GraphBuilder::add_join(const VertexSet& a, const VertexSet& b) {
  a.for_each([&](Vertex u) { b.for_each([&](Vertex v) { add_edge(u, v); }); });
}

Graph GraphBuilder::build() && {
  Graph g;
  g.adj_ = std::move(adj_);
  std::int64_t twice = 0;
  for (const auto& row : g.adj_) twice += row.count();
  g.edge_count_ = twice / 2;
  adj_.clear();
  n_ = 0;
  return g;
}

Graph::Graph(int n) : adj_(n, VertexSet(n)) {}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  GraphBuilder b(n);
  for (const Edge& e : edges) {
    if (!b.add_edge(e.u, e.v)) {
      throw std::invalid_argument("repeated edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
  }
  return std::move(b).build();
}

int Graph::min_degree() const {
  if (adj_.empty()) return 0;
  int d = order();
  for (Vertex v = 0; v < order(); ++v) d = std::min(d, degree(v));
  return d;
}

int Graph::max_degree() const {
  int d = 0;
  for (Vertex v = 0; v < order(); ++v) d = std::max(d, degree(v));
  return d;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (Vertex u = 0; u < order(); ++u) {
    for (Vertex v = adj_[u].next(u); v != -1; v = adj_[u].next(v)) out.push_back({u, v});
  }
  return out;
}

std::int64_t Graph::edges_between(const VertexSet& a, const VertexSet& b) const {
  std::int64_t e = 0;
  a.for_each([&](Vertex u) { e += adj_[u].intersection_count(b); });
  return e;
}

Graph Graph::induced(const VertexSet& s) const {
  auto members = s.to_vector();
  std::vector<int> index(order(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = static_cast<int>(i);
  GraphBuilder b(static_cast<int>(members.size()));
  for (std::size_t i = 0; i < members.size(); ++i) {
    const VertexSet& row = adj_[members[i]];
    for (Vertex w = row.next(members[i]); w != -1; w = row.next(w)) {
      if (index[w] >= 0) b.add_edge(static_cast<int>(i), index[w]);
    }
  }
  return std::move(b).build();
}

Graph Graph::complement() const {
  GraphBuilder b(order());
  for (Vertex u = 0; u < order(); ++u)
    for (Vertex v = u + 1; v < order(); ++v)
      if (!adjacent(u, v)) b.add_edge(u, v);
  return std::move(b).build();
}

}  // namespace cfl
