#include "cfl/generators.hpp"

#include <bit>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfl/random.hpp"

namespace cfl {

Graph complete_multipartite(std::span<const int> part_sizes) {
  if (part_sizes.empty()) throw std::invalid_argument("complete_multipartite: empty part list");
  int n = 0;
  for (int s : part_sizes) {
    if (s <= 0) throw std::invalid_argument("complete_multipartite: part sizes must be positive");
    n += s;
  }
  std::vector<int> part_of(n);
  int at = 0;
  for (std::size_t p = 0; p < part_sizes.size(); ++p)
    for (int i = 0; i < part_sizes[p]; ++i) part_of[at++] = static_cast<int>(p);

  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (part_of[u] != part_of[v]) b.add_edge(u, v);
  return std::move(b).build();
}

Graph random_gnp(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("random_gnp: p must lie in [0, 1]");
  if (n < 0) throw std::invalid_argument("random_gnp: negative n");
  Rng rng(seed);
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.uniform01() < p) b.add_edge(u, v);
  return std::move(b).build();
}

Graph complete_graph(int n) {
  GraphBuilder b(n);
  b.add_clique(VertexSet::full(n));
  return std::move(b).build();
}

Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle_graph needs n >= 3");
  GraphBuilder b(n);
  for (Vertex v = 0; v < n; ++v) b.add_edge(v, (v + 1) % n);
  return std::move(b).build();
}

Graph path_graph(int n) {
  GraphBuilder b(n);
  for (Vertex v = 0; v + 1 < n; ++v) b.add_edge(v, v + 1);
  return std::move(b).build();
}

Graph petersen_graph() {
  // outer 5-cycle 0..4, spokes i -- i+5, inner pentagram 5..9
  GraphBuilder b(10);
  for (int i = 0; i < 5; ++i) {
    b.add_edge(i, (i + 1) % 5);
    b.add_edge(i, i + 5);
    b.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return std::move(b).build();
}

Graph kneser_graph(int n, int k) {
  if (n < 1 || n > 30 || k < 1 || k > n) throw std::invalid_argument("kneser_graph: need 1 <= k <= n <= 30");
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask)
    if (std::popcount(mask) == k) subsets.push_back(mask);
  GraphBuilder b(static_cast<int>(subsets.size()));
  for (std::size_t i = 0; i < subsets.size(); ++i)
    for (std::size_t j = i + 1; j < subsets.size(); ++j)
      if ((subsets[i] & subsets[j]) == 0) b.add_edge(static_cast<int>(i), static_cast<int>(j));
  return std::move(b).build();
}

Graph raise_min_degree(const Graph& g, int target) {
  const int n = g.order();
  if (target <= 0) return g;
  if (target >= n) throw std::invalid_argument("raise_min_degree: target must be below n");
  GraphBuilder b(n);
  std::vector<int> deg(n);
  for (const Edge& e : g.edges()) b.add_edge(e.u, e.v);
  for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
  for (;;) {
    Vertex u = 0;
    for (Vertex v = 1; v < n; ++v)
      if (deg[v] < deg[u]) u = v;
    if (deg[u] >= target) break;
    Vertex best = -1;
    for (Vertex v = 0; v < n; ++v)
      if (v != u && !b.has_edge(u, v) && (best < 0 || deg[v] < deg[best])) best = v;
    b.add_edge(u, best);
    ++deg[u];
    ++deg[best];
  }
  return std::move(b).build();
}

}  // namespace cfl
