#include "cfl/cliques.hpp"

#include <stdexcept>

namespace cfl {
namespace {

struct Walker {
  const Graph& g;
  int k;
  const std::function<bool(const VertexSet&)>& visit;
  VertexSet current;
  int size = 0;

  // Returns false to abort.
  bool extend(VertexSet candidates) {
    if (size == k) return visit(current);
    for (Vertex v = candidates.first(); v != -1; v = candidates.next(v)) {
      candidates.erase(v);
      VertexSet next = candidates & g.neighbors(v);
      if (size + 1 + next.count() < k) continue;
      current.insert(v);
      ++size;
      bool go_on = extend(std::move(next));
      --size;
      current.erase(v);
      if (!go_on) return false;
    }
    return true;
  }
};

}  // namespace

bool for_each_clique(const Graph& g, int k, const VertexSet& within,
                     const std::function<bool(const VertexSet&)>& visit) {
  if (k < 1) throw std::invalid_argument("clique order must be >= 1");
  Walker w{g, k, visit, VertexSet(g.order())};
  return w.extend(within);
}

CliqueList enumerate_cliques(const Graph& g, int k, const VertexSet& within, std::size_t cap) {
  CliqueList out;
  for_each_clique(g, k, within, [&](const VertexSet& c) {
    if (cap != 0 && out.cliques.size() == cap) {
      out.truncated = true;
      return false;
    }
    out.cliques.push_back(c);
    return true;
  });
  return out;
}

CliqueList enumerate_cliques(const Graph& g, int k, std::size_t cap) {
  return enumerate_cliques(g, k, g.all(), cap);
}

VertexSet common_neighborhood(const Graph& g, const VertexSet& s) {
  if (s.empty()) throw std::invalid_argument("common_neighborhood of an empty set");
  VertexSet out = g.all();
  s.for_each([&](Vertex v) { out &= g.neighbors(v); });
  return out - s;
}

bool is_clique(const Graph& g, const VertexSet& s) {
  bool ok = true;
  s.for_each([&](Vertex v) {
    if (ok && !(s - VertexSet(g.order(), {v})).is_subset_of(g.neighbors(v))) ok = false;
  });
  return ok;
}

std::optional<VertexSet> find_clique(const Graph& g, const VertexSet& within, int k) {
  if (k <= 0) return VertexSet(g.order());
  std::optional<VertexSet> found;
  for_each_clique(g, k, within, [&](const VertexSet& c) {
    found = c;
    return false;
  });
  return found;
}

bool contains_clique(const Graph& g, int k) { return k <= 0 || find_clique(g, g.all(), k).has_value(); }

}  // namespace cfl
