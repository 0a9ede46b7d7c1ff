#include "cfl/invariants.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cfl/cliques.hpp"
#include "cfl/random.hpp"

namespace cfl {
namespace {

struct BudgetExceeded {};
struct TargetExceeded {};

class AlphaSearch {
 public:
  AlphaSearch(const Graph& g, int ell, const AlphaOptions& opts) : g_(g), ell_(ell), opts_(opts), chosen_(g.order()) {}

  void seed_incumbent(const AlphaResult& r) {
    best_ = r.value;
    best_set_ = r.witness;
    check_target();
  }

  void run() { search(0, g_.all()); }

  int best() const { return best_; }
  const VertexSet& best_set() const { return best_set_; }
  std::int64_t nodes() const { return nodes_; }

 private:
  void check_target() const {
    if (opts_.stop_above && best_ > *opts_.stop_above) throw TargetExceeded{};
  }

  // Each clique of a greedy clique partition of `p` holds at most ℓ-1
  // vertices of any K_ℓ-free set.
  int cover_bound(VertexSet rem) const {
    int bound = 0;
    while (!rem.empty()) {
      Vertex u = rem.first();
      int size = 1;
      VertexSet clique(g_.order(), {u});
      VertexSet cand = rem & g_.neighbors(u);
      while (!cand.empty()) {
        Vertex w = cand.first();
        clique.insert(w);
        ++size;
        cand &= g_.neighbors(w);
      }
      bound += std::min(size, ell_ - 1);
      rem -= clique;
    }
    return bound;
  }

  void search(int size, VertexSet cand) {
    if (++nodes_ > opts_.node_budget) throw BudgetExceeded{};
    if (size > best_) {
      best_ = size;
      best_set_ = chosen_;
      check_target();
    }
    if (cand.empty()) return;
    if (size + cover_bound(cand) <= best_) return;

    Vertex v = -1;
    int best_deg = -1;
    cand.for_each([&](Vertex c) {
      int d = g_.neighbors(c).intersection_count(cand);
      if (d > best_deg) {
        best_deg = d;
        v = c;
      }
    });

    VertexSet without_v = cand;
    without_v.erase(v);

    // include v: drop candidates that would close a K_ℓ through v
    VertexSet next = without_v;
    if (ell_ == 2) {
      next -= g_.neighbors(v);
    } else {
      VertexSet s_in_nv = chosen_ & g_.neighbors(v);
      (without_v & g_.neighbors(v)).for_each([&](Vertex c) {
        if (find_clique(g_, s_in_nv & g_.neighbors(c), ell_ - 2)) next.erase(c);
      });
    }
    chosen_.insert(v);
    search(size + 1, std::move(next));
    chosen_.erase(v);

    search(size, std::move(without_v));
  }

  const Graph& g_;
  int ell_;
  const AlphaOptions& opts_;
  VertexSet chosen_;
  int best_ = -1;
  VertexSet best_set_;
  std::int64_t nodes_ = 0;
};

void check_ell(int ell) {
  if (ell < 2) throw std::invalid_argument("ℓ must be >= 2");
}

}  // namespace

bool is_kl_free(const Graph& g, const VertexSet& s, int ell) { return !find_clique(g, s, ell).has_value(); }

AlphaResult alpha_ell_greedy(const Graph& g, int ell, std::uint64_t seed) {
  check_ell(ell);
  std::vector<Vertex> order(g.order());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);
  AlphaResult res;
  res.witness = VertexSet(g.order());
  for (Vertex v : order) {
    if (!find_clique(g, res.witness & g.neighbors(v), ell - 1)) res.witness.insert(v);
  }
  res.value = res.witness.count();
  res.exact = false;
  return res;
}

AlphaResult alpha_ell_exact(const Graph& g, int ell, const AlphaOptions& options) {
  check_ell(ell);
  AlphaSearch search(g, ell, options);
  AlphaResult res;
  try {
    search.seed_incumbent(alpha_ell_greedy(g, ell, options.seed));
    search.run();
    res.exact = true;
  } catch (const BudgetExceeded&) {
    res.exact = false;
  } catch (const TargetExceeded&) {
    res.exact = false;
  }
  res.value = search.best();
  res.witness = search.best_set();
  res.nodes_explored = search.nodes();
  return res;
}

std::optional<bool> alpha_ell_at_most(const Graph& g, int ell, int bound, std::int64_t node_budget) {
  AlphaOptions opts;
  opts.node_budget = node_budget;
  opts.stop_above = bound;
  AlphaResult r = alpha_ell_exact(g, ell, opts);
  if (r.value > bound) return false;
  if (r.exact) return true;
  return std::nullopt;
}

std::optional<VertexSet> has_clique_cover(const Graph& g, Vertex v, int r, const VertexSet& forbidden) {
  if (forbidden.contains(v)) throw std::invalid_argument("has_clique_cover: v is forbidden");
  if (r < 1) throw std::invalid_argument("has_clique_cover: r must be >= 1");
  auto c = find_clique(g, g.neighbors(v) - forbidden, r - 1);
  if (!c) return std::nullopt;
  c->insert(v);
  return c;
}

namespace {

struct Candidate {
  bool ok;
  int delta;
};

Candidate evaluate(const Graph& g, int r, int ell, int alpha_bound, bool degenerate, std::int64_t budget) {
  auto alpha_ok = alpha_ell_at_most(g, ell, alpha_bound, budget);
  if (!alpha_ok.value_or(false)) return {false, 0};
  if (!degenerate && has_factor(g, r, budget).status != FactorStatus::kAbsent) return {false, 0};
  return {true, g.min_degree()};
}

RttResult rtt_exhaustive(RttResult res, const RttOptions& options) {
  const int n = res.n;
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.push_back({u, v});
  std::vector<std::uint32_t> incident(n, 0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    incident[pairs[i].u] |= 1U << i;
    incident[pairs[i].v] |= 1U << i;
  }
  const std::uint32_t total = pairs.empty() ? 1U : (1U << pairs.size());
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    ++res.graphs_examined;
    int delta = n == 0 ? 0 : n;
    for (int v = 0; v < n; ++v) delta = std::min(delta, std::popcount(mask & incident[v]));
    if (delta <= res.value) continue;  // cannot improve the incumbent

    GraphBuilder b(n);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1U) b.add_edge(pairs[i].u, pairs[i].v);
    Graph g = std::move(b).build();
    Candidate c = evaluate(g, res.r, res.ell, res.alpha_bound, res.degenerate, options.node_budget);
    if (c.ok) {
      res.value = c.delta;
      res.witness_graph = std::move(g);
      res.feasible = true;
    }
  }
  res.exhaustive = true;
  return res;
}

// Edge-flip hill climbing from a few seeded starts; a lower bound only.
RttResult rtt_local_search(RttResult res, const RttOptions& options) {
  const int n = res.n;
  Rng rng(options.seed);
  std::vector<Graph> starts;
  {
    // K_{n-1} plus an isolated vertex: no vertex-0 clique, α_ℓ = ℓ when n-1 >= ℓ-1
    GraphBuilder b(n);
    b.add_clique(VertexSet::range(n, 1, n));
    starts.push_back(std::move(b).build());
  }
  for (int i = 0; i < 3; ++i) {
    GraphBuilder b(n);
    double p = 0.5 + 0.15 * i;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (rng.bernoulli(p)) b.add_edge(u, v);
    starts.push_back(std::move(b).build());
  }

  for (const Graph& start : starts) {
    Candidate c = evaluate(start, res.r, res.ell, res.alpha_bound, res.degenerate, options.node_budget);
    ++res.graphs_examined;
    if (!c.ok) continue;
    Graph current = start;
    int current_delta = c.delta;
    if (current_delta > res.value) {
      res.value = current_delta;
      res.witness_graph = current;
      res.feasible = true;
    }
    for (int it = 0; it < options.local_search_iterations; ++it) {
      Vertex u = static_cast<Vertex>(rng.below(n));
      Vertex v = static_cast<Vertex>(rng.below(n - 1));
      if (v >= u) ++v;
      GraphBuilder b(n);
      for (const Edge& e : current.edges()) b.add_edge(e.u, e.v);
      if (!b.remove_edge(u, v)) b.add_edge(u, v);
      Graph next = std::move(b).build();
      if (next.min_degree() < current_delta) continue;
      ++res.graphs_examined;
      Candidate nc = evaluate(next, res.r, res.ell, res.alpha_bound, res.degenerate, options.node_budget);
      if (!nc.ok) continue;
      current = std::move(next);
      current_delta = nc.delta;
      if (current_delta > res.value) {
        res.value = current_delta;
        res.witness_graph = current;
        res.feasible = true;
      }
    }
  }
  res.exhaustive = false;
  return res;
}

}  // namespace

RttResult rtt_oracle(int n, int r, int ell, int alpha_bound, const RttOptions& options) {
  check_ell(ell);
  if (n < 1 || r < 1) throw std::invalid_argument("rtt_oracle: n and r must be positive");
  RttResult res;
  res.n = n;
  res.r = r;
  res.ell = ell;
  res.alpha_bound = alpha_bound;
  res.degenerate = n % r != 0;
  if (n <= kRttExhaustiveMaxN) return rtt_exhaustive(std::move(res), options);
  return rtt_local_search(std::move(res), options);
}

}  // namespace cfl
