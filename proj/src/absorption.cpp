#include "cfl/absorption.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "cfl/cliques.hpp"
#include "cfl/random.hpp"

namespace cfl {

namespace {

VertexSet with(VertexSet s, Vertex v) {
  s.insert(v);
  return s;
}

// Visits the k-subsets of `pool` in lexicographic order until f returns false.
bool for_each_subset(const std::vector<Vertex>& pool, int k, int universe,
                     const std::function<bool(const VertexSet&)>& f) {
  if (k > static_cast<int>(pool.size())) return true;
  if (k == 0) return f(VertexSet(universe));
  std::vector<std::size_t> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[i] = static_cast<std::size_t>(i);
  while (true) {
    VertexSet s(universe);
    for (std::size_t i : idx) s.insert(pool[i]);
    if (!f(s)) return false;
    int j = k - 1;
    while (j >= 0 && idx[j] == pool.size() - static_cast<std::size_t>(k - j)) --j;
    if (j < 0) return true;
    ++idx[j];
    for (int l = j + 1; l < k; ++l) idx[l] = idx[l - 1] + 1;
  }
}

}  // namespace

Certified<AbsorberCertificate> certify_absorber(const Graph& g, const VertexSet& s, const VertexSet& a, int r, int t,
                                                std::int64_t node_budget) {
  Certified<AbsorberCertificate> out;
  if (s.count() != r || a.count() > r * t) {
    out.reason = "size";
    return out;
  }
  if (s.intersects(a)) {
    out.reason = "overlap";
    return out;
  }
  if (a.count() % r != 0) {
    out.reason = "divisibility";
    return out;
  }
  FactorResult fa = has_factor(g, r, a, node_budget);
  if (!fa.found()) {
    out.reason = fa.status == FactorStatus::kIndeterminate ? "node budget" : "no factor of A";
    return out;
  }
  FactorResult fas = has_factor(g, r, a | s, node_budget);
  if (!fas.found()) {
    out.reason = fas.status == FactorStatus::kIndeterminate ? "node budget" : "no factor of A+S";
    return out;
  }
  out.certificate = AbsorberCertificate{s, a, t, *fa.factor, *fas.factor};
  out.reason = "ok";
  return out;
}

Certified<ReachableCertificate> certify_reachable(const Graph& g, Vertex u, Vertex v, const VertexSet& s, int r,
                                                  std::int64_t node_budget) {
  Certified<ReachableCertificate> out;
  if (u == v) {
    out.reason = "same vertex";
    return out;
  }
  if (s.contains(u) || s.contains(v)) {
    out.reason = "overlap";
    return out;
  }
  if ((s.count() + 1) % r != 0) {
    out.reason = "divisibility";
    return out;
  }
  FactorResult fu = has_factor(g, r, with(s, u), node_budget);
  if (!fu.found()) {
    out.reason = fu.status == FactorStatus::kIndeterminate ? "node budget" : "no factor with u";
    return out;
  }
  FactorResult fv = has_factor(g, r, with(s, v), node_budget);
  if (!fv.found()) {
    out.reason = fv.status == FactorStatus::kIndeterminate ? "node budget" : "no factor with v";
    return out;
  }
  out.certificate = ReachableCertificate{u, v, s, *fu.factor, *fv.factor};
  out.reason = "ok";
  return out;
}

bool verify_absorber(const Graph& g, const AbsorberCertificate& c, int r) {
  return c.s.count() == r && !c.s.intersects(c.a) && c.a.count() <= r * c.t && c.factor_of_a.r == r &&
         c.factor_of_a_union_s.r == r && verify_factor(g, c.factor_of_a, c.a) &&
         verify_factor(g, c.factor_of_a_union_s, c.a | c.s);
}

bool verify_reachable(const Graph& g, const ReachableCertificate& c, int r) {
  return c.u != c.v && !c.s.contains(c.u) && !c.s.contains(c.v) && c.factor_u.r == r && c.factor_v.r == r &&
         verify_factor(g, c.factor_u, with(c.s, c.u)) && verify_factor(g, c.factor_v, with(c.s, c.v));
}

ReachableSearch find_disjoint_reachable_sets(const Graph& g, Vertex u, Vertex v, int r, int t, int limit,
                                             std::optional<VertexSet> within, std::int64_t candidate_budget) {
  if (r < 2 || t < 1) throw std::invalid_argument("find_disjoint_reachable_sets needs r >= 2, t >= 1");
  ReachableSearch out;
  if (u == v) return out;
  VertexSet pool = within ? *within : g.all();
  pool.erase(u);
  pool.erase(v);
  VertexSet used(g.order());
  auto full = [&] { return limit > 0 && static_cast<int>(out.sets.size()) >= limit; };

  auto consider = [&](const VertexSet& s) {
    if (++out.candidates_examined > candidate_budget) {
      out.candidates_exhausted = false;
      return false;
    }
    if (s.intersects(used)) return true;
    auto cert = certify_reachable(g, u, v, s, r);
    if (cert) {
      used |= s;
      out.sets.push_back(std::move(*cert.certificate));
    }
    return !full();
  };

  for (int j = 1; j <= t && !full() && out.candidates_exhausted; ++j) {
    const int size = j * r - 1;
    if (j == 1) {
      // {u} ∪ S and {v} ∪ S are cliques: S is an (r-1)-clique in N(u) ∩ N(v)
      VertexSet cand = pool & g.neighbors(u) & g.neighbors(v);
      for_each_clique(g, size, cand, consider);
    } else {
      for_each_subset(pool.to_vector(), size, g.order(), [&](const VertexSet& s) { return consider(s); });
    }
  }
  return out;
}

AbsorbingVerdict certify_xi_absorbing(const Graph& g, const VertexSet& a, int r, const Rational& xi,
                                      RegularityMode mode, const SamplingOptions& sampling) {
  if (r < 1) throw std::invalid_argument("certify_xi_absorbing needs r >= 1");
  if (xi < Rational(0)) throw std::invalid_argument("xi must be nonnegative");
  const int n = g.order();
  AbsorbingVerdict out;
  out.mode = mode;
  out.max_leftover = static_cast<int>((xi * Rational(n)).floor());
  const std::vector<Vertex> outside = (g.all() - a).to_vector();
  const int top = std::min<int>(out.max_leftover, static_cast<int>(outside.size()));
  std::vector<int> sizes;
  for (int k = 0; k <= top; ++k)
    if ((a.count() + k) % r == 0) sizes.push_back(k);

  auto check = [&](const VertexSet& rset) {
    ++out.sets_checked;
    FactorResult f = has_factor(g, r, a | rset);
    if (f.status == FactorStatus::kIndeterminate) out.budget_hit = true;
    if (f.status == FactorStatus::kAbsent) {
      out.absorbing = false;
      out.witness = rset;
      return false;
    }
    return true;
  };

  if (mode == RegularityMode::kExhaustive) {
    if (n > kAbsorbingExhaustiveMaxN || out.max_leftover > kAbsorbingExhaustiveMaxLeftover)
      throw std::invalid_argument("exhaustive absorbing check needs n <= 16 and xi n <= 4");
    for (int k : sizes)
      if (!for_each_subset(outside, k, n, check)) break;
    return out;
  }

  if (sizes.empty()) return out;
  Rng rng(sampling.seed);
  for (std::int64_t i = 0; i < sampling.samples; ++i) {
    int k = sizes[rng.below(sizes.size())];
    auto pick = rng.sample_without_replacement(outside, static_cast<std::size_t>(k));
    if (!check(VertexSet(n, std::span<const Vertex>(pick)))) break;
  }
  return out;
}

ClosednessReport closedness_report(const Graph& g, const VertexSet& u, int r, int t, std::int64_t pair_budget,
                                   bool inner, std::uint64_t seed, int limit) {
  ClosednessReport out;
  out.inner = inner;
  std::vector<Vertex> us = u.to_vector();
  std::vector<std::pair<Vertex, Vertex>> pairs;
  const auto total = static_cast<std::int64_t>(us.size()) * static_cast<std::int64_t>(us.size() - (us.empty() ? 0 : 1)) / 2;
  if (total <= pair_budget) {
    for (std::size_t i = 0; i < us.size(); ++i)
      for (std::size_t j = i + 1; j < us.size(); ++j) pairs.emplace_back(us[i], us[j]);
  } else {
    out.all_pairs = false;
    Rng rng(seed);
    for (std::int64_t k = 0; k < pair_budget; ++k) {
      auto a = rng.below(us.size());
      auto b = rng.below(us.size() - 1);
      if (b >= a) ++b;
      pairs.emplace_back(std::min(us[a], us[b]), std::max(us[a], us[b]));
    }
  }
  std::vector<int> counts;
  for (auto [a, b] : pairs) {
    auto found = find_disjoint_reachable_sets(g, a, b, r, t, limit, inner ? std::optional<VertexSet>(u) : std::nullopt);
    counts.push_back(static_cast<int>(found.sets.size()));
  }
  out.pairs_examined = static_cast<std::int64_t>(pairs.size());
  if (counts.empty()) {
    out.implied_beta = Rational(0);
    return out;
  }
  out.min_count = *std::min_element(counts.begin(), counts.end());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (counts[i] == out.min_count && out.weakest_pairs.size() < 16) out.weakest_pairs.push_back(pairs[i]);
  std::vector<int> sorted = counts;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  out.median_count = sorted.size() % 2 == 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
  out.implied_beta = Rational(out.min_count, static_cast<std::int64_t>(us.size()));
  return out;
}

ReachableGadget build_reachable_gadget(int r) {
  if (r < 2) throw std::invalid_argument("build_reachable_gadget needs r >= 2");
  const int n = 4 * r + 1;
  ReachableGadget gd;
  gd.u = 0;
  gd.v = 1;
  Vertex next = 2;
  auto take = [&](int k) {
    VertexSet s = VertexSet::range(n, next, next + k);
    next += k;
    return s;
  };
  gd.s_clique = take(r + 1);
  gd.w = gd.s_clique.first();
  gd.u_i = gd.s_clique.next(gd.w);
  gd.t_clique = take(r) | VertexSet(n, {gd.w});
  gd.v_i = gd.t_clique.next(gd.w);
  gd.c = take(r - 1);
  gd.d = take(r - 1);
  gd.e = gd.s_clique | gd.t_clique | gd.c | gd.d;

  GraphBuilder b(n);
  b.add_clique(gd.s_clique);
  b.add_clique(gd.t_clique);
  b.add_clique(gd.c);
  b.add_clique(gd.d);
  b.add_join(gd.c, VertexSet(n, {gd.u, gd.u_i}));
  b.add_join(gd.d, VertexSet(n, {gd.v, gd.v_i}));
  gd.graph = std::move(b).build();

  VertexSet w{n, {gd.w}};
  gd.u_cliques = {with(gd.c, gd.u), gd.s_clique - w, gd.t_clique - VertexSet(n, {gd.v_i}), with(gd.d, gd.v_i)};
  gd.v_cliques = {with(gd.d, gd.v), gd.t_clique - w, gd.s_clique - VertexSet(n, {gd.u_i}), with(gd.c, gd.u_i)};
  return gd;
}

}  // namespace cfl
