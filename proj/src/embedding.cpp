#include "cfl/embedding.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "cfl/cliques.hpp"
#include "cfl/random.hpp"

namespace cfl {

namespace {

void check_disjoint(const std::vector<VertexSet>& classes) {
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j)
      if (classes[i].intersects(classes[j])) throw std::invalid_argument("vertex classes must be disjoint");
}

// First r-subset (lexicographic) of u with fewer than m common neighbours in w.
std::optional<std::vector<Vertex>> first_bad_subset(const Graph& g, const std::vector<Vertex>& u,
                                                    const VertexSet& w, int r, int m) {
  std::vector<Vertex> chosen;
  std::optional<std::vector<Vertex>> bad;
  std::function<bool(std::size_t, const VertexSet&)> rec = [&](std::size_t start, const VertexSet& common) {
    if (static_cast<int>(chosen.size()) == r) {
      if (common.count() < m) {
        bad = chosen;
        return true;
      }
      return false;
    }
    for (std::size_t i = start; i + (r - chosen.size()) <= u.size(); ++i) {
      chosen.push_back(u[i]);
      bool stop = rec(i + 1, common & g.neighbors(u[i]));
      chosen.pop_back();
      if (stop) return true;
    }
    return false;
  };
  rec(0, w);
  return bad;
}

std::int64_t capped_binomial_sum(std::int64_t n, int kmax, std::int64_t cap) {
  std::int64_t total = 0;
  __int128 c = 1;
  for (int k = 1; k <= kmax && k <= n; ++k) {
    c = c * (n - k + 1) / k;
    total += static_cast<std::int64_t>(std::min<__int128>(c, cap + 1));
    if (total > cap) return cap + 1;
  }
  return total;
}

}  // namespace

bool verify_drc(const Graph& g, const VertexSet& u, const VertexSet& witness_class, int r, int m) {
  std::vector<Vertex> members = u.to_vector();
  std::vector<std::size_t> idx(static_cast<std::size_t>(r));
  if (static_cast<int>(members.size()) < r) return true;
  for (int i = 0; i < r; ++i) idx[i] = static_cast<std::size_t>(i);
  while (true) {
    int common = 0;
    witness_class.for_each([&](Vertex w) {
      bool all = true;
      for (std::size_t i : idx) all = all && g.adjacent(members[i], w);
      common += all ? 1 : 0;
    });
    if (common < m) return false;
    int k = r - 1;
    while (k >= 0 && idx[k] == members.size() - static_cast<std::size_t>(r - k)) --k;
    if (k < 0) return true;
    ++idx[k];
    for (int j = k + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

DrcOutcome drc_select(const Graph& g, const VertexSet& target_class, const VertexSet& witness_class, int t, int r,
                      int m, const DrcOptions& options) {
  if (t < 1 || r < 2 || m < 1) throw std::invalid_argument("drc_select needs t >= 1, r >= 2, m >= 1");
  DrcOutcome best;
  best.u = VertexSet(g.order());
  best.t_used = t;
  std::vector<Vertex> w = witness_class.to_vector();
  if (w.empty()) {
    best.certified = true;
    return best;
  }
  bool have = false;
  for (int trial = 0; trial < options.max_trials; ++trial) {
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(trial)));
    VertexSet u = target_class;
    for (int i = 0; i < t; ++i) u &= g.neighbors(w[rng.below(w.size())]);
    std::int64_t deletions = 0;
    while (auto bad = first_bad_subset(g, u.to_vector(), witness_class, r, m)) {
      Vertex drop = *std::min_element(bad->begin(), bad->end(), [&](Vertex a, Vertex b) {
        int da = g.degree_into(a, witness_class);
        int db = g.degree_into(b, witness_class);
        return da != db ? da < db : a < b;
      });
      u.erase(drop);
      ++deletions;
    }
    best.trials = trial + 1;
    if (!have || u.count() > best.u.count()) {
      have = true;
      best.u = std::move(u);
      best.deletions = deletions;
    }
    if (options.target_size > 0 && best.u.count() >= options.target_size) break;
  }
  best.certified = verify_drc(g, best.u, witness_class, r, m);
  return best;
}

void PartiteHypergraph::validate() const {
  check_disjoint(classes);
  for (const auto& e : edges) {
    if (e.size() != classes.size()) throw std::invalid_argument("hyperedge has the wrong arity");
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] < 0 || e[i] >= universe || !classes[i].contains(e[i]))
        throw std::invalid_argument("hyperedge is not a transversal of the classes");
  }
}

std::set<std::vector<Vertex>> PartiteHypergraph::link(Vertex v) const {
  std::set<std::vector<Vertex>> out;
  for (auto it = edges.lower_bound({v}); it != edges.end() && it->front() == v; ++it)
    out.emplace(it->begin() + 1, it->end());
  return out;
}

PartiteHypergraph transversal_clique_hypergraph(const Graph& g, const std::vector<VertexSet>& classes) {
  check_disjoint(classes);
  PartiteHypergraph h;
  h.universe = g.order();
  h.classes = classes;
  std::vector<Vertex> cur;
  std::function<void(std::size_t, const VertexSet&)> rec = [&](std::size_t c, const VertexSet& cand) {
    if (c == classes.size()) {
      h.edges.insert(cur);
      return;
    }
    (cand & classes[c]).for_each([&](Vertex v) {
      cur.push_back(v);
      rec(c + 1, cand & g.neighbors(v));
      cur.pop_back();
    });
  };
  rec(0, g.all());
  return h;
}

DrcStep hypergraph_drc_step(const PartiteHypergraph& h, int s, double beta, std::uint64_t seed,
                            const AuditOptions& audit) {
  if (h.arity() < 2) throw std::invalid_argument("hypergraph_drc_step needs arity >= 2");
  if (s < 1) throw std::invalid_argument("hypergraph_drc_step needs s >= 1");
  if (!(beta > 0 && beta < 1)) throw std::invalid_argument("beta must lie in (0, 1)");

  DrcStep out;
  out.result.universe = h.universe;
  out.result.classes.assign(h.classes.begin() + 1, h.classes.end());
  std::vector<Vertex> v1 = h.classes[0].to_vector();
  if (!v1.empty()) {
    Rng rng(seed);
    for (int i = 0; i < s; ++i) out.sampled.push_back(v1[rng.below(v1.size())]);
    std::set<std::vector<Vertex>> common = h.link(out.sampled[0]);
    for (std::size_t i = 1; i < out.sampled.size() && !common.empty(); ++i) {
      auto next = h.link(out.sampled[i]);
      std::set<std::vector<Vertex>> kept;
      std::set_intersection(common.begin(), common.end(), next.begin(), next.end(), std::inserter(kept, kept.end()));
      common = std::move(kept);
    }
    out.result.edges = std::move(common);
  }

  // extenders[i]: vertices v of V_1 with v + e_i in h
  std::vector<std::vector<Vertex>> es(out.result.edges.begin(), out.result.edges.end());
  std::vector<VertexSet> extenders;
  for (const auto& e : es) {
    VertexSet ext(h.universe);
    for (Vertex v : v1) {
      std::vector<Vertex> full{v};
      full.insert(full.end(), e.begin(), e.end());
      if (h.contains(full)) ext.insert(v);
    }
    extenders.push_back(std::move(ext));
  }

  DangerAudit& a = out.audit;
  a.threshold = beta * static_cast<double>(v1.size());
  a.dangerous_by_size.assign(static_cast<std::size_t>(std::max(audit.delta_cap, 0)) + 1, 0);
  auto record = [&](const std::vector<std::size_t>& pick, const VertexSet& ext) {
    ++a.sets_examined;
    if (static_cast<double>(ext.count()) < a.threshold) {
      ++a.dangerous;
      ++a.dangerous_by_size[pick.size()];
      if (a.examples.size() < audit.keep) {
        std::vector<std::vector<Vertex>> ex;
        for (std::size_t i : pick) ex.push_back(es[i]);
        a.examples.push_back(std::move(ex));
      }
    }
  };
  auto weight_of = [&](const VertexSet& verts) { return verts.count(); };

  const auto ne = static_cast<std::int64_t>(es.size());
  a.exhaustive = capped_binomial_sum(ne, audit.delta_cap, audit.exhaustive_limit) <= audit.exhaustive_limit;
  if (a.exhaustive) {
    std::vector<std::size_t> pick;
    std::function<void(std::size_t, const VertexSet&, const VertexSet&)> rec =
        [&](std::size_t start, const VertexSet& ext, const VertexSet& verts) {
          for (std::size_t i = start; i < es.size(); ++i) {
            VertexSet vv = verts;
            for (Vertex x : es[i]) vv.insert(x);
            if (weight_of(vv) > audit.weight_cap) continue;
            pick.push_back(i);
            VertexSet e2 = pick.size() == 1 ? extenders[i] : ext & extenders[i];
            record(pick, e2);
            if (static_cast<int>(pick.size()) < audit.delta_cap) rec(i + 1, e2, vv);
            pick.pop_back();
          }
        };
    rec(0, VertexSet(h.universe), VertexSet(h.universe));
  } else {
    Rng rng(derive_seed(seed, 1));
    std::vector<std::size_t> all(es.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    for (std::int64_t t = 0; t < audit.samples; ++t) {
      auto k = 1 + rng.below(static_cast<std::uint64_t>(std::min<std::int64_t>(audit.delta_cap, ne)));
      auto pick = rng.sample_without_replacement(all, k);
      std::sort(pick.begin(), pick.end());
      VertexSet verts(h.universe);
      VertexSet ext = extenders[pick[0]];
      for (std::size_t i : pick) {
        for (Vertex x : es[i]) verts.insert(x);
        ext &= extenders[i];
      }
      if (weight_of(verts) > audit.weight_cap) continue;
      record(pick, ext);
    }
  }
  return out;
}

std::optional<VertexSet> find_partite_clique(const Graph& g, const std::vector<VertexSet>& classes, int p,
                                             std::int64_t node_budget, bool* exhausted) {
  if (p < 1) throw std::invalid_argument("find_partite_clique needs p >= 1");
  check_disjoint(classes);
  std::int64_t nodes = 0;
  bool out_of_budget = false;
  VertexSet chosen(g.order());
  std::optional<VertexSet> found;
  std::function<void(std::size_t, const VertexSet&)> rec = [&](std::size_t c, const VertexSet& cand) {
    if (c == classes.size()) {
      found = chosen;
      return;
    }
    for_each_clique(g, p, cand & classes[c], [&](const VertexSet& q) {
      if (++nodes > node_budget) {
        out_of_budget = true;
        return false;
      }
      chosen |= q;
      rec(c + 1, cand & common_neighborhood(g, q));
      chosen -= q;
      return !found && !out_of_budget;
    });
  };
  rec(0, g.all());
  if (exhausted) *exhausted = out_of_budget && !found;
  return found;
}

bool verify_partite_clique(const Graph& g, const std::vector<VertexSet>& classes, int p, const VertexSet& s) {
  VertexSet rest = s;
  for (const auto& c : classes) {
    if (s.intersection_count(c) != p) return false;
    rest -= c;
  }
  return rest.empty() && is_clique(g, s);
}

EmbedReport embed_clique_in_tuple(const Graph& g, const std::vector<VertexSet>& classes, int p, int alpha_bound,
                                  const EmbedOptions& opt) {
  const int q = static_cast<int>(classes.size());
  if (q < 2 || p < 1) throw std::invalid_argument("embed_clique_in_tuple needs q >= 2 and p >= 1");
  check_disjoint(classes);
  const int n = g.order();
  EmbedReport rep;
  rep.path = "none";
  auto note = [&](std::string s) { rep.telemetry.push_back(std::move(s)); };

  auto cascade = [&]() -> std::optional<VertexSet> {
    std::vector<PartiteHypergraph> hs{transversal_clique_hypergraph(g, classes)};
    note("H^0 edges: " + std::to_string(hs[0].edges.size()));
    if (hs[0].edges.empty()) {
      rep.stage = "no cross K_" + std::to_string(q);
      return std::nullopt;
    }
    for (int i = 1; i <= q - 2; ++i) {
      DrcStep step = hypergraph_drc_step(hs.back(), opt.s, opt.beta, derive_seed(opt.seed, 1000 + i));
      note("H^" + std::to_string(i) + " edges: " + std::to_string(step.result.edges.size()) + ", dangerous sets: " +
           std::to_string(step.audit.dangerous) + "/" + std::to_string(step.audit.sets_examined));
      if (step.result.edges.empty()) {
        rep.stage = "hypergraph step " + std::to_string(i) + " left no edges";
        return std::nullopt;
      }
      hs.push_back(std::move(step.result));
    }

    // the last hypergraph is a bipartite graph between V_{q-1} and V_q
    const VertexSet& left = classes[q - 2];
    const VertexSet& right = classes[q - 1];
    GraphBuilder bb(n);
    for (const auto& e : hs.back().edges) bb.add_edge(e[0], e[1]);
    Graph aux = std::move(bb).build();
    const int m = std::max(p, alpha_bound);
    DrcOptions dopt;
    dopt.max_trials = opt.drc_trials;
    dopt.seed = derive_seed(opt.seed, 1);
    dopt.target_size = m;
    DrcOutcome drc = drc_select(aux, left, right, opt.s, std::max(p, 2), m, dopt);
    note("drc |U| = " + std::to_string(drc.u.count()) + " (m = " + std::to_string(m) + ", trials " +
         std::to_string(drc.trials) + ")");
    if (!drc.certified || drc.u.count() < p) {
      rep.stage = "drc: U too small";
      return std::nullopt;
    }

    rep.stage = "no K_p in U";
    std::int64_t budget = opt.search_budget;
    std::optional<VertexSet> result;
    for_each_clique(g, p, drc.u, [&](const VertexSet& a_left) {
      if (--budget < 0) return false;
      VertexSet common = right;
      a_left.for_each([&](Vertex v) { common &= aux.neighbors(v); });
      auto a_right = find_clique(g, common, p);
      if (!a_right) {
        rep.stage = "no K_p in the common neighbourhood";
        return true;
      }
      // A^{q-1}, A^q chosen; extend backwards through H^{q-3}, ..., H^0
      std::vector<VertexSet> parts(static_cast<std::size_t>(q));
      parts[q - 2] = a_left;
      parts[q - 1] = *a_right;
      for (int i = q - 3; i >= 0; --i) {
        // transversals of parts[i+1..q-1]
        std::vector<std::vector<Vertex>> tilde{{}};
        for (int c = i + 1; c < q; ++c) {
          std::vector<std::vector<Vertex>> next;
          for (const auto& e : tilde)
            parts[c].for_each([&](Vertex v) {
              auto f = e;
              f.push_back(v);
              next.push_back(std::move(f));
            });
          tilde = std::move(next);
        }
        VertexSet b(n);
        classes[i].for_each([&](Vertex v) {
          bool all = true;
          for (const auto& e : tilde) {
            std::vector<Vertex> full{v};
            full.insert(full.end(), e.begin(), e.end());
            if (!hs[i].contains(full)) {
              all = false;
              break;
            }
          }
          if (all) b.insert(v);
        });
        auto a = find_clique(g, b, p);
        if (!a) {
          rep.stage = "back-extension into class " + std::to_string(i + 1);
          return true;
        }
        parts[i] = *a;
      }
      VertexSet all(n);
      for (const auto& part : parts) all |= part;
      result = std::move(all);
      return false;
    });
    if (result) rep.stage = "complete";
    return result;
  };

  auto found = cascade();
  if (found && verify_partite_clique(g, classes, p, *found)) {
    rep.success = true;
    rep.clique = found;
    rep.path = "drc";
  } else if (found) {
    rep.stage = "drc result failed verification";
  }

  if (opt.run_fallback || !rep.success) {
    bool exhausted = false;
    auto direct = find_partite_clique(g, classes, p, opt.search_budget, &exhausted);
    if (!exhausted) rep.fallback_found = direct.has_value();
    note(std::string("direct search: ") + (direct ? "found" : exhausted ? "budget exhausted" : "none"));
    if (!rep.success && direct && verify_partite_clique(g, classes, p, *direct)) {
      rep.success = true;
      rep.clique = direct;
      rep.path = "fallback";
    }
  }
  return rep;
}

}  // namespace cfl
