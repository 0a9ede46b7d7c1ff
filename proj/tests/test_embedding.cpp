#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cfl/cliques.hpp"
#include "cfl/embedding.hpp"
#include "cfl/generators.hpp"
#include "cfl/random.hpp"
#include "oracles.hpp"

using namespace cfl;

namespace {

// Pairs of u and the number of common neighbours in w, counted with adjacent().
bool pairs_have_common(const Graph& g, const VertexSet& u, const VertexSet& w, int m) {
  auto us = u.to_vector();
  auto ws = w.to_vector();
  for (std::size_t i = 0; i < us.size(); ++i)
    for (std::size_t j = i + 1; j < us.size(); ++j) {
      int c = 0;
      for (int x : ws) c += (g.adjacent(us[i], x) && g.adjacent(us[j], x)) ? 1 : 0;
      if (c < m) return false;
    }
  return true;
}

// Graph with the given classes, in-class and cross edges each kept with probability p.
Graph dense_tuple(int q, int size, double p, std::uint64_t seed) {
  Rng rng(seed);
  GraphBuilder b(q * size);
  for (Vertex u = 0; u < q * size; ++u)
    for (Vertex v = u + 1; v < q * size; ++v)
      if (rng.bernoulli(p)) b.add_edge(u, v);
  return std::move(b).build();
}

std::vector<VertexSet> consecutive_classes(int q, int size) {
  std::vector<VertexSet> out;
  for (int i = 0; i < q; ++i) out.push_back(VertexSet::range(q * size, i * size, (i + 1) * size));
  return out;
}

PartiteHypergraph complete_partite_hypergraph(int q, int size) {
  PartiteHypergraph h;
  h.universe = q * size;
  h.classes = consecutive_classes(q, size);
  std::vector<Vertex> cur;
  std::function<void(int)> rec = [&](int c) {
    if (c == q) {
      h.edges.insert(cur);
      return;
    }
    for (int v = c * size; v < (c + 1) * size; ++v) {
      cur.push_back(v);
      rec(c + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return h;
}

}  // namespace

TEST_CASE("drc_select examples") {
  std::vector<int> k2020{20, 20};
  Graph kb = complete_multipartite(k2020);
  VertexSet x = VertexSet::range(40, 0, 20);
  VertexSet y = VertexSet::range(40, 20, 40);
  auto full = drc_select(kb, x, y, 1, 2, 20);
  CHECK(full.u == x);
  CHECK(full.certified);

  auto none = drc_select(Graph(40), x, y, 1, 2, 1);
  CHECK(none.u.empty());

  Graph g = random_gnp(200, 0.5, 2024);
  VertexSet a = VertexSet::range(200, 0, 100);
  VertexSet b = VertexSet::range(200, 100, 200);
  DrcOptions opts;
  opts.seed = 7;
  auto out = drc_select(g, a, b, 2, 2, 5, opts);
  CHECK(out.certified);
  CHECK(out.u.count() >= 12);
  CHECK(out.u.is_subset_of(a));
  CHECK(pairs_have_common(g, out.u, b, 5));

  auto again = drc_select(g, a, b, 2, 2, 5, opts);
  CHECK(again.u == out.u);
  CHECK_THROWS(drc_select(g, a, b, 0, 2, 5));
}

TEST_CASE("verify_drc matches a direct pair scan") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = random_gnp(30, 0.5, seed);
    Rng rng(seed);
    VertexSet u(30);
    for (Vertex v = 0; v < 15; ++v)
      if (rng.bernoulli(0.4)) u.insert(v);
    VertexSet w = VertexSet::range(30, 15, 30);
    for (int m = 1; m <= 6; ++m) CHECK(verify_drc(g, u, w, 2, m) == pairs_have_common(g, u, w, m));
  }
}

TEST_CASE("hypergraph_drc_step examples") {
  PartiteHypergraph h = complete_partite_hypergraph(3, 3);
  h.validate();
  auto step = hypergraph_drc_step(h, 2, 0.5, 1);
  CHECK(step.result.arity() == 2);
  CHECK(step.result.edges.size() == 9);
  CHECK(step.audit.exhaustive);
  CHECK(step.audit.sets_examined > 0);
  CHECK(step.audit.dangerous == 0);

  PartiteHypergraph empty;
  empty.universe = 9;
  empty.classes = consecutive_classes(3, 3);
  auto e = hypergraph_drc_step(empty, 2, 0.5, 1);
  CHECK(e.result.edges.empty());
  CHECK(e.audit.sets_examined == 0);

  CHECK_THROWS(hypergraph_drc_step(PartiteHypergraph{3, {VertexSet::range(3, 0, 3)}, {}}, 1, 0.5, 1));
}

TEST_CASE("hypergraph_drc_step on a planted instance") {
  // vertex 0 of V_1 extends every transversal of V_2 x V_3; the others none
  PartiteHypergraph h;
  h.universe = 12;
  h.classes = {VertexSet::range(12, 0, 4), VertexSet::range(12, 4, 8), VertexSet::range(12, 8, 12)};
  for (Vertex b = 4; b < 8; ++b)
    for (Vertex c = 8; c < 12; ++c) h.edges.insert({0, b, c});
  bool saw_hit = false;
  bool saw_miss = false;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto step = hypergraph_drc_step(h, 1, 2.0 / 4, seed);
    REQUIRE(step.sampled.size() == 1);
    if (step.sampled[0] == 0) {
      saw_hit = true;
      CHECK(step.result.edges.size() == 16);
      // each set is extended by vertex 0 alone, below beta * 4 = 2
      CHECK(step.audit.dangerous == step.audit.sets_examined);
      CHECK(step.audit.dangerous_by_size[1] == 16);
      CHECK(step.audit.dangerous_by_size[2] == 120);
    } else {
      saw_miss = true;
      CHECK(step.result.edges.empty());
      CHECK(step.audit.dangerous == 0);
    }
  }
  CHECK(saw_hit);
  CHECK(saw_miss);
}

TEST_CASE("hypergraph_drc_step output is the intersection of the sampled links") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = dense_tuple(3, 5, 0.7, seed);
    PartiteHypergraph h = transversal_clique_hypergraph(g, consecutive_classes(3, 5));
    h.validate();
    for (const auto& e : h.edges) CHECK(is_clique(g, VertexSet(15, std::span<const Vertex>(e))));
    auto step = hypergraph_drc_step(h, 2, 0.3, seed);
    for (Vertex b = 5; b < 10; ++b)
      for (Vertex c = 10; c < 15; ++c) {
        bool in_all = true;
        for (Vertex v : step.sampled) in_all = in_all && h.contains({v, b, c});
        CHECK(step.result.contains({b, c}) == in_all);
      }
  }
}

TEST_CASE("find_partite_clique agrees with brute force") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = dense_tuple(2, 6, 0.6, seed);
    auto classes = consecutive_classes(2, 6);
    bool expected = false;
    for (oracle::Mask m = 0; m < (oracle::Mask{1} << 12) && !expected; ++m)
      expected = std::popcount(m & 0x3f) == 2 && std::popcount(m >> 6) == 2 && oracle::mask_is_clique(g, m);
    auto got = find_partite_clique(g, classes, 2, 1'000'000);
    CHECK(got.has_value() == expected);
    if (got) CHECK(verify_partite_clique(g, classes, 2, *got));
  }
}

TEST_CASE("embed_clique_in_tuple") {
  std::vector<int> parts{4, 4, 4};
  Graph km = complete_graph(12);
  auto classes3 = consecutive_classes(3, 4);
  auto rep = embed_clique_in_tuple(km, classes3, 2, 2);
  CHECK(rep.success);
  REQUIRE(rep.clique);
  CHECK(verify_partite_clique(km, classes3, 2, *rep.clique));

  Graph g = dense_tuple(2, 40, 0.9, 5);
  auto classes2 = consecutive_classes(2, 40);
  EmbedOptions opts;
  opts.seed = 5;
  auto r2 = embed_clique_in_tuple(g, classes2, 2, 4, opts);
  CHECK(r2.success);
  CHECK(r2.path == "drc");
  REQUIRE(r2.clique);
  CHECK(r2.clique->count() == 4);
  CHECK(verify_partite_clique(g, classes2, 2, *r2.clique));
  CHECK(r2.fallback_found == std::optional<bool>(true));

  GraphBuilder b(20);
  b.add_clique(VertexSet::range(20, 0, 10));
  b.add_clique(VertexSet::range(20, 10, 20));
  Graph split = std::move(b).build();
  auto none = embed_clique_in_tuple(split, consecutive_classes(2, 10), 1, 1);
  CHECK_FALSE(none.success);
  CHECK(none.stage == "no cross K_2");
  CHECK(none.path == "none");
  CHECK(none.fallback_found == std::optional<bool>(false));
}

TEST_CASE("embedding cascade on three classes") {
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Graph g = dense_tuple(3, 12, 0.9, 100 + seed);
    auto classes = consecutive_classes(3, 12);
    EmbedOptions opts;
    opts.seed = seed;
    auto rep = embed_clique_in_tuple(g, classes, 2, 2, opts);
    if (rep.success) {
      ++successes;
      CHECK(verify_partite_clique(g, classes, 2, *rep.clique));
    }
    CHECK(rep.path == "drc");
    CHECK(rep.fallback_found == std::optional<bool>(true));
  }
  CHECK(successes == 5);
}
