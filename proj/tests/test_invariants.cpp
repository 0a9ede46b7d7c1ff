#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cfl/cliques.hpp"
#include "cfl/generators.hpp"
#include "cfl/invariants.hpp"
#include "cfl/random.hpp"
#include "oracles.hpp"

using namespace cfl;

TEST_CASE("alpha_ell_exact examples") {
  auto k4 = alpha_ell_exact(complete_graph(4), 3);
  CHECK(k4.value == 2);
  CHECK(k4.exact);
  CHECK(is_kl_free(complete_graph(4), k4.witness, 3));

  for (int ell = 2; ell <= 4; ++ell) CHECK(alpha_ell_exact(Graph(7), ell).value == 7);

  Graph p = petersen_graph();
  CHECK(oracle::alpha_ell(p, 2) == 4);
  auto pr = alpha_ell_exact(p, 2);
  CHECK(pr.value == 4);
  CHECK(pr.witness.count() == 4);
  CHECK(is_kl_free(p, pr.witness, 2));

  CHECK_THROWS(alpha_ell_exact(p, 1));
}

TEST_CASE("alpha_ell_exact agrees with subset enumeration") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    int n = 5 + static_cast<int>(seed % 9);
    Graph g = random_gnp(n, 0.25 + 0.02 * static_cast<double>(seed), seed);
    for (int ell = 2; ell <= 4; ++ell) {
      auto r = alpha_ell_exact(g, ell);
      CHECK(r.exact);
      CHECK(r.value == oracle::alpha_ell(g, ell));
      CHECK(r.witness.count() == r.value);
      CHECK_FALSE(oracle::mask_contains_clique(g, oracle::to_mask(r.witness), ell));
    }
  }
}

TEST_CASE("alpha_ell_greedy") {
  auto k4 = alpha_ell_greedy(complete_graph(4), 3, 1);
  CHECK(k4.value >= 2);
  CHECK(k4.value <= alpha_ell_exact(complete_graph(4), 3).value);
  CHECK_FALSE(k4.exact);

  for (std::uint64_t s = 0; s < 10; ++s) CHECK(alpha_ell_greedy(cycle_graph(5), 2, s).value == 2);

  Graph g = random_gnp(30, 0.5, 30);
  auto greedy = alpha_ell_greedy(g, 3, 7);
  auto exact = alpha_ell_exact(g, 3);
  CHECK(exact.exact);
  CHECK(greedy.value <= exact.value);
  CHECK(is_kl_free(g, greedy.witness, 3));
}

TEST_CASE("alpha_ell monotonicity properties") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Graph g = random_gnp(14, 0.5, 100 + seed);
    int a2 = alpha_ell_exact(g, 2).value;
    int a3 = alpha_ell_exact(g, 3).value;
    int a4 = alpha_ell_exact(g, 4).value;
    CHECK(a2 <= a3);
    CHECK(a3 <= a4);

    Vertex v = static_cast<Vertex>(seed % 14);
    Graph minus = g.induced(g.all() - VertexSet(14, {v}));
    int d3 = alpha_ell_exact(minus, 3).value;
    CHECK((d3 == a3 || d3 == a3 - 1));
  }
}

TEST_CASE("alpha_ell_exact on a larger sparse graph stays exact") {
  Graph g = random_gnp(60, 0.3, 9);
  auto r = alpha_ell_exact(g, 2);
  CHECK(r.exact);
  CHECK(is_kl_free(g, r.witness, 2));
  CHECK(r.value >= alpha_ell_greedy(g, 2, 1).value);
}

TEST_CASE("node budget exhaustion yields a flagged partial result") {
  Graph g = random_gnp(60, 0.5, 3);
  AlphaOptions opts;
  opts.node_budget = 5;
  auto r = alpha_ell_exact(g, 2, opts);
  CHECK_FALSE(r.exact);
  CHECK(r.value > 0);
  CHECK(is_kl_free(g, r.witness, 2));
}

TEST_CASE("alpha_ell_at_most") {
  Graph p = petersen_graph();
  CHECK(alpha_ell_at_most(p, 2, 4) == std::optional<bool>(true));
  CHECK(alpha_ell_at_most(p, 2, 3) == std::optional<bool>(false));
}

TEST_CASE("has_clique_cover examples") {
  auto c = has_clique_cover(complete_graph(5), 0, 3, VertexSet(5));
  REQUIRE(c);
  CHECK(c->contains(0));
  CHECK(c->count() == 3);
  CHECK(is_clique(complete_graph(5), *c));

  CHECK_FALSE(has_clique_cover(cycle_graph(5), 0, 3, VertexSet(5)));
  CHECK_FALSE(has_clique_cover(complete_graph(5), 0, 3, VertexSet(5, {1, 2, 3})));
  CHECK_THROWS(has_clique_cover(complete_graph(5), 0, 3, VertexSet(5, {0})));
}

TEST_CASE("has_clique_cover agrees with filtered enumeration (n <= 14)") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    int n = 6 + static_cast<int>(seed % 9);
    Graph g = random_gnp(n, 0.5, 500 + seed);
    Rng rng(seed);
    VertexSet forbidden(n);
    for (Vertex v = 0; v < n; ++v)
      if (rng.bernoulli(0.2)) forbidden.insert(v);
    for (int r = 2; r <= 4; ++r) {
      auto all = enumerate_cliques(g, r).cliques;
      for (Vertex v = 0; v < n; ++v) {
        if (forbidden.contains(v)) continue;
        bool expected = std::any_of(all.begin(), all.end(), [&](const VertexSet& c) {
          return c.contains(v) && !c.intersects(forbidden);
        });
        auto got = has_clique_cover(g, v, r, forbidden);
        CHECK(got.has_value() == expected);
        if (got) {
          CHECK(is_clique(g, *got));
          CHECK_FALSE(got->intersects(forbidden));
        }
      }
    }
  }
}

TEST_CASE("rtt_oracle examples") {
  // 8 graphs on 3 vertices; K_3 is the only one with a triangle factor
  auto tiny = rtt_oracle(3, 3, 2, 3);
  CHECK(tiny.exhaustive);
  CHECK(tiny.feasible);
  CHECK(tiny.value == 1);
  CHECK(tiny.witness_graph.min_degree() == 1);
  CHECK(tiny.graphs_examined == 8);

  // bound 1 forces K_6, which has a triangle factor
  auto forced = rtt_oracle(6, 3, 2, 1);
  CHECK_FALSE(forced.feasible);
  CHECK(forced.value == -1);

  // K_{3,3} attains 3; every graph with min degree 4 on 6 vertices contains K_{2,2,2}
  auto six = rtt_oracle(6, 3, 2, 6);
  CHECK(six.value == 3);
  CHECK(six.witness_graph.min_degree() == 3);
  CHECK(alpha_ell_exact(six.witness_graph, 2).value <= 6);
  CHECK(has_factor(six.witness_graph, 3).status == FactorStatus::kAbsent);

  auto degenerate = rtt_oracle(4, 3, 2, 4);
  CHECK(degenerate.degenerate);
  CHECK(degenerate.value == 3);  // K_4 itself
}

TEST_CASE("rtt_oracle local search mode is flagged non-exhaustive") {
  RttOptions opts;
  opts.local_search_iterations = 200;
  auto r = rtt_oracle(9, 3, 2, 4, opts);
  CHECK_FALSE(r.exhaustive);
  REQUIRE(r.feasible);
  CHECK(r.witness_graph.min_degree() == r.value);
  CHECK(alpha_ell_exact(r.witness_graph, 2).value <= 4);
  CHECK(has_factor(r.witness_graph, 3).status == FactorStatus::kAbsent);
}
