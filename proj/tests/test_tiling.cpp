#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cfl/generators.hpp"
#include "cfl/random.hpp"
#include "cfl/tiling.hpp"
#include "oracles.hpp"

using namespace cfl;

namespace {

Graph k6_minus_perfect_matching() {
  GraphBuilder b(6);
  b.add_clique(VertexSet::full(6));
  b.remove_edge(0, 1);
  b.remove_edge(2, 3);
  b.remove_edge(4, 5);
  return std::move(b).build();
}

}  // namespace

TEST_CASE("max_tiling examples") {
  std::vector<int> k333{3, 3, 3};
  auto full = max_tiling(complete_multipartite(k333), 3);
  CHECK(full.optimal);
  CHECK(full.deficiency == 0);
  CHECK(full.best.size() == 3);

  auto c6 = max_tiling(cycle_graph(6), 3);
  CHECK(c6.optimal);
  CHECK(c6.best.size() == 0);
  CHECK(c6.deficiency == 6);

  std::vector<int> k345{3, 4, 5};
  Graph t = complete_multipartite(k345);
  CHECK(oracle::max_packing(t, 3) == 3);
  auto r = max_tiling(t, 3);
  CHECK(r.best.size() == 3);
  CHECK(r.deficiency == 3);
  CHECK(verify_tiling(t, r.best));
}

TEST_CASE("has_factor examples") {
  auto k6 = has_factor(complete_graph(6), 3);
  CHECK(k6.found());
  REQUIRE(k6.factor);
  CHECK(verify_factor(complete_graph(6), *k6.factor, VertexSet::full(6)));

  Graph k222 = k6_minus_perfect_matching();
  CHECK(oracle::mask_has_factor(k222, 0b111111, 3));
  auto f = has_factor(k222, 3);
  CHECK(f.found());
  CHECK(verify_factor(k222, *f.factor, k222.all()));

  auto div = has_factor(complete_graph(7), 3);
  CHECK(div.status == FactorStatus::kAbsent);
  CHECK(div.reason == "divisibility");

  auto none = has_factor(cycle_graph(6), 3);
  CHECK(none.status == FactorStatus::kAbsent);
  CHECK(none.reason == "exhausted");
}

TEST_CASE("has_factor on an induced subset keeps original vertex ids") {
  Graph g = complete_graph(8);
  VertexSet within(8, {1, 3, 4, 6, 7, 0});
  auto f = has_factor(g, 3, within);
  REQUIRE(f.found());
  CHECK(f.factor->covered == within);
  CHECK(has_factor(g, 3, VertexSet(8)).found());  // empty target has the empty factor
}

TEST_CASE("greedy_tiling") {
  CHECK(greedy_tiling(complete_graph(9), 3, 4).size() == 3);
  CHECK(greedy_tiling(cycle_graph(6), 3, 4).size() == 0);

  Graph g = random_gnp(24, 0.9, 24);
  auto greedy = greedy_tiling(g, 4, 1);
  CHECK(verify_tiling(g, greedy));
  auto best = max_tiling(g, 4);
  CHECK(best.optimal);
  CHECK(24 - greedy.covered.count() >= best.deficiency);
}

TEST_CASE("max_tiling matches exhaustive packing (n <= 12)") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    int n = 6 + static_cast<int>(seed % 7);
    int r = 3 + static_cast<int>(seed % 2);
    Graph g = random_gnp(n, 0.45 + 0.01 * static_cast<double>(seed), seed * 13 + 1);
    auto res = max_tiling(g, r);
    CHECK(res.optimal);
    CHECK(res.best.size() == oracle::max_packing(g, r));
    std::string why;
    CHECK_MESSAGE(verify_tiling(g, res.best, &why), why);
    CHECK(res.deficiency == n - r * res.best.size());

    bool factor = oracle::mask_has_factor(g, (oracle::Mask{1} << n) - 1, r);
    CHECK(has_factor(g, r).found() == factor);
  }
}

TEST_CASE("verify_tiling rejects broken tilings") {
  Graph g = cycle_graph(5);
  CliqueTiling t(5, 2);
  t.add(VertexSet(5, {0, 1}));
  CHECK(verify_tiling(g, t));
  t.add(VertexSet(5, {1, 2}));
  std::string why;
  CHECK_FALSE(verify_tiling(g, t, &why));
  CHECK(why == "members overlap");

  CliqueTiling u(5, 2);
  u.add(VertexSet(5, {0, 2}));
  CHECK_FALSE(verify_tiling(g, u));
}

TEST_CASE("budget exhaustion is flagged") {
  Graph g = random_gnp(30, 0.7, 1);
  auto r = max_tiling(g, 3, 3);
  CHECK_FALSE(r.optimal);
  CHECK(verify_tiling(g, r.best));
  // K_{9,10,11} has many triangles but no factor
  std::vector<int> parts{9, 10, 11};
  auto f = has_factor(complete_multipartite(parts), 3, 5);
  CHECK(f.status == FactorStatus::kIndeterminate);
}

TEST_CASE("dense graphs above the Hajnal-Szemeredi bound have factors") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 12;
    Rng rng(seed);
    GraphBuilder b(n);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (rng.bernoulli(0.75)) b.add_edge(u, v);
    // top up degrees to (1 - 1/3) n = 8
    for (Vertex u = 0; u < n; ++u) {
      int deg = 0;
      for (Vertex v = 0; v < n; ++v) deg += b.has_edge(u, v) ? 1 : 0;
      for (Vertex v = 0; v < n && deg < 8; ++v)
        if (v != u && !b.has_edge(u, v)) {
          b.add_edge(u, v);
          ++deg;
        }
    }
    Graph g = std::move(b).build();
    REQUIRE(g.min_degree() >= 8);
    CHECK(has_factor(g, 3).found());
  }
}
