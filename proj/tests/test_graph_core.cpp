#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cfl/cliques.hpp"
#include "cfl/generators.hpp"
#include "cfl/graph_io.hpp"
#include "oracles.hpp"

using namespace cfl;

TEST_CASE("edge list parsing") {
  Graph p3 = parse_edge_list("3 2\n0 1\n1 2\n");
  CHECK(p3.order() == 3);
  CHECK(p3.edge_count() == 2);
  CHECK(p3.adjacent(0, 1));
  CHECK(p3.adjacent(2, 1));
  CHECK_FALSE(p3.adjacent(0, 2));

  Graph single = parse_edge_list("1 0\n");
  CHECK(single.order() == 1);
  CHECK(single.edge_count() == 0);
}

TEST_CASE("edge list errors are distinct and located") {
  auto kind_of = [](const char* payload) {
    try {
      parse_edge_list(payload);
    } catch (const ParseError& e) {
      return e.kind();
    }
    FAIL("no error for " << payload);
    return ParseErrorKind::kMalformedGraph6;
  };
  CHECK(kind_of("3\n") == ParseErrorKind::kMalformedHeader);
  CHECK(kind_of("x 1\n0 1\n") == ParseErrorKind::kMalformedHeader);
  CHECK(kind_of("3 1\n0 3\n") == ParseErrorKind::kVertexOutOfRange);
  CHECK(kind_of("3 2\n0 1\n1 0\n") == ParseErrorKind::kDuplicateEdge);
  CHECK(kind_of("3 1\n1 1\n") == ParseErrorKind::kLoop);
  CHECK(kind_of("3 2\n0 1\n") == ParseErrorKind::kEdgeCountMismatch);
  CHECK(kind_of("3 1\n0  1\n") == ParseErrorKind::kMalformedLine);

  try {
    parse_edge_list("4 3\n0 1\n1 2\n2 2\n");
    FAIL("expected loop error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.offset() == 12);
  }
}

TEST_CASE("graph6 encodes C5 per the format") {
  Graph c5 = cycle_graph(5);
  std::string g6 = serialize_graph6(c5);
  CHECK(g6 == "Dhc\n");
  int n = 0;
  auto edges = oracle::decode_graph6_small(g6, n);
  CHECK(n == 5);
  std::vector<std::pair<int, int>> expected{{0, 1}, {0, 4}, {1, 2}, {2, 3}, {3, 4}};
  CHECK(edges == expected);

  Graph back = parse_graph6("Dhc");
  CHECK(back == c5);
  for (Vertex v = 0; v < 5; ++v) CHECK(back.degree(v) == 2);
}

TEST_CASE("graph6 rejects malformed payloads") {
  CHECK_THROWS_AS(parse_graph6(""), ParseError);
  CHECK_THROWS_AS(parse_graph6("Dh"), ParseError);     // too short
  CHECK_THROWS_AS(parse_graph6("Dh c"), ParseError);   // byte outside range
  CHECK_THROWS_AS(parse_graph6("Dhd"), ParseError);    // padding bits set
}

TEST_CASE("serialization round trip, both formats") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    int n = static_cast<int>(1 + seed * 7 % 90);  // crosses the 63-vertex graph6 header switch
    Graph g = random_gnp(n, 0.3, seed);
    CHECK(parse_edge_list(serialize_edge_list(g)) == g);
    CHECK(parse_graph6(serialize_graph6(g)) == g);
  }
  Graph g = random_gnp(70, 0.5, 1);
  CHECK(serialize_graph6(g)[0] == '~');
}

TEST_CASE("edge list serializer sorts edges") {
  GraphBuilder b(4);
  b.add_edge(3, 2);
  b.add_edge(1, 0);
  b.add_edge(0, 3);
  CHECK(serialize_edge_list(std::move(b).build()) == "4 3\n0 1\n0 3\n2 3\n");
}

TEST_CASE("complete multipartite") {
  std::vector<int> k3{1, 1, 1};
  CHECK(complete_multipartite(k3) == complete_graph(3));

  std::vector<int> k333{3, 3, 3};
  Graph g = complete_multipartite(k333);
  CHECK(g.edge_count() == 27);
  for (Vertex v = 0; v < 9; ++v) CHECK(g.degree(v) == 6);

  std::vector<int> k23{2, 3};
  Graph h = complete_multipartite(k23);
  CHECK(h.edge_count() == 6);
  CHECK(h.min_degree() == 2);

  CHECK_THROWS(complete_multipartite(std::vector<int>{}));
}

TEST_CASE("random_gnp") {
  CHECK(random_gnp(10, 0.0, 5).edge_count() == 0);
  CHECK(random_gnp(10, 1.0, 5) == complete_graph(10));
  CHECK_THROWS(random_gnp(10, 1.5, 5));
  CHECK_THROWS(random_gnp(10, -0.1, 5));

  CHECK(random_gnp(40, 0.3, 77) == random_gnp(40, 0.3, 77));
  CHECK_FALSE(random_gnp(40, 0.3, 77) == random_gnp(40, 0.3, 78));

  // binomial(499500, 1/2): mean 249750, sd sqrt(499500)/2
  Graph g = random_gnp(1000, 0.5, 2024);
  double sd = std::sqrt(499500.0 * 0.25);
  CHECK(std::abs(static_cast<double>(g.edge_count()) - 249750.0) <= 4 * sd);
}

TEST_CASE("adjacency is symmetric and edge_count is half the degree sum") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = random_gnp(50, 0.2 + 0.05 * static_cast<double>(seed), seed);
    std::int64_t sum = 0;
    for (Vertex u = 0; u < g.order(); ++u) {
      sum += g.degree(u);
      CHECK_FALSE(g.adjacent(u, u));
      for (Vertex v = 0; v < g.order(); ++v) CHECK(g.adjacent(u, v) == g.adjacent(v, u));
    }
    CHECK(sum == 2 * g.edge_count());
  }
}

TEST_CASE("enumerate_cliques examples") {
  CHECK(enumerate_cliques(cycle_graph(5), 3).cliques.empty());
  CHECK(enumerate_cliques(complete_graph(4), 3).cliques.size() == 4);
  CHECK(enumerate_cliques(petersen_graph(), 2).cliques.size() == oracle::cliques_by_subset_filter(petersen_graph(), 2).size());
  CHECK(enumerate_cliques(petersen_graph(), 2).cliques.size() == 15);
}

TEST_CASE("enumerate_cliques matches the subset filter (n <= 12)") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    int n = 4 + static_cast<int>(seed % 9);
    Graph g = random_gnp(n, 0.3 + 0.015 * static_cast<double>(seed), seed);
    for (int k = 1; k <= 5; ++k) {
      auto got = enumerate_cliques(g, k);
      CHECK_FALSE(got.truncated);
      std::vector<std::vector<int>> tuples;
      for (const auto& c : got.cliques) tuples.push_back(c.to_vector());
      CHECK(tuples == oracle::cliques_by_subset_filter(g, k));
    }
  }
}

TEST_CASE("capped enumeration flags truncation and keeps the lexicographic prefix") {
  Graph k6 = complete_graph(6);
  auto all = enumerate_cliques(k6, 3);
  auto capped = enumerate_cliques(k6, 3, 5);
  CHECK(capped.truncated);
  REQUIRE(capped.cliques.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(capped.cliques[i] == all.cliques[i]);
  CHECK_FALSE(enumerate_cliques(k6, 3, 20).truncated);
  CHECK_THROWS(enumerate_cliques(k6, 0));
}

TEST_CASE("common_neighborhood") {
  CHECK(common_neighborhood(complete_graph(5), VertexSet(5, {0, 1})) == VertexSet(5, {2, 3, 4}));
  CHECK(common_neighborhood(cycle_graph(6), VertexSet(6, {0, 3})).empty());
  std::vector<int> k33{3, 3};
  CHECK(common_neighborhood(complete_multipartite(k33), VertexSet(6, {0, 1})) == VertexSet(6, {3, 4, 5}));
  CHECK_THROWS(common_neighborhood(complete_graph(3), VertexSet(3)));
}

TEST_CASE("induced subgraphs and vertex sets") {
  Graph p = petersen_graph();
  VertexSet outer = VertexSet::range(10, 0, 5);
  CHECK(p.induced(outer) == cycle_graph(5));
  CHECK(p.edges_between(outer, p.all() - outer) == 5);

  VertexSet a(130, {1, 64, 129});
  CHECK(a.count() == 3);
  CHECK(a.first() == 1);
  CHECK(a.next(1) == 64);
  CHECK(a.next(64) == 129);
  CHECK(a.next(129) == -1);
  CHECK(lex_less(VertexSet(5, {0, 3}), VertexSet(5, {0, 4})));
  CHECK(lex_less(VertexSet(5, {0}), VertexSet(5, {0, 1})));
  CHECK_FALSE(lex_less(VertexSet(5, {1}), VertexSet(5, {0, 4})));
}

TEST_CASE("kneser(7,3) is triangle-free") {
  Graph k = kneser_graph(7, 3);
  CHECK(k.order() == 35);
  CHECK_FALSE(contains_clique(k, 3));
  CHECK(contains_clique(k, 2));
}

TEST_CASE("raise_min_degree adds edges and nests across targets") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = random_gnp(12, 0.2, seed);
    Graph prev = g;
    for (int target = 1; target <= 10; ++target) {
      Graph h = raise_min_degree(g, target);
      CHECK(h.min_degree() >= target);
      for (const Edge& e : prev.edges()) CHECK(h.adjacent(e.u, e.v));
      prev = h;
    }
  }
  CHECK(raise_min_degree(complete_graph(5), 3) == complete_graph(5));
  CHECK_THROWS(raise_min_degree(Graph(4), 4));
}
