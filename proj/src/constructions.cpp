#include "cfl/constructions.hpp"

#include <cmath>
#include <stdexcept>

#include "cfl/cliques.hpp"
#include "cfl/generators.hpp"
#include "cfl/invariants.hpp"
#include "cfl/random.hpp"

namespace cfl {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

int parse_int(std::string_view s, std::string_view name) {
  int v = 0;
  try {
    std::size_t used = 0;
    v = std::stoi(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number in builtin graph name: " + std::string(name));
  }
  return v;
}

}  // namespace

LowerBoundGraph build_lower_bound_graph(const LowerBoundSpec& s) {
  require(s.ell >= 1 && s.r > s.ell, "lower bound graph needs r > ell >= 1");
  require(s.n >= 1, "lower bound graph needs n >= 1");
  Rational cap(s.r - s.ell, s.r);
  require(s.eta > Rational(0) && s.eta < cap, "eta must lie in (0, (r-ell)/r)");
  const int a = static_cast<int>((s.eta * Rational(s.n)).round_half_up());
  require(a >= 1, "|X_1| = round(eta*n) must be at least 1");
  require(s.inner.order() == s.n - a, "inner graph must have n - |X_1| = " + std::to_string(s.n - a) + " vertices");
  require(enumerate_cliques(s.inner, s.ell + 1, 1).cliques.empty(),
          "inner graph contains K_" + std::to_string(s.ell + 1));

  GraphBuilder b(s.n);
  VertexSet x1 = VertexSet::range(s.n, 0, a);
  VertexSet x2 = VertexSet::range(s.n, a, s.n);
  b.add_clique(x1);
  b.add_join(x1, x2);
  b.add_graph(s.inner, a);

  LowerBoundGraph out;
  out.graph = std::move(b).build();
  out.x1 = std::move(x1);
  out.x2 = std::move(x2);
  out.mu = Rational(s.r, s.r - s.ell) * (cap - s.eta);
  return out;
}

CoverThresholdGraph build_cover_threshold_graph(const CoverThresholdSpec& s) {
  require(s.r >= 3, "cover threshold graph needs r >= 3");
  require(s.x > Rational(0) && s.x < Rational(1), "x must lie in (0, 1)");
  const int nv = static_cast<int>((s.x * Rational(s.n)).round_half_up());
  const int rest = s.n - nv - 1;
  require(nv >= 1, "|N(v)| = round(x*n) must be at least 1");
  require(rest >= 1, "clique part n - round(x*n) - 1 must be at least 1");
  require(s.inner.order() == nv, "inner graph must have round(x*n) = " + std::to_string(nv) + " vertices");
  require(enumerate_cliques(s.inner, s.r - 1, 1).cliques.empty(),
          "inner graph contains K_" + std::to_string(s.r - 1));

  GraphBuilder b(s.n);
  VertexSet nbhd = VertexSet::range(s.n, 1, nv + 1);
  VertexSet clique = VertexSet::range(s.n, nv + 1, s.n);
  b.add_join(VertexSet(s.n, {0}), nbhd);
  b.add_graph(s.inner, 1);
  b.add_clique(clique);
  b.add_join(clique, nbhd);

  CoverThresholdGraph out;
  out.graph = std::move(b).build();
  out.v = 0;
  out.neighborhood = std::move(nbhd);
  out.clique = std::move(clique);
  out.min_degree = out.graph.min_degree();
  if (has_clique_cover(out.graph, 0, s.r, VertexSet(s.n)))
    throw std::logic_error("cover threshold graph has an r-clique through v");
  return out;
}

SparseSample sample_sparse_klfree(int n, int ell, double gamma, std::uint64_t seed, int max_tries,
                                  std::int64_t alpha_node_budget) {
  if (ell == 2)
    throw std::invalid_argument(
        "ell = 2 is not sampled: the triangle-free case follows from R(3,n) = Theta(n^2/log n)");
  require(ell >= 3, "sample_sparse_klfree needs ell >= 3");
  const double gamma_cap = static_cast<double>(ell - 1) / static_cast<double>(ell * ell + 2 * ell);
  require(gamma > 0 && gamma < gamma_cap, "gamma must lie in (0, (ell-1)/(ell^2+2ell))");
  require(n >= 1 && max_tries >= 0, "sample_sparse_klfree needs n >= 1 and max_tries >= 0");

  SparseSample out;
  const double x = (2.0 - gamma) / static_cast<double>(ell + 1);
  out.p = std::pow(static_cast<double>(n), -x);
  out.alpha_bound = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), 1.0 - gamma)));

  for (int i = 0; i < max_tries; ++i) {
    SampleAttempt at;
    at.seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    Graph g = random_gnp(n, out.p, at.seed);
    at.edges = g.edge_count();
    if (contains_clique(g, ell + 1)) {
      at.outcome = "contains K_" + std::to_string(ell + 1);
      out.log.push_back(at);
      continue;
    }
    AlphaOptions opts;
    opts.node_budget = alpha_node_budget;
    opts.seed = at.seed;
    AlphaResult a = alpha_ell_exact(g, ell, opts);
    at.alpha = a.value;
    if (!a.exact) {
      at.outcome = "alpha budget";
    } else if (a.value > out.alpha_bound) {
      at.outcome = "alpha_" + std::to_string(ell) + " too large";
    } else {
      at.outcome = "ok";
      out.log.push_back(at);
      out.graph = std::move(g);
      return out;
    }
    out.log.push_back(at);
  }
  return out;
}

Graph builtin_graph(std::string_view name) {
  if (name == "c5") return cycle_graph(5);
  if (name == "petersen") return petersen_graph();
  if (name == "kneser73") return kneser_graph(7, 3);
  auto colon = name.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("unknown builtin graph: " + std::string(name));
  std::string_view kind = name.substr(0, colon);
  std::string_view arg = name.substr(colon + 1);
  if (kind == "kneser") {
    auto c2 = arg.find(':');
    if (c2 == std::string_view::npos) throw std::invalid_argument("kneser needs kneser:N:K");
    return kneser_graph(parse_int(arg.substr(0, c2), name), parse_int(arg.substr(c2 + 1), name));
  }
  int k = parse_int(arg, name);
  if (k < 0) throw std::invalid_argument("negative size in builtin graph name: " + std::string(name));
  if (kind == "cycle") return cycle_graph(k);
  if (kind == "path") return path_graph(k);
  if (kind == "complete") return complete_graph(k);
  if (kind == "empty") return Graph(k);
  throw std::invalid_argument("unknown builtin graph: " + std::string(name));
}

}  // namespace cfl
