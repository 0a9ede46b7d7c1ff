#include "cfl/regularity.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cfl/random.hpp"

namespace cfl {

namespace {

using i128 = __int128;

void check_pair(const VertexSet& x, const VertexSet& y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("pair sides must be nonempty");
  if (x.intersects(y)) throw std::invalid_argument("pair sides must be disjoint");
}

// Smallest integer s >= eps * size, at least 1.
int min_size(const Rational& eps, int size) {
  return static_cast<int>(std::max<std::int64_t>(1, (eps * Rational(size)).ceil()));
}

// Shared state for one regularity question on (X, Y).
struct PairScan {
  std::vector<Vertex> xs;
  std::vector<Vertex> ys;
  std::int64_t total = 0;  // e(X, Y)
  Rational eps;

  PairScan(const Graph& g, const VertexSet& x, const VertexSet& y, const Rational& epsilon)
      : xs(x.to_vector()), ys(y.to_vector()), eps(epsilon) {
    for (Vertex v : xs) total += g.degree_into(v, y);
  }

  // |e / (a k) - total / (|X||Y|)| > eps
  bool violates(std::int64_t e, std::int64_t a, std::int64_t k) const {
    i128 nxny = static_cast<i128>(xs.size()) * static_cast<i128>(ys.size());
    i128 lhs = static_cast<i128>(e) * nxny - static_cast<i128>(total) * a * k;
    if (lhs < 0) lhs = -lhs;
    return lhs * eps.den() > static_cast<i128>(eps.num()) * a * k * nxny;
  }
};

// Given degree counts c[i] of the `others` side into a fixed subset of size a,
// finds the first k >= kmin whose top-k or bottom-k choice violates. Returns
// the chosen indices.
std::optional<std::vector<int>> extreme_violation(const PairScan& scan, const std::vector<int>& c, int a,
                                                  int kmin, bool swap_roles) {
  const int m = static_cast<int>(c.size());
  std::vector<int> hi(m);
  std::iota(hi.begin(), hi.end(), 0);
  std::vector<int> lo = hi;
  std::stable_sort(hi.begin(), hi.end(), [&](int p, int q) { return c[p] > c[q]; });
  std::stable_sort(lo.begin(), lo.end(), [&](int p, int q) { return c[p] < c[q]; });
  std::int64_t top = 0;
  std::int64_t bottom = 0;
  for (int k = 1; k <= m; ++k) {
    top += c[hi[k - 1]];
    bottom += c[lo[k - 1]];
    if (k < kmin) continue;
    std::int64_t xa = swap_roles ? k : a;
    std::int64_t yk = swap_roles ? a : k;
    if (scan.violates(top, xa, yk)) return std::vector<int>(hi.begin(), hi.begin() + k);
    if (scan.violates(bottom, xa, yk)) return std::vector<int>(lo.begin(), lo.begin() + k);
  }
  return std::nullopt;
}

VertexSet from_indices(int universe, const std::vector<Vertex>& pool, const std::vector<int>& idx) {
  VertexSet s(universe);
  for (int i : idx) s.insert(pool[static_cast<std::size_t>(i)]);
  return s;
}

void exhaustive_scan(const Graph& g, const PairScan& scan, RegularityVerdict& out) {
  const int nx = static_cast<int>(scan.xs.size());
  const int ny = static_cast<int>(scan.ys.size());
  const int amin = min_size(scan.eps, nx);
  const int kmin = min_size(scan.eps, ny);
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(ny), 0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      if (g.adjacent(scan.ys[j], scan.xs[i])) adj[j] |= std::uint32_t{1} << i;

  std::vector<int> c(static_cast<std::size_t>(ny));
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << nx); ++mask) {
    int a = std::popcount(mask);
    if (a < amin) continue;
    for (int j = 0; j < ny; ++j) c[j] = std::popcount(adj[j] & mask);
    if (auto yi = extreme_violation(scan, c, a, kmin, false)) {
      std::vector<int> xi;
      for (int i = 0; i < nx; ++i)
        if (mask >> i & 1U) xi.push_back(i);
      out.regular = false;
      out.witness.emplace(from_indices(g.order(), scan.xs, xi), from_indices(g.order(), scan.ys, *yi));
      return;
    }
  }
}

void sampled_scan(const Graph& g, const PairScan& scan, const SamplingOptions& opt, RegularityVerdict& out) {
  Rng rng(opt.seed);
  const int nx = static_cast<int>(scan.xs.size());
  const int ny = static_cast<int>(scan.ys.size());
  const int amin = min_size(scan.eps, nx);
  const int kmin = min_size(scan.eps, ny);
  for (std::int64_t t = 0; t < opt.samples; ++t) {
    out.samples_used = t + 1;
    // a random X' of minimum size against the extreme Y' choices, then the
    // same with the roles of the sides swapped
    for (int side = 0; side < 2; ++side) {
      const auto& pick_from = side == 0 ? scan.xs : scan.ys;
      const auto& others = side == 0 ? scan.ys : scan.xs;
      const int size = side == 0 ? amin : kmin;
      auto chosen = rng.sample_without_replacement(pick_from, static_cast<std::size_t>(size));
      VertexSet sub(g.order(), std::span<const Vertex>(chosen));
      std::vector<int> c(others.size());
      for (std::size_t j = 0; j < others.size(); ++j) c[j] = g.degree_into(others[j], sub);
      if (auto idx = extreme_violation(scan, c, size, side == 0 ? kmin : amin, side == 1)) {
        VertexSet other = from_indices(g.order(), others, *idx);
        out.regular = false;
        if (side == 0)
          out.witness.emplace(std::move(sub), std::move(other));
        else
          out.witness.emplace(std::move(other), std::move(sub));
        return;
      }
    }
  }
}

}  // namespace

Rational pair_density(const Graph& g, const VertexSet& x, const VertexSet& y) {
  check_pair(x, y);
  return Rational(g.edges_between(x, y), static_cast<std::int64_t>(x.count()) * y.count());
}

const char* to_string(RegularityMode m) { return m == RegularityMode::kExhaustive ? "exhaustive" : "sampled"; }

RegularityMode auto_mode(const VertexSet& x, const VertexSet& y) {
  return x.count() <= kExhaustiveRegularityMax && y.count() <= kExhaustiveRegularityMax ? RegularityMode::kExhaustive
                                                                                         : RegularityMode::kSampled;
}

RegularityVerdict is_regular_pair(const Graph& g, const VertexSet& x, const VertexSet& y, const Rational& epsilon,
                                  RegularityMode mode, const SamplingOptions& sampling) {
  check_pair(x, y);
  if (epsilon <= Rational(0)) throw std::invalid_argument("epsilon must be positive");
  RegularityVerdict out;
  out.epsilon = epsilon;
  out.mode = mode;
  out.density = pair_density(g, x, y);
  PairScan scan(g, x, y, epsilon);
  if (mode == RegularityMode::kExhaustive) {
    if (x.count() > kExhaustiveRegularityMax || y.count() > kExhaustiveRegularityMax)
      throw std::invalid_argument("exhaustive regularity is limited to sides of at most 14 vertices");
    exhaustive_scan(g, scan, out);
  } else {
    sampled_scan(g, scan, sampling, out);
  }
  return out;
}

RegularityVerdict is_super_regular(const Graph& g, const VertexSet& x, const VertexSet& y, const Rational& epsilon,
                                   const Rational& d, RegularityMode mode, const SamplingOptions& sampling) {
  check_pair(x, y);
  auto low = [&](const VertexSet& side, const VertexSet& other) -> std::optional<Vertex> {
    Rational need = d * Rational(other.count());
    for (Vertex v = side.first(); v >= 0; v = side.next(v))
      if (Rational(g.degree_into(v, other)) < need) return v;
    return std::nullopt;
  };
  auto bad = low(x, y);
  if (!bad) bad = low(y, x);
  if (bad) {
    RegularityVerdict out;
    out.epsilon = epsilon;
    out.mode = mode;
    out.density = pair_density(g, x, y);
    out.regular = false;
    out.failing_vertex = bad;
    return out;
  }
  return is_regular_pair(g, x, y, epsilon, mode, sampling);
}

SuperRegularization make_super_regular(const Graph& g, const std::vector<VertexSet>& clusters,
                                       const Rational& epsilon, const SamplingOptions& sampling) {
  const std::size_t m = clusters.size();
  if (m < 2) throw std::invalid_argument("make_super_regular needs at least two clusters");
  if (epsilon <= Rational(0)) throw std::invalid_argument("epsilon must be positive");
  const auto t = static_cast<std::int64_t>(m - 1);
  if (Rational(2 * t) * epsilon >= Rational(1)) throw std::invalid_argument("make_super_regular needs t < 1/(2 eps)");

  SuperRegularization out;
  out.densities.assign(m, std::vector<Rational>(m, Rational(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      out.densities[i][j] = out.densities[j][i] = pair_density(g, clusters[i], clusters[j]);
      auto v = is_regular_pair(g, clusters[i], clusters[j], epsilon, auto_mode(clusters[i], clusters[j]), sampling);
      out.inputs_regular = out.inputs_regular && v.regular;
      out.input_verdicts.push_back(std::move(v));
    }

  out.removed.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    VertexSet keep = clusters[i];
    clusters[i].for_each([&](Vertex v) {
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        if (Rational(g.degree_into(v, clusters[j])) < (out.densities[i][j] - epsilon) * Rational(clusters[j].count())) {
          keep.erase(v);
          out.removed[i].push_back(v);
          return;
        }
      }
    });
    if (Rational(keep.count()) < (Rational(1) - Rational(t) * epsilon) * Rational(clusters[i].count()))
      out.sizes_ok = false;
    out.refined.push_back(std::move(keep));
  }

  const Rational eps2 = Rational(2) * epsilon;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const VertexSet& a = out.refined[i];
      const VertexSet& b = out.refined[j];
      if (a.empty() || b.empty()) {
        RegularityVerdict v;
        v.epsilon = eps2;
        v.regular = false;
        out.outputs_super_regular = false;
        out.output_verdicts.push_back(v);
        continue;
      }
      Rational dd = out.densities[i][j] - Rational(t + 1) * epsilon;
      auto v = is_super_regular(g, a, b, eps2, dd, auto_mode(a, b), sampling);
      out.outputs_super_regular = out.outputs_super_regular && v.regular;
      out.output_verdicts.push_back(std::move(v));
    }
  return out;
}

void Partition::validate(const Graph& g) const {
  const int n = g.order();
  if (exceptional.universe() != n) throw std::invalid_argument("partition universe does not match the graph");
  VertexSet seen = exceptional;
  for (const auto& c : clusters) {
    if (c.universe() != n) throw std::invalid_argument("partition universe does not match the graph");
    if (c.count() != cluster_size() || c.empty()) throw std::invalid_argument("clusters must be nonempty and equal-sized");
    if (c.intersects(seen)) throw std::invalid_argument("partition classes overlap");
    seen |= c;
  }
  if (seen.count() != n) throw std::invalid_argument("partition does not cover every vertex");
}

std::vector<std::vector<Rational>> Partition::densities(const Graph& g) const {
  const std::size_t k = clusters.size();
  std::vector<std::vector<Rational>> d(k, std::vector<Rational>(k, Rational(0)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) d[i][j] = d[j][i] = pair_density(g, clusters[i], clusters[j]);
  return d;
}

Partition parse_partition(std::string_view text, int n) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("partition line " + std::to_string(lineno) + ": " + what);
  };
  auto read_ids = [&](std::size_t want) {
    std::vector<Vertex> ids;
    ++lineno;
    if (!std::getline(in, line)) {
      if (want == 0) return ids;
      fail("missing line");
    }
    std::istringstream ls(line);
    long long v;
    while (ls >> v) {
      if (v < 0 || v >= n) fail("vertex out of range");
      ids.push_back(static_cast<Vertex>(v));
    }
    if (!ls.eof()) fail("malformed vertex id");
    if (ids.size() != want) fail("expected " + std::to_string(want) + " ids, found " + std::to_string(ids.size()));
    return ids;
  };

  ++lineno;
  long long k = 0, m = 0, n0 = 0;
  if (!std::getline(in, line)) fail("missing header");
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> k >> m >> n0) || (hs >> extra) || k < 0 || m < 0 || n0 < 0) fail("header must be \"k m n0\"");
  }
  Partition p;
  p.exceptional = VertexSet(n);
  for (long long i = 0; i < k; ++i) {
    auto ids = read_ids(static_cast<std::size_t>(m));
    VertexSet c(n, std::span<const Vertex>(ids));
    if (c.count() != m) fail("repeated vertex in cluster");
    p.clusters.push_back(std::move(c));
  }
  auto v0 = read_ids(static_cast<std::size_t>(n0));
  p.exceptional = VertexSet(n, std::span<const Vertex>(v0));
  if (p.exceptional.count() != n0) fail("repeated vertex in V_0");
  return p;
}

std::string serialize_partition(const Partition& p) {
  std::ostringstream out;
  out << p.clusters.size() << ' ' << p.cluster_size() << ' ' << p.exceptional.count() << '\n';
  auto line = [&](const VertexSet& s) {
    bool first = true;
    s.for_each([&](Vertex v) {
      out << (first ? "" : " ") << v;
      first = false;
    });
    out << '\n';
  };
  for (const auto& c : p.clusters) line(c);
  line(p.exceptional);
  return out.str();
}

ReducedGraph reduced_graph(const Graph& g, const Partition& p, const Rational& d) {
  p.validate(g);
  ReducedGraph out;
  out.k = static_cast<int>(p.clusters.size());
  out.d = d;
  out.weights = p.densities(g);
  GraphBuilder b(out.k);
  for (int i = 0; i < out.k; ++i)
    for (int j = i + 1; j < out.k; ++j)
      if (out.weights[i][j] >= d) b.add_edge(i, j);
  out.graph = std::move(b).build();
  out.min_degree = out.k == 0 ? 0 : out.graph.min_degree();
  return out;
}

SlicingResult slicing_check(const Graph& g, const VertexSet& x, const VertexSet& y, const Rational& epsilon,
                            const Rational& d, const Rational& eta, const VertexSet& x1, const VertexSet& y1,
                            const SamplingOptions& sampling) {
  check_pair(x, y);
  if (eta <= Rational(0) || eta > Rational(1)) throw std::invalid_argument("eta must lie in (0, 1]");
  if (!x1.is_subset_of(x) || !y1.is_subset_of(y)) throw std::invalid_argument("slices must be subsets of the pair");
  if (Rational(x1.count()) < eta * Rational(x.count()) || Rational(y1.count()) < eta * Rational(y.count()))
    throw std::invalid_argument("slices must keep at least an eta fraction of each side");

  SlicingResult out;
  out.epsilon_prime = max(epsilon / eta, Rational(2) * epsilon);
  out.input_verdict = is_regular_pair(g, x, y, epsilon, auto_mode(x, y), sampling);
  out.density = pair_density(g, x1, y1);
  out.density_ok = out.density >= d - epsilon;
  out.verdict = is_regular_pair(g, x1, y1, out.epsilon_prime, auto_mode(x1, y1), sampling);
  return out;
}

}  // namespace cfl
