#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfl/graph.hpp"
#include "cfl/rational.hpp"
#include "cfl/regularity.hpp"
#include "cfl/tiling.hpp"

namespace cfl {

/// Both G[A] and G[A ∪ S] have K_r-factors.
struct AbsorberCertificate {
  VertexSet s;
  VertexSet a;
  int t = 0;
  CliqueTiling factor_of_a;
  CliqueTiling factor_of_a_union_s;
};

/// Both {u} ∪ S and {v} ∪ S have K_r-factors.
struct ReachableCertificate {
  Vertex u = 0;
  Vertex v = 0;
  VertexSet s;
  CliqueTiling factor_u;
  CliqueTiling factor_v;
};

template <typename Certificate>
struct Certified {
  std::optional<Certificate> certificate;
  std::string reason;  // "ok" or why no certificate was issued

  explicit operator bool() const { return certificate.has_value(); }
};

/// Reasons: "size", "overlap", "divisibility", "no factor of A",
/// "no factor of A+S", "node budget".
Certified<AbsorberCertificate> certify_absorber(const Graph& g, const VertexSet& s, const VertexSet& a, int r, int t,
                                                std::int64_t node_budget = kDefaultNodeBudget);
/// Reasons: "same vertex", "overlap", "divisibility", "no factor with u",
/// "no factor with v", "node budget".
Certified<ReachableCertificate> certify_reachable(const Graph& g, Vertex u, Vertex v, const VertexSet& s, int r,
                                                  std::int64_t node_budget = kDefaultNodeBudget);

/// Independent re-checks through verify_factor.
bool verify_absorber(const Graph& g, const AbsorberCertificate& c, int r);
bool verify_reachable(const Graph& g, const ReachableCertificate& c, int r);

struct ReachableSearch {
  std::vector<ReachableCertificate> sets;  // pairwise disjoint
  bool candidates_exhausted = true;        // false if candidate_budget stopped the scan
  std::int64_t candidates_examined = 0;
};

/// Greedy first-fit: sizes r-1, 2r-1, ..., rt-1 in turn, candidates of each
/// size in lexicographic order, each kept if disjoint from those already
/// taken. Candidates are drawn from `within` (all of G by default) minus u, v.
/// limit == 0 means no limit.
ReachableSearch find_disjoint_reachable_sets(const Graph& g, Vertex u, Vertex v, int r, int t, int limit,
                                             std::optional<VertexSet> within = std::nullopt,
                                             std::int64_t candidate_budget = 2'000'000);

struct AbsorbingVerdict {
  RegularityMode mode = RegularityMode::kExhaustive;
  bool absorbing = true;             // sampled: no counterexample found
  std::optional<VertexSet> witness;  // R with no factor of G[A ∪ R]
  int max_leftover = 0;              // floor(xi n)
  std::int64_t sets_checked = 0;
  bool budget_hit = false;           // some factor query was indeterminate
};

inline constexpr int kAbsorbingExhaustiveMaxN = 16;
inline constexpr int kAbsorbingExhaustiveMaxLeftover = 4;

/// Every R ⊆ V(G) \ A with |R| <= xi n and r | |A ∪ R| leaves G[A ∪ R]
/// with a K_r-factor. Exhaustive mode needs n <= 16 and xi n <= 4.
AbsorbingVerdict certify_xi_absorbing(const Graph& g, const VertexSet& a, int r, const Rational& xi,
                                      RegularityMode mode, const SamplingOptions& sampling = {});

struct ClosednessReport {
  std::int64_t pairs_examined = 0;
  bool all_pairs = true;
  int min_count = 0;
  double median_count = 0;
  Rational implied_beta;  // min_count / |U|
  bool inner = false;
  std::vector<std::pair<Vertex, Vertex>> weakest_pairs;  // pairs attaining min_count
};

/// Greedy disjoint reachable counts over pairs of U (all pairs when at most
/// pair_budget, else pair_budget sampled pairs). The inner variant draws the
/// reachable sets from U only.
ClosednessReport closedness_report(const Graph& g, const VertexSet& u, int r, int t, std::int64_t pair_budget,
                                   bool inner = false, std::uint64_t seed = 0, int limit = 0);

/// The reachable-set gadget for a pair u, v: cliques S and T on r+1 vertices
/// sharing w, an (r-1)-clique C complete to u and to u_i ∈ S - w, and an
/// (r-1)-clique D complete to v and to v_i ∈ T - w. E = S ∪ T ∪ C ∪ D has
/// 4r - 1 vertices.
struct ReachableGadget {
  Graph graph;
  Vertex u = 0;
  Vertex v = 1;
  Vertex w = 0;
  Vertex u_i = 0;
  Vertex v_i = 0;
  VertexSet s_clique;
  VertexSet t_clique;
  VertexSet c;
  VertexSet d;
  VertexSet e;
  /// {u} ∪ C, S - w, T - v_i, {v_i} ∪ D: a K_r-factor of E ∪ {u}.
  std::array<VertexSet, 4> u_cliques;
  /// {v} ∪ D, T - w, S - u_i, {u_i} ∪ C: a K_r-factor of E ∪ {v}.
  std::array<VertexSet, 4> v_cliques;
};

ReachableGadget build_reachable_gadget(int r);

}  // namespace cfl
