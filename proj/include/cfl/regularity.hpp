#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfl/graph.hpp"
#include "cfl/rational.hpp"

namespace cfl {

/// e(X, Y) / (|X| |Y|). X and Y must be disjoint and nonempty.
Rational pair_density(const Graph& g, const VertexSet& x, const VertexSet& y);

enum class RegularityMode { kExhaustive, kSampled };
const char* to_string(RegularityMode m);

inline constexpr int kExhaustiveRegularityMax = 14;

struct SamplingOptions {
  std::int64_t samples = 2000;
  std::uint64_t seed = 0;
};

/// Exhaustive verdicts are exact. Sampled verdicts are one-sided: `regular`
/// then means no violation was found in `samples_used` trials.
struct RegularityVerdict {
  Rational epsilon;
  RegularityMode mode = RegularityMode::kExhaustive;
  bool regular = true;
  Rational density;
  std::optional<std::pair<VertexSet, VertexSet>> witness;  // (X', Y') with |d(X',Y') - d(X,Y)| > eps
  std::optional<Vertex> failing_vertex;                     // super-regularity degree audit
  std::int64_t samples_used = 0;

  bool certified() const { return regular && mode == RegularityMode::kExhaustive; }
};

/// Exhaustive mode enumerates every qualifying X' and, for each size of Y',
/// only the extreme choices (largest and smallest degree sums into X'), which
/// decides the definition exactly. The witness is the first violation in
/// increasing bitmask order of X' (bit i = i-th smallest member of X).
RegularityVerdict is_regular_pair(const Graph& g, const VertexSet& x, const VertexSet& y, const Rational& epsilon,
                                  RegularityMode mode = RegularityMode::kExhaustive,
                                  const SamplingOptions& sampling = {});

/// Regularity plus d_Y(x) >= d|Y| on X and d_X(y) >= d|X| on Y.
RegularityVerdict is_super_regular(const Graph& g, const VertexSet& x, const VertexSet& y, const Rational& epsilon,
                                   const Rational& d, RegularityMode mode = RegularityMode::kExhaustive,
                                   const SamplingOptions& sampling = {});

/// Exhaustive when both sides fit, sampled otherwise.
RegularityMode auto_mode(const VertexSet& x, const VertexSet& y);

struct SuperRegularization {
  std::vector<VertexSet> refined;
  std::vector<std::vector<Vertex>> removed;
  std::vector<std::vector<Rational>> densities;  // d_ij of the input clusters
  /// Input pairs (i < j) checked for eps-regularity; refined pairs re-checked
  /// at (2 eps, d_ij - (t+1) eps). Indexed by the pair order (0,1), (0,2), ...
  std::vector<RegularityVerdict> input_verdicts;
  std::vector<RegularityVerdict> output_verdicts;
  bool inputs_regular = true;
  bool sizes_ok = true;  // |V'_i| >= (1 - t eps)|V_i| for every i
  bool outputs_super_regular = true;
};

/// Drops every x in V_i with d_{V_j}(x) < (d_ij - eps)|V_j| for some j != i.
/// Needs t < 1/(2 eps) for t + 1 clusters; throws std::invalid_argument otherwise.
SuperRegularization make_super_regular(const Graph& g, const std::vector<VertexSet>& clusters,
                                       const Rational& epsilon, const SamplingOptions& sampling = {});

struct Partition {
  VertexSet exceptional;
  std::vector<VertexSet> clusters;

  int cluster_size() const { return clusters.empty() ? 0 : clusters.front().count(); }
  /// Throws std::invalid_argument unless clusters are disjoint, equal-sized
  /// and together with V_0 cover V(G).
  void validate(const Graph& g) const;
  std::vector<std::vector<Rational>> densities(const Graph& g) const;
};

/// "k m n0", then k lines of m ids, then the V_0 line (possibly empty).
Partition parse_partition(std::string_view text, int n);
std::string serialize_partition(const Partition& p);

struct ReducedGraph {
  int k = 0;
  Rational d;
  Graph graph;  // cluster i -> vertex i
  std::vector<std::vector<Rational>> weights;
  int min_degree = 0;
};

ReducedGraph reduced_graph(const Graph& g, const Partition& p, const Rational& d);

struct SlicingResult {
  Rational epsilon_prime;  // max(eps/eta, 2 eps)
  Rational density;
  bool density_ok = false;  // d(X_1, Y_1) >= d - eps
  RegularityVerdict verdict;
  RegularityVerdict input_verdict;

  bool holds() const { return density_ok && verdict.regular; }
};

/// Checks the slice (X_1, Y_1) of a regular pair. Throws std::invalid_argument
/// unless X_1 ⊆ X, Y_1 ⊆ Y, |X_1| >= eta|X| and |Y_1| >= eta|Y|.
SlicingResult slicing_check(const Graph& g, const VertexSet& x, const VertexSet& y, const Rational& epsilon,
                            const Rational& d, const Rational& eta, const VertexSet& x1, const VertexSet& y1,
                            const SamplingOptions& sampling = {});

}  // namespace cfl
