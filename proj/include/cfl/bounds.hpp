#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "cfl/rational.hpp"

namespace cfl {

/// log C(n, k); -inf when k < 0 or k > n.
double log_binomial(std::int64_t n, std::int64_t k);
/// C(n, k) exactly; throws std::overflow_error past 64 bits.
std::int64_t binomial(std::int64_t n, std::int64_t k);

/// Log of the product lower bound on P[G(n,p) is K_{ell+1}-free]:
/// C(n, ell+1) * log(1 - p^{C(ell+1,2)}). -inf when p == 1 and n >= ell+1.
double fkg_lower_bound(int n, int ell, double p);

/// X counts copies of K_ell inside a fixed a_size-set of G(n, p).
struct JansonReport {
  int a_size = 0;
  int ell = 0;
  double p = 0;
  double expected_x = 0;
  double delta = 0;            // ordered pairs S != S' with |S ∩ S'| >= 2
  double log_upper_bound = 0;  // min(0, -E(X) + delta/2)

  double upper_bound() const;
};

JansonReport janson_bound(int a_size, int ell, double p);

/// delta as a polynomial in p: exponent -> number of ordered pairs (S, S') of
/// ell-subsets of an a_size-set with 2 <= |S ∩ S'| <= ell-1 whose union spans
/// that many pairs.
std::map<int, std::int64_t> janson_delta_polynomial(int a_size, int ell);

/// E(X) * sum_s C(ell,s) C(a-ell, ell-s) p^{C(ell,2)-C(s,2)}, the displayed
/// form of delta; equal to the exact value.
double janson_delta_display(int a_size, int ell, double p);

/// The power-of-n estimate of delta for a <= n^{1-gamma}, p = n^{-x}:
/// E(X) * sum_s C(ell,s) n^{(ell-s)(1-gamma-x(ell+s-1)/2)}.
double janson_delta_asymptotic(int a_size, int n, int ell, double gamma, double x);

struct DrcSlack {
  double slack = 0;       // d^t/n^{t-1} - C(n,r)(m/n)^t - a
  double log_gain = 0;    // log(d^t / n^{t-1})
  double log_loss = 0;    // log(C(n,r) (m/n)^t)
  bool holds() const { return slack >= 0; }
};

DrcSlack drc_condition(int n, double avg_degree, int t, int r, double m, double a);

/// (k-1) r / (r - sigma) for the complete k-partite graph with these parts.
/// Throws std::domain_error when k == 1.
Rational chi_cr(std::span<const int> part_sizes);
/// 1 - 1/chi_cr.
Rational komlos_threshold(std::span<const int> part_sizes);

struct DegreeThresholds {
  Rational tiling_term;  // (r-ell)/r
  Rational cover_term;   // 1/(2 - rho_star)
  Rational fraction;     // max of the two
  Rational degree;       // fraction * n
};

/// rho_star must lie in [0, 1).
DegreeThresholds degree_thresholds(int n, int r, int ell, const Rational& rho_star);

/// n^{1 - c * log2(n)^{-lambda}}.
double alpha_growth_bound(double n, double c, double lambda);

}  // namespace cfl
