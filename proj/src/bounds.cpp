#include "cfl/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cfl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::int64_t choose2(std::int64_t k) { return k * (k - 1) / 2; }

// log(sum exp(x_i)) without overflow.
double log_sum_exp(const std::vector<double>& xs) {
  double hi = kNegInf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == kNegInf) return kNegInf;
  double s = 0;
  double comp = 0;
  for (double x : xs) {
    double y = std::exp(x - hi) - comp;
    double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  return hi + std::log(s);
}

}  // namespace

double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return kNegInf;
  k = std::min(k, n - k);
  if (k <= 30) {
    double s = 0;
    for (std::int64_t i = 1; i <= k; ++i)
      s += std::log(static_cast<double>(n - k + i)) - std::log(static_cast<double>(i));
    return s;
  }
  return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
         std::lgamma(static_cast<double>(n - k) + 1);
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 c = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("binomial overflows 64 bits");
  }
  return static_cast<std::int64_t>(c);
}

double fkg_lower_bound(int n, int ell, double p) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("fkg_lower_bound: p must lie in [0, 1]");
  if (n < ell + 1) return 0;
  double q = std::pow(p, static_cast<double>(choose2(ell + 1)));
  if (q >= 1) return kNegInf;
  return std::exp(log_binomial(n, ell + 1)) * std::log1p(-q);
}

double JansonReport::upper_bound() const { return std::exp(log_upper_bound); }

JansonReport janson_bound(int a_size, int ell, double p) {
  if (ell < 2 || a_size < ell) throw std::invalid_argument("janson_bound needs a_size >= ell >= 2");
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("janson_bound: p must lie in [0, 1]");
  JansonReport rep;
  rep.a_size = a_size;
  rep.ell = ell;
  rep.p = p;
  const double logp = std::log(p);
  const double e_log = log_binomial(a_size, ell) + (p == 0 ? (choose2(ell) > 0 ? kNegInf : 0) : choose2(ell) * logp);
  rep.expected_x = std::exp(e_log);

  std::vector<double> terms;
  for (int s = 2; s <= ell - 1; ++s) {
    std::int64_t ex = 2 * choose2(ell) - choose2(s);
    double t = log_binomial(a_size, ell) + log_binomial(ell, s) + log_binomial(a_size - ell, ell - s);
    t += p == 0 ? kNegInf : static_cast<double>(ex) * logp;
    terms.push_back(t);
  }
  rep.delta = std::exp(log_sum_exp(terms));
  rep.log_upper_bound = std::min(0.0, -rep.expected_x + rep.delta / 2);
  return rep;
}

std::map<int, std::int64_t> janson_delta_polynomial(int a_size, int ell) {
  if (ell < 2 || a_size < ell) throw std::invalid_argument("janson_delta_polynomial needs a_size >= ell >= 2");
  std::map<int, std::int64_t> poly;
  for (int s = 2; s <= ell - 1; ++s) {
    std::int64_t c = binomial(a_size, ell);
    __int128 v = static_cast<__int128>(c) * binomial(ell, s);
    v *= binomial(a_size - ell, ell - s);
    if (v > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("delta coefficient overflows");
    if (v == 0) continue;
    poly[static_cast<int>(2 * choose2(ell) - choose2(s))] += static_cast<std::int64_t>(v);
  }
  return poly;
}

double janson_delta_display(int a_size, int ell, double p) {
  double e = janson_bound(a_size, ell, p).expected_x;
  double s = 0;
  for (int k = 2; k <= ell - 1; ++k)
    s += std::exp(log_binomial(ell, k) + log_binomial(a_size - ell, ell - k)) *
         std::pow(p, static_cast<double>(choose2(ell) - choose2(k)));
  return e * s;
}

double janson_delta_asymptotic(int a_size, int n, int ell, double gamma, double x) {
  double p = std::pow(static_cast<double>(n), -x);
  double e = janson_bound(a_size, ell, p).expected_x;
  double s = 0;
  for (int k = 2; k <= ell - 1; ++k)
    s += std::exp(log_binomial(ell, k)) *
         std::pow(static_cast<double>(n), (ell - k) * (1 - gamma - x * (ell + k - 1) / 2.0));
  return e * s;
}

DrcSlack drc_condition(int n, double avg_degree, int t, int r, double m, double a) {
  if (n < 1 || t < 1 || r < 1 || !(avg_degree > 0) || !(m > 0) || !(a >= 0))
    throw std::invalid_argument("drc_condition needs positive n, d, t, r, m and a >= 0");
  DrcSlack out;
  const double ln = std::log(static_cast<double>(n));
  out.log_gain = t * std::log(avg_degree) - (t - 1) * ln;
  out.log_loss = log_binomial(n, r) + t * (std::log(m) - ln);
  out.slack = std::exp(out.log_gain) - std::exp(out.log_loss) - a;
  return out;
}

Rational chi_cr(std::span<const int> parts) {
  if (parts.empty()) throw std::invalid_argument("chi_cr needs at least one part");
  std::int64_t r = 0;
  int sigma = parts[0];
  for (int p : parts) {
    if (p < 1) throw std::invalid_argument("chi_cr: parts must be positive");
    r += p;
    sigma = std::min(sigma, p);
  }
  const auto k = static_cast<std::int64_t>(parts.size());
  if (k == 1) throw std::domain_error("chi_cr is degenerate for a single part");
  return Rational((k - 1) * r, r - sigma);
}

Rational komlos_threshold(std::span<const int> parts) { return Rational(1) - Rational(1) / chi_cr(parts); }

DegreeThresholds degree_thresholds(int n, int r, int ell, const Rational& rho_star) {
  if (!(r > ell && ell >= 1)) throw std::invalid_argument("degree_thresholds needs r > ell >= 1");
  if (rho_star < Rational(0) || rho_star >= Rational(1))
    throw std::invalid_argument("rho_star must lie in [0, 1)");
  DegreeThresholds d;
  d.tiling_term = Rational(r - ell, r);
  d.cover_term = Rational(1) / (Rational(2) - rho_star);
  d.fraction = max(d.tiling_term, d.cover_term);
  d.degree = d.fraction * Rational(n);
  return d;
}

double alpha_growth_bound(double n, double c, double lambda) {
  if (!(n > 1)) throw std::invalid_argument("alpha_growth_bound needs n > 1");
  return std::pow(n, 1 - c * std::pow(std::log2(n), -lambda));
}

}  // namespace cfl
