#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>

#include "cfl/bounds.hpp"
#include "cfl/generators.hpp"
#include "cfl/cliques.hpp"
#include "oracles.hpp"

using namespace cfl;

namespace {

// Ordered pairs of distinct ell-subsets of [a] meeting in >= 2 vertices,
// keyed by the number of edges in the union of the two cliques.
std::map<int, std::int64_t> delta_by_pairs(int a, int ell) {
  std::vector<oracle::Mask> sets;
  for (oracle::Mask m = 0; m < (oracle::Mask{1} << a); ++m)
    if (std::popcount(m) == ell) sets.push_back(m);
  std::map<int, std::int64_t> out;
  auto c2 = [](int k) { return k * (k - 1) / 2; };
  for (auto s : sets)
    for (auto t : sets) {
      int i = std::popcount(s & t);
      if (s == t || i < 2) continue;
      out[2 * c2(ell) - c2(i)] += 1;
    }
  return out;
}

}  // namespace

TEST_CASE("binomials") {
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(60, 30) == 118264581564861424LL);
  CHECK_THROWS_AS(binomial(100, 50), std::overflow_error);
  CHECK(log_binomial(100, 50) == doctest::Approx(std::log(1.0089134454556419e29)).epsilon(1e-12));
  CHECK(std::isinf(log_binomial(3, 4)));
}

TEST_CASE("fkg_lower_bound") {
  double lb = fkg_lower_bound(5, 2, 0.5);
  CHECK(lb == doctest::Approx(10 * std::log(0.875)).epsilon(1e-14));
  CHECK(std::exp(lb) == doctest::Approx(0.26307).epsilon(1e-4));
  CHECK(fkg_lower_bound(9, 3, 0.0) == 0.0);
  CHECK(fkg_lower_bound(3, 3, 0.7) == 0.0);
  CHECK(std::isinf(fkg_lower_bound(5, 2, 1.0)));
  CHECK_THROWS(fkg_lower_bound(5, 2, 1.5));

  for (int n = 4; n <= 12; ++n)
    for (double p : {0.1, 0.3, 0.7}) {
      double direct = std::pow(1 - std::pow(p, 6.0), static_cast<double>(binomial(n, 4)));
      CHECK(std::exp(fkg_lower_bound(n, 3, p)) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("janson_bound examples") {
  auto j = janson_bound(5, 3, 0.5);
  CHECK(j.expected_x == doctest::Approx(1.25).epsilon(1e-14));
  // s = 2: 10 * C(3,2) * C(2,1) * 2^-(6-1)
  CHECK(j.delta == doctest::Approx(60.0 / 32).epsilon(1e-14));
  CHECK(j.log_upper_bound == doctest::Approx(-1.25 + 30.0 / 32).epsilon(1e-14));

  auto two = janson_bound(7, 2, 0.3);
  CHECK(two.delta == 0.0);
  CHECK(two.upper_bound() == doctest::Approx(std::exp(-21 * 0.3)).epsilon(1e-13));

  auto single = janson_bound(4, 4, 1.0);
  CHECK(single.expected_x == 1.0);
  CHECK(single.delta == 0.0);
  CHECK(single.upper_bound() == doctest::Approx(std::exp(-1.0)));

  auto big = janson_bound(9, 4, 0.9);
  CHECK(big.upper_bound() <= 1.0);
  CHECK(big.upper_bound() >= 0.0);
  CHECK(big.delta >= 0.0);
}

TEST_CASE("delta polynomial matches the ordered pair count (a <= 9)") {
  for (int a = 2; a <= 9; ++a)
    for (int ell = 2; ell <= a; ++ell) CHECK(janson_delta_polynomial(a, ell) == delta_by_pairs(a, ell));
}

TEST_CASE("delta in log space matches direct evaluation") {
  for (int a = 3; a <= 12; ++a)
    for (int ell = 3; ell <= std::min(a, 6); ++ell)
      for (double p : {0.2, 0.5, 0.8}) {
        double direct = 0;
        for (auto [ex, count] : janson_delta_polynomial(a, ell))
          direct += static_cast<double>(count) * std::pow(p, static_cast<double>(ex));
        CHECK(janson_bound(a, ell, p).delta == doctest::Approx(direct).epsilon(1e-12));
        CHECK(janson_delta_display(a, ell, p) == doctest::Approx(direct).epsilon(1e-12));
      }
}

TEST_CASE("power-of-n delta estimate dominates the exact value") {
  for (int n : {50, 200, 1000})
    for (int ell = 3; ell <= 5; ++ell) {
      double gamma = 0.5 * (ell - 1) / static_cast<double>(ell * ell + 2 * ell);
      double x = (2 - gamma) / (ell + 1);
      int a = static_cast<int>(std::floor(std::pow(n, 1 - gamma)));
      double p = std::pow(static_cast<double>(n), -x);
      CHECK(janson_delta_asymptotic(a, n, ell, gamma, x) >= janson_bound(a, ell, p).delta * (1 - 1e-12));
    }
}

TEST_CASE("drc_condition") {
  auto s = drc_condition(100, 50, 2, 2, 5, 12);
  CHECK(s.slack == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(s.holds());
  CHECK(drc_condition(100, 50, 1, 2, 5, 12).slack == doctest::Approx(50 - 4950 * 0.05 - 12).epsilon(1e-12));
  CHECK(drc_condition(100, 50, 2, 2, 100, 12).slack == doctest::Approx(25 - 4950 - 12).epsilon(1e-12));
  CHECK_FALSE(drc_condition(100, 50, 2, 2, 100, 12).holds());
  CHECK_THROWS(drc_condition(100, 50, 0, 2, 5, 12));
}

TEST_CASE("critical chromatic number and thresholds") {
  std::vector<int> p122{1, 2, 2};
  CHECK(chi_cr(p122) == Rational(5, 2));
  CHECK(komlos_threshold(p122) == Rational(3, 5));
  std::vector<int> k333{3, 3, 3};
  CHECK(chi_cr(k333) == Rational(3));
  for (int r = 2; r <= 12; ++r) {
    std::vector<int> ones(static_cast<std::size_t>(r), 1);
    CHECK(chi_cr(ones) == Rational(r));
  }
  std::vector<int> k3{1, 1, 1};
  CHECK(komlos_threshold(k3) == Rational(2, 3));
  std::vector<int> ll{4, 4};
  CHECK(komlos_threshold(ll) == Rational(1, 2));
  std::vector<int> one{5};
  CHECK_THROWS_AS(chi_cr(one), std::domain_error);

  for (int ell = 2; ell <= 6; ++ell) CHECK(degree_thresholds(30, ell + 1, ell, Rational(0)).fraction == Rational(1, 2));
  auto d = degree_thresholds(40, 4, 2, Rational(0));
  CHECK(d.tiling_term == Rational(1, 2));
  CHECK(d.cover_term == Rational(1, 2));
  CHECK(d.degree == Rational(20));
  CHECK(degree_thresholds(40, 4, 2, Rational(1, 2)).fraction == Rational(2, 3));
  CHECK_NOTHROW(degree_thresholds(40, 4, 2, Rational::parse("0.999")));
  CHECK_THROWS(degree_thresholds(40, 4, 2, Rational(1)));
}

TEST_CASE("alpha_growth_bound") {
  CHECK(alpha_growth_bound(1024, 1, 1) == doctest::Approx(std::pow(1024.0, 0.9)).epsilon(1e-13));
  CHECK(alpha_growth_bound(256, 0, 0.5) == doctest::Approx(256.0));
  CHECK(alpha_growth_bound(1 << 16, 2, 0.5) < std::pow(65536.0, 0.6));
}

TEST_CASE("Monte Carlo agrees directionally with both bounds (small sample)") {
  const int samples = 4000;
  for (double p : {0.3, 0.5}) {
    int free4 = 0;
    int free3 = 0;
    for (int i = 0; i < samples; ++i) {
      Graph g = random_gnp(8, p, 1000 + static_cast<std::uint64_t>(i));
      free4 += contains_clique(g, 4) ? 0 : 1;
      free3 += oracle::mask_contains_clique(g, 0x3f, 3) ? 0 : 1;
    }
    auto se = [&](double f) { return std::sqrt(std::max(f * (1 - f), 1.0 / samples) / samples); };
    double f4 = static_cast<double>(free4) / samples;
    double f3 = static_cast<double>(free3) / samples;
    CHECK(f4 >= std::exp(fkg_lower_bound(8, 3, p)) - 4 * se(f4));
    CHECK(f3 <= janson_bound(6, 3, p).upper_bound() + 4 * se(f3));
  }
}
