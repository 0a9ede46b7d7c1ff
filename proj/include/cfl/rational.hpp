#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cfl {

/// Exact rational with 64-bit numerator/denominator, always normalized
/// (gcd 1, positive denominator). Intermediate products use 128-bit
/// arithmetic; results that do not fit throw std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Accepts "3", "-2/7", "0.125" and "1e-3"-free decimals.
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  /// Smallest integer >= value.
  std::int64_t ceil() const;
  /// Largest integer <= value.
  std::int64_t floor() const;
  /// Nearest integer, ties rounded up.
  std::int64_t round_half_up() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational max(const Rational& a, const Rational& b);
Rational min(const Rational& a, const Rational& b);
Rational abs(const Rational& a);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace cfl
