#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace dsd {

using int128 = __int128;

/// Exact non-negative fraction used for density bounds and stop thresholds.
/// Comparisons widen to 128 bits, so numerators and denominators may use the
/// full int64 range.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (den <= 0) throw std::invalid_argument("Rational: denominator must be positive");
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return static_cast<int128>(a.num) * b.den == static_cast<int128>(b.num) * a.den;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int128 lhs = static_cast<int128>(a.num) * b.den;
    int128 rhs = static_cast<int128>(b.num) * a.den;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

/// Sign of (a - b) - c computed exactly for small denominators.
inline int compare_difference(const Rational& a, const Rational& b, const Rational& c) {
  // (a.num*b.den - b.num*a.den) * c.den  vs  c.num * a.den * b.den
  int128 diff = static_cast<int128>(a.num) * b.den - static_cast<int128>(b.num) * a.den;
  int128 lhs = diff * c.den;
  int128 rhs = static_cast<int128>(c.num) * a.den * b.den;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

/// Largest k with k/den <= value (value >= 0).
inline std::int64_t floor_on_grid(const Rational& value, std::int64_t den) {
  int128 scaled = static_cast<int128>(value.num) * den;
  return static_cast<std::int64_t>(scaled / value.den);
}

/// Smallest k with k/den >= value (value >= 0).
inline std::int64_t ceil_on_grid(const Rational& value, std::int64_t den) {
  int128 scaled = static_cast<int128>(value.num) * den;
  return static_cast<std::int64_t>((scaled + value.den - 1) / value.den);
}

}  // namespace dsd
