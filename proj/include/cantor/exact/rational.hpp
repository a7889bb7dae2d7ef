#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cantor {

using BigInt = mpz_class;
/// Always kept canonical: gcd(num, den) = 1 and den > 0.
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt floor_of(const Rational& r);
BigInt ceil_of(const Rational& r);

/// "p/q" or "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Exact square root of a non-negative rational, if it has one.
std::optional<Rational> rational_sqrt(const Rational& r);

BigInt isqrt(const BigInt& n);
bool is_perfect_square(const BigInt& n);

bool is_prime(std::uint64_t n);
/// Trial-division factorisation; adequate for the small bases used here.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// Squarefree decomposition n = s^2 * m with m squarefree (sign carried by m).
std::pair<BigInt, BigInt> split_square(const BigInt& n);

/// Closed rational interval [lo, hi].
struct RationalInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
};

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
RationalInterval operator*(const Rational& c, const RationalInterval& a);

}  // namespace cantor
