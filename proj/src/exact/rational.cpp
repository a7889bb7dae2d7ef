#include "cantor/exact/rational.hpp"

#include <algorithm>

namespace cantor {

BigInt floor_of(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

BigInt ceil_of(const Rational& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

BigInt isqrt(const BigInt& n) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const BigInt& n) {
  return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (sgn(r) < 0) return std::nullopt;
  if (!is_perfect_square(r.get_num()) || !is_perfect_square(r.get_den())) return std::nullopt;
  return make_rational(isqrt(r.get_num()), isqrt(r.get_den()));
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::pair<BigInt, BigInt> split_square(const BigInt& n) {
  BigInt m = abs(n);
  BigInt s = 1;
  BigInt rest = 1;
  // The inputs are radicands typed by a user, so trial division is enough.
  for (BigInt d = 2; d * d <= m; ++d) {
    unsigned e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) s *= d;
    if (e % 2 == 1) rest *= d;
  }
  rest *= m;
  if (sgn(n) < 0) rest = -rest;
  return {s, rest};
}

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
  return {*mn, *mx};
}

RationalInterval operator*(const Rational& c, const RationalInterval& a) {
  if (sgn(c) >= 0) return {c * a.lo, c * a.hi};
  return {c * a.hi, c * a.lo};
}

}  // namespace cantor
