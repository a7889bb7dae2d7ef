#include "cantor/units/pell.hpp"

#include <cmath>

#include "cantor/error.hpp"

namespace cantor {

namespace {

struct QuadraticValue {
  // x + y sqrt D
  Rational x;
  Rational y;
};

QuadraticValue times(const QuadraticValue& a, const QuadraticValue& b, const BigInt& D) {
  return {a.x * b.x + a.y * b.y * Rational(D), a.x * b.y + a.y * b.x};
}

BigInt floor_quotient(const BigInt& P, const BigInt& Q, const BigInt& s) {
  // floor((P + sqrt D) / Q) with s = floor(sqrt D); sqrt D is irrational.
  BigInt q;
  if (sgn(Q) > 0) {
    BigInt n = P + s;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), Q.get_mpz_t());
    return q;
  }
  BigInt n = P + s;
  BigInt aq = -Q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), aq.get_mpz_t());
  return -q - 1;
}

bool square_root_i64(std::int64_t v, std::int64_t& root) {
  if (v < 0) return false;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  root = r;
  return r * r == v;
}

}  // namespace

bool is_quadratic_discriminant(const BigInt& D) {
  if (D < 5 || is_perfect_square(D)) return false;
  BigInt r = D % 4;
  return r == 0 || r == 1;
}

PellSolution pell_min_solution(const BigInt& D) {
  if (!is_quadratic_discriminant(D)) fail_precondition("not a discriminant", D.get_str());
  BigInt s = isqrt(D);
  // omega = (P + sqrt D)/Q: (1 + sqrt D)/2 for odd D, sqrt(D)/2 for even D.
  BigInt P = (D % 2 == 1) ? 1 : 0;
  BigInt Q = 2;
  auto step = [&](BigInt& p, BigInt& q) {
    BigInt a = floor_quotient(p, q, s);
    BigInt np = a * q - p;
    BigInt nq = (D - np * np) / q;
    p = np;
    q = nq;
  };
  // One step lands in the purely periodic part of the expansion.
  step(P, Q);
  const BigInt P0 = P, Q0 = Q;
  QuadraticValue eps{1, 0};
  do {
    eps = times(eps, {make_rational(P, Q), make_rational(1, Q)}, D);
    step(P, Q);
  } while (P != P0 || Q != Q0);

  if (sgn(eps.x) < 0) eps = {-eps.x, -eps.y};
  if (sgn(eps.y) < 0) {  // the conjugate; take its inverse-sign partner above 1
    eps.y = -eps.y;
  }
  Rational t2 = 2 * eps.x;
  Rational u2 = 2 * eps.y;
  if (t2.get_den() != 1 || u2.get_den() != 1) fail_invariant("pell unit not half-integral", D.get_str());
  PellSolution out;
  out.D = D;
  out.t = t2.get_num();
  out.u = u2.get_num();
  BigInt lhs = out.t * out.t - D * out.u * out.u;
  if (lhs == 4) {
    out.sign = 4;
  } else if (lhs == -4) {
    out.sign = -4;
  } else {
    fail_invariant("pell identity failed", D.get_str());
  }
  auto [sq, m] = split_square(D);
  auto field = NumberField::make_largest_root({BigInt(-m), BigInt(0), BigInt(1)});
  AlgebraicReal sqrtD = AlgebraicReal::generator(field) * AlgebraicReal(Rational(sq));
  out.epsilon0 = (AlgebraicReal(Rational(out.t)) + AlgebraicReal(Rational(out.u)) * sqrtD) / AlgebraicReal(2);
  ensure(compare(out.epsilon0, AlgebraicReal(1)) == std::strong_ordering::greater, "pell unit exceeds 1");
  return out;
}

PellCrossCheck pell_cross_check(const BigInt& D, std::int64_t search_bound) {
  PellCrossCheck r;
  r.cf = pell_min_solution(D);
  r.search_bound = search_bound;
  if (!D.fits_slong_p() || D.get_si() > 4000000 || search_bound > 1000000) {
    fail_precondition("search range too large for 64-bit brute force");
  }
  std::int64_t d = D.get_si();
  for (std::int64_t u = 1; u <= search_bound; ++u) {
    std::int64_t du2 = d * u * u;
    std::int64_t t = 0;
    if (du2 > 4 && square_root_i64(du2 - 4, t)) {
      r.brute = {t, u};
      r.brute_sign = -4;
      break;
    }
    if (square_root_i64(du2 + 4, t)) {
      r.brute = {t, u};
      r.brute_sign = 4;
      break;
    }
  }
  if (r.brute) {
    r.method = "exhaustive";
    r.agree = r.cf.t == r.brute->first && r.cf.u == r.brute->second && r.cf.sign == r.brute_sign;
    return r;
  }
  // Any solution with u > U has (t + u sqrt D)/2 > L = (U+1) sqrt(D)/2, so a unit
  // below L^2 that is not found by the search cannot be a proper power.
  r.method = "exhaustive+power-bound";
  Rational L2 = Rational(BigInt(search_bound + 1) * BigInt(search_bound + 1) * D) / 4;
  AlgebraicReal eps = r.cf.epsilon0;
  r.agree = r.cf.u > search_bound && compare(eps, AlgebraicReal(L2)) == std::strong_ordering::less;
  return r;
}

}  // namespace cantor
