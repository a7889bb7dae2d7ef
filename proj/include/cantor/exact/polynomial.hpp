#pragma once

#include <string>
#include <vector>

#include "cantor/exact/rational.hpp"

namespace cantor {

/// Dense univariate polynomial over Q, coefficients stored low degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  static Polynomial from_integers(const std::vector<BigInt>& coeffs);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(int i) const;
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  RationalInterval operator()(const RationalInterval& x) const;

  Polynomial derivative() const;
  Polynomial monic() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  /// Euclidean division; `divisor` must be nonzero.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& dividend, const Polynomial& divisor);

  /// Number of distinct real roots in the half-open interval (a, b], via Sturm's theorem.
  int count_roots(const Rational& a, const Rational& b) const;

  /// Disjoint isolating intervals of the real roots, sorted ascending. Square-free input only.
  std::vector<RationalInterval> isolate_real_roots() const;

  /// Human form such as "x^3+x^2-2*x-1".
  std::string to_string(char var = 'x') const;

 private:
  void trim();
  std::vector<Polynomial> sturm_sequence() const;

  std::vector<Rational> coeffs_;
};

/// Whether an integer monic polynomial of degree 2 or 3 is irreducible over Q
/// (for these degrees, iff it has no rational root, and rational roots of a
/// monic integer polynomial are integer divisors of the constant term).
bool irreducible_low_degree(const std::vector<BigInt>& monic_coeffs);

}  // namespace cantor
