#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cantor/exact/polynomial.hpp"
#include "cantor/exact/rational.hpp"

namespace cantor {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// A real embedding of Q(alpha): the monic irreducible integer polynomial of
/// alpha (degree 2 or 3) together with an isolating interval of the chosen real
/// root. Coordinates of elements are taken in the power basis 1, alpha, alpha^2.
///
/// Two fields are the same iff they have the same polynomial and the same root.
class NumberField {
 public:
  /// `monic_coeffs` lists c_0..c_d with c_d = 1. `real_root_index` counts the
  /// real roots in ascending order.
  static FieldPtr make(std::vector<BigInt> monic_coeffs, std::size_t real_root_index);
  /// The root of the polynomial lying in `hint`; exactly one must.
  static FieldPtr make_near(std::vector<BigInt> monic_coeffs, const RationalInterval& hint);
  static FieldPtr make_largest_root(std::vector<BigInt> monic_coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  const Polynomial& polynomial() const { return poly_; }
  std::size_t root_index() const { return root_index_; }
  std::size_t real_root_count() const { return real_root_count_; }

  /// Isolating interval, refined at construction to width below 2^-64.
  const RationalInterval& isolating_interval() const { return interval_; }
  /// One bisection step; the result still brackets the root.
  RationalInterval bisect(const RationalInterval& iv) const;

  /// The field with the same polynomial but another real root.
  FieldPtr conjugate(std::size_t real_root_index) const;

  /// alpha^k in the power basis for 0 <= k <= 2d-2.
  const std::vector<std::vector<Rational>>& power_table() const { return powers_; }

  /// Polynomial discriminant of the defining polynomial.
  BigInt polynomial_discriminant() const;

  std::string to_string() const { return poly_.to_string('x'); }

  friend bool operator==(const NumberField& a, const NumberField& b) {
    return a.coeffs_ == b.coeffs_ && a.root_index_ == b.root_index_;
  }

 private:
  NumberField() = default;

  std::vector<BigInt> coeffs_;
  Polynomial poly_;
  std::size_t root_index_ = 0;
  std::size_t real_root_count_ = 0;
  RationalInterval interval_;
  std::vector<std::vector<Rational>> powers_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

}  // namespace cantor
