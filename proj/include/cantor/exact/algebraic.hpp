#pragma once

#include <compare>
#include <string>
#include <vector>

#include "cantor/exact/matrix.hpp"
#include "cantor/exact/number_field.hpp"
#include "cantor/exact/polynomial.hpp"

namespace cantor {

/// Exact real number of degree at most 3: either a plain rational or an element
/// of a NumberField in power-basis coordinates. Values are immutable.
///
/// Mixed arithmetic promotes plain rationals into the other operand's field.
/// Combining elements of two different fields is an error ("field mismatch")
/// unless one of them happens to be rational-valued.
class AlgebraicReal {
 public:
  AlgebraicReal() : coords_{Rational(0)} {}
  AlgebraicReal(long v) : coords_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
  AlgebraicReal(const Rational& v) : coords_{v} {}  // NOLINT(google-explicit-constructor)
  AlgebraicReal(FieldPtr field, std::vector<Rational> coords);

  /// The field generator alpha.
  static AlgebraicReal generator(const FieldPtr& field);

  const FieldPtr& field() const { return field_; }
  bool has_field() const { return static_cast<bool>(field_); }
  int degree() const { return field_ ? field_->degree() : 1; }
  /// Power-basis coordinates (length = degree()).
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_value() const;

  /// Same value viewed inside `field` (which must be this field, or this value rational).
  AlgebraicReal in_field(const FieldPtr& field) const;

  int sign() const;
  AlgebraicReal inverse() const;
  AlgebraicReal pow(long exponent) const;
  BigInt floor() const;
  /// Fractional part in [0, 1).
  AlgebraicReal frac() const { return *this - AlgebraicReal(Rational(floor())); }

  /// Matrix of multiplication by this element acting on row vectors of coordinates.
  RationalMatrix multiplication_matrix() const;
  /// Product of all conjugates, i.e. det of the multiplication matrix.
  Rational norm() const;
  Rational trace() const;
  Polynomial characteristic_polynomial() const;
  /// Monic minimal polynomial over Q.
  Polynomial minimal_polynomial() const;

  /// An interval containing the value, no wider than `max_width`.
  RationalInterval enclosure(const Rational& max_width) const;
  /// Decimal rounded to `digits` places after the point (correct to one ulp).
  std::string approximate(unsigned digits) const;
  double to_double() const;

  /// "c0+c1*a+c2*a^2" style rendering, `a` standing for the generator.
  std::string to_string() const;

  friend AlgebraicReal operator+(const AlgebraicReal& a, const AlgebraicReal& b);
  friend AlgebraicReal operator-(const AlgebraicReal& a, const AlgebraicReal& b);
  friend AlgebraicReal operator*(const AlgebraicReal& a, const AlgebraicReal& b);
  friend AlgebraicReal operator/(const AlgebraicReal& a, const AlgebraicReal& b);
  AlgebraicReal operator-() const;

  AlgebraicReal& operator+=(const AlgebraicReal& o) { return *this = *this + o; }
  AlgebraicReal& operator-=(const AlgebraicReal& o) { return *this = *this - o; }
  AlgebraicReal& operator*=(const AlgebraicReal& o) { return *this = *this * o; }

  friend bool operator==(const AlgebraicReal& a, const AlgebraicReal& b);
  friend std::strong_ordering operator<=>(const AlgebraicReal& a, const AlgebraicReal& b);

 private:
  FieldPtr field_;
  std::vector<Rational> coords_;
};

/// Exact three-way comparison; throws "field mismatch" for incompatible fields.
std::strong_ordering compare(const AlgebraicReal& a, const AlgebraicReal& b);

/// The field shared by `a` and `b` (null if both are plain rationals).
FieldPtr common_field(const AlgebraicReal& a, const AlgebraicReal& b);

}  // namespace cantor
