#include "cantor/exact/algebraic.hpp"

#include <cmath>
#include <sstream>

#include "cantor/error.hpp"

namespace cantor {

namespace {

Rational round_half_away(const Rational& x) {
  Rational half = make_rational(1, 2);
  if (sgn(x) >= 0) return Rational(floor_of(x + half));
  return Rational(-floor_of(-x + half));
}

Rational pow10(unsigned digits) {
  BigInt p = 1;
  for (unsigned i = 0; i < digits; ++i) p *= 10;
  return Rational(p);
}

std::string format_scaled(const Rational& scaled_int, unsigned digits) {
  BigInt n = scaled_int.get_num();
  bool neg = sgn(n) < 0;
  if (neg) n = -n;
  std::string s = n.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out = s.substr(0, s.size() - digits);
  if (digits > 0) out += "." + s.substr(s.size() - digits);
  if (neg && sgn(n) != 0) out.insert(0, "-");
  return out;
}

}  // namespace

AlgebraicReal::AlgebraicReal(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  std::size_t d = static_cast<std::size_t>(degree());
  if (coords_.size() > d) {
    for (std::size_t i = d; i < coords_.size(); ++i) {
      if (sgn(coords_[i]) != 0) fail_precondition("coordinate length", "too many coordinates for the field");
    }
  }
  coords_.resize(d, Rational(0));
}

AlgebraicReal AlgebraicReal::generator(const FieldPtr& field) {
  if (!field) fail_precondition("missing field");
  std::vector<Rational> c(static_cast<std::size_t>(field->degree()), 0);
  c[1] = 1;
  return {field, std::move(c)};
}

bool AlgebraicReal::is_zero() const {
  for (const auto& c : coords_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

bool AlgebraicReal::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i) {
    if (sgn(coords_[i]) != 0) return false;
  }
  return true;
}

Rational AlgebraicReal::rational_value() const {
  if (!is_rational()) fail_precondition("not rational", to_string());
  return coords_[0];
}

AlgebraicReal AlgebraicReal::in_field(const FieldPtr& field) const {
  if (!field) return AlgebraicReal(rational_value());
  if (same_field(field_, field)) return {field, coords_};
  if (is_rational()) return {field, {coords_[0]}};
  fail_precondition("field mismatch", field_->to_string() + " vs " + field->to_string());
}

FieldPtr common_field(const AlgebraicReal& a, const AlgebraicReal& b) {
  if (!a.has_field()) return b.field();
  if (!b.has_field()) return a.field();
  if (same_field(a.field(), b.field())) return a.field();
  if (a.is_rational()) return b.field();
  if (b.is_rational()) return a.field();
  fail_precondition("field mismatch", a.field()->to_string() + " vs " + b.field()->to_string());
}

AlgebraicReal operator+(const AlgebraicReal& a, const AlgebraicReal& b) {
  FieldPtr f = common_field(a, b);
  AlgebraicReal x = a.in_field(f);
  AlgebraicReal y = b.in_field(f);
  std::vector<Rational> c = x.coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += y.coords_[i];
  return {f, std::move(c)};
}

AlgebraicReal AlgebraicReal::operator-() const {
  std::vector<Rational> c = coords_;
  for (auto& v : c) v = -v;
  return {field_, std::move(c)};
}

AlgebraicReal operator-(const AlgebraicReal& a, const AlgebraicReal& b) { return a + (-b); }

AlgebraicReal operator*(const AlgebraicReal& a, const AlgebraicReal& b) {
  FieldPtr f = common_field(a, b);
  AlgebraicReal x = a.in_field(f);
  AlgebraicReal y = b.in_field(f);
  if (!f) return AlgebraicReal(x.coords_[0] * y.coords_[0]);
  std::size_t d = static_cast<std::size_t>(f->degree());
  const auto& powers = f->power_table();
  std::vector<Rational> out(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (sgn(x.coords_[i]) == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (sgn(y.coords_[j]) == 0) continue;
      Rational p = x.coords_[i] * y.coords_[j];
      const auto& row = powers[i + j];
      for (std::size_t k = 0; k < d; ++k) out[k] += p * row[k];
    }
  }
  return {f, std::move(out)};
}

RationalMatrix AlgebraicReal::multiplication_matrix() const {
  if (!field_) return {{coords_[0]}};
  std::size_t d = static_cast<std::size_t>(degree());
  RationalMatrix m;
  AlgebraicReal alpha_i(field_, {Rational(1)});
  AlgebraicReal alpha = generator(field_);
  for (std::size_t i = 0; i < d; ++i) {
    m.push_back((alpha_i * *this).coords_);
    alpha_i = alpha_i * alpha;
  }
  return m;
}

AlgebraicReal AlgebraicReal::inverse() const {
  if (is_zero()) fail_precondition("division by zero");
  if (!field_) return AlgebraicReal(1 / coords_[0]);
  auto inv = cantor::inverse(multiplication_matrix());
  if (!inv) fail_invariant("singular multiplication matrix", to_string());
  // x * M = e_0 gives the coordinates of 1/a.
  return {field_, (*inv)[0]};
}

AlgebraicReal operator/(const AlgebraicReal& a, const AlgebraicReal& b) {
  common_field(a, b);
  return a * b.inverse();
}

AlgebraicReal AlgebraicReal::pow(long exponent) const {
  AlgebraicReal base = exponent < 0 ? inverse() : *this;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
  AlgebraicReal result = field_ ? AlgebraicReal(field_, {Rational(1)}) : AlgebraicReal(1);
  while (e > 0) {
    if (e & 1UL) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

Rational AlgebraicReal::norm() const { return determinant(multiplication_matrix()); }

Rational AlgebraicReal::trace() const {
  RationalMatrix m = multiplication_matrix();
  Rational t = 0;
  for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

Polynomial AlgebraicReal::characteristic_polynomial() const {
  RationalMatrix m = multiplication_matrix();
  Rational tr = trace();
  Rational det = determinant(m);
  switch (m.size()) {
    case 1:
      return Polynomial({-coords_[0], Rational(1)});
    case 2:
      return Polynomial({det, -tr, Rational(1)});
    default: {
      Rational c2 = 0;
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) c2 += m[i][i] * m[j][j] - m[i][j] * m[j][i];
      }
      return Polynomial({-det, c2, -tr, Rational(1)});
    }
  }
}

Polynomial AlgebraicReal::minimal_polynomial() const {
  // Field degrees are prime, so an irrational element generates the whole field.
  if (is_rational()) return Polynomial({-coords_[0], Rational(1)});
  return characteristic_polynomial();
}

int AlgebraicReal::sign() const {
  if (is_rational()) return sgn(coords_[0]);
  Polynomial p(coords_);
  RationalInterval iv = field_->isolating_interval();
  for (;;) {
    RationalInterval v = p(iv);
    if (sgn(v.lo) > 0) return 1;
    if (sgn(v.hi) < 0) return -1;
    iv = field_->bisect(iv);
  }
}

RationalInterval AlgebraicReal::enclosure(const Rational& max_width) const {
  if (is_rational()) return {coords_[0], coords_[0]};
  Polynomial p(coords_);
  RationalInterval iv = field_->isolating_interval();
  for (;;) {
    RationalInterval v = p(iv);
    if (v.width() <= max_width) return v;
    iv = field_->bisect(iv);
  }
}

BigInt AlgebraicReal::floor() const {
  if (is_rational()) return floor_of(coords_[0]);
  Polynomial p(coords_);
  RationalInterval iv = field_->isolating_interval();
  for (;;) {
    RationalInterval v = p(iv);
    BigInt lo = floor_of(v.lo);
    // The value is irrational, so it lies strictly between integers.
    if (lo == floor_of(v.hi) && Rational(lo) != v.lo) return lo;
    iv = field_->bisect(iv);
  }
}

std::string AlgebraicReal::approximate(unsigned digits) const {
  if (digits == 0) fail_precondition("digits must be positive");
  Rational scale = pow10(digits);
  if (is_rational()) return format_scaled(round_half_away(coords_[0] * scale), digits);
  Polynomial p(coords_);
  RationalInterval iv = field_->isolating_interval();
  for (;;) {
    RationalInterval v = p(iv);
    Rational a = round_half_away(v.lo * scale);
    Rational b = round_half_away(v.hi * scale);
    if (a == b) return format_scaled(a, digits);
    iv = field_->bisect(iv);
  }
}

double AlgebraicReal::to_double() const {
  if (is_rational()) return coords_[0].get_d();
  RationalInterval v = enclosure(make_rational(1, BigInt(1) << 64) * (1 + abs(Rational(floor()))));
  return v.midpoint().get_d();
}

std::string AlgebraicReal::to_string() const { return Polynomial(coords_).to_string('a'); }

std::strong_ordering compare(const AlgebraicReal& a, const AlgebraicReal& b) {
  int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool operator==(const AlgebraicReal& a, const AlgebraicReal& b) {
  FieldPtr f = common_field(a, b);
  return a.in_field(f).coords_ == b.in_field(f).coords_;
}

std::strong_ordering operator<=>(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b); }

}  // namespace cantor
