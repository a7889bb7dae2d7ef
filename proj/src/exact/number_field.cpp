#include "cantor/exact/number_field.hpp"

#include "cantor/error.hpp"

namespace cantor {

namespace {

const Rational& refinement_width() {
  static const Rational w = make_rational(1, BigInt(1) << 64);
  return w;
}

}  // namespace

FieldPtr NumberField::make(std::vector<BigInt> monic_coeffs, std::size_t real_root_index) {
  if (monic_coeffs.size() < 3 || monic_coeffs.size() > 4 || monic_coeffs.back() != 1) {
    fail_precondition("unsupported field", "defining polynomial must be monic of degree 2 or 3");
  }
  if (!irreducible_low_degree(monic_coeffs)) {
    fail_precondition("reducible polynomial", Polynomial::from_integers(monic_coeffs).to_string());
  }
  auto f = std::shared_ptr<NumberField>(new NumberField());
  f->coeffs_ = std::move(monic_coeffs);
  f->poly_ = Polynomial::from_integers(f->coeffs_);
  auto roots = f->poly_.isolate_real_roots();
  if (real_root_index >= roots.size()) {
    fail_precondition("no such real root", f->poly_.to_string() + " has " + std::to_string(roots.size()) + " real roots");
  }
  f->root_index_ = real_root_index;
  f->real_root_count_ = roots.size();
  RationalInterval iv = roots[real_root_index];
  // Sturm isolation guarantees one root in (lo, hi]; hi itself is not a root.
  while (iv.width() > refinement_width()) iv = f->bisect(iv);
  f->interval_ = iv;

  int d = f->degree();
  f->powers_.assign(static_cast<std::size_t>(2 * d - 1), std::vector<Rational>(static_cast<std::size_t>(d), 0));
  for (int k = 0; k < d; ++k) f->powers_[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = 1;
  for (int k = d; k < 2 * d - 1; ++k) {
    // alpha^k = alpha * alpha^(k-1), reducing alpha^d = -sum c_i alpha^i.
    const auto& prev = f->powers_[static_cast<std::size_t>(k - 1)];
    auto& cur = f->powers_[static_cast<std::size_t>(k)];
    Rational top = prev[static_cast<std::size_t>(d - 1)];
    for (int i = d - 1; i >= 1; --i) cur[static_cast<std::size_t>(i)] = prev[static_cast<std::size_t>(i - 1)];
    cur[0] = 0;
    for (int i = 0; i < d; ++i) cur[static_cast<std::size_t>(i)] -= top * Rational(f->coeffs_[static_cast<std::size_t>(i)]);
  }
  return f;
}

FieldPtr NumberField::make_near(std::vector<BigInt> monic_coeffs, const RationalInterval& hint) {
  Polynomial p = Polynomial::from_integers(monic_coeffs);
  auto roots = p.isolate_real_roots();
  if (p.count_roots(hint.lo, hint.hi) != 1 || sgn(p(hint.hi)) == 0) {
    fail_precondition("no isolated root in interval", p.to_string());
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    RationalInterval r = roots[i];
    // Shrink the isolating interval until it sits inside or outside the hint.
    for (;;) {
      if (r.hi <= hint.lo || r.lo >= hint.hi) break;
      if (hint.lo <= r.lo && r.hi <= hint.hi) return make(std::move(monic_coeffs), i);
      Rational m = r.midpoint();
      if (sgn(p(m)) == 0) fail_precondition("reducible polynomial", p.to_string());
      if (sgn(p(m)) == sgn(p(r.hi))) {
        r.hi = m;
      } else {
        r.lo = m;
      }
    }
  }
  fail_precondition("no isolated root in interval", p.to_string());
}

FieldPtr NumberField::make_largest_root(std::vector<BigInt> monic_coeffs) {
  Polynomial p = Polynomial::from_integers(monic_coeffs);
  auto roots = p.isolate_real_roots();
  if (roots.empty()) fail_precondition("no real root", p.to_string());
  return make(std::move(monic_coeffs), roots.size() - 1);
}

RationalInterval NumberField::bisect(const RationalInterval& iv) const {
  Rational m = iv.midpoint();
  int sm = sgn(poly_(m));
  if (sm == 0) fail_invariant("rational root of irreducible polynomial");
  int shi = sgn(poly_(iv.hi));
  if (sm == shi) return {iv.lo, m};
  return {m, iv.hi};
}

FieldPtr NumberField::conjugate(std::size_t real_root_index) const {
  return make(coeffs_, real_root_index);
}

BigInt NumberField::polynomial_discriminant() const {
  if (degree() == 2) {
    const BigInt& c = coeffs_[0];
    const BigInt& b = coeffs_[1];
    return BigInt(b * b - 4 * c);
  }
  // x^3 + a x^2 + b x + c
  const BigInt& c = coeffs_[0];
  const BigInt& b = coeffs_[1];
  const BigInt& a = coeffs_[2];
  return BigInt(a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c);
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace cantor
