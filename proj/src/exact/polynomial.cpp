#include "cantor/exact/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "cantor/error.hpp"

namespace cantor {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::from_integers(const std::vector<BigInt>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (const auto& v : coeffs) c.emplace_back(v);
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational Polynomial::coefficient(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RationalInterval Polynomial::operator()(const RationalInterval& x) const {
  RationalInterval acc{0, 0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x;
    acc.lo += *it;
    acc.hi += *it;
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  std::vector<Rational> c = coeffs_;
  Rational lead = c.back();
  for (auto& v : c) v /= lead;
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(static_cast<int>(i)) + b.coefficient(static_cast<int>(i));
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(static_cast<int>(i)) - b.coefficient(static_cast<int>(i));
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& dividend, const Polynomial& divisor) {
  if (divisor.is_zero()) fail_precondition("division by zero polynomial");
  std::vector<Rational> rem = dividend.coeffs_;
  int dd = divisor.degree();
  if (dividend.degree() < dd) return {Polynomial{}, dividend};
  std::vector<Rational> quot(static_cast<std::size_t>(dividend.degree() - dd + 1));
  for (int k = dividend.degree() - dd; k >= 0; --k) {
    Rational q = rem[static_cast<std::size_t>(k + dd)] / divisor.leading();
    quot[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= q * divisor.coeffs_[static_cast<std::size_t>(j)];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

std::vector<Polynomial> Polynomial::sturm_sequence() const {
  std::vector<Polynomial> seq{*this, derivative()};
  while (!seq.back().is_zero()) {
    auto [q, r] = divmod(seq[seq.size() - 2], seq.back());
    seq.push_back(Polynomial{} - r);
  }
  seq.pop_back();
  return seq;
}

namespace {

int sign_changes(const std::vector<Polynomial>& seq, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int Polynomial::count_roots(const Rational& a, const Rational& b) const {
  auto seq = sturm_sequence();
  return sign_changes(seq, a) - sign_changes(seq, b);
}

std::vector<RationalInterval> Polynomial::isolate_real_roots() const {
  if (degree() < 1) return {};
  // Cauchy bound: every root satisfies |x| < 1 + max |c_i / c_n|.
  Rational bound = 0;
  for (const auto& c : coeffs_) {
    Rational r = abs(c / leading());
    if (r > bound) bound = r;
  }
  bound += 1;
  auto seq = sturm_sequence();
  std::vector<RationalInterval> out;
  std::function<void(const Rational&, const Rational&)> split = [&](const Rational& a, const Rational& b) {
    int n = sign_changes(seq, a) - sign_changes(seq, b);
    if (n == 0) return;
    if (n == 1 && sgn((*this)(b)) != 0) {
      out.push_back({a, b});
      return;
    }
    Rational m = (a + b) / 2;
    split(a, m);
    split(m, b);
  };
  split(-bound, bound);
  return out;
}

std::string Polynomial::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rational c = coefficient(i);
    if (sgn(c) == 0) continue;
    bool neg = sgn(c) < 0;
    Rational mag = abs(c);
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? '-' : '+');
    }
    first = false;
    bool unit = (mag == 1);
    if (i == 0) {
      os << cantor::to_string(mag);
      continue;
    }
    if (!unit) os << cantor::to_string(mag) << '*';
    os << var;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

bool irreducible_low_degree(const std::vector<BigInt>& monic_coeffs) {
  Polynomial p = Polynomial::from_integers(monic_coeffs);
  if (p.degree() < 2 || p.degree() > 3 || p.leading() != 1) return false;
  BigInt c0 = abs(monic_coeffs.front());
  if (c0 == 0) return false;
  for (BigInt d = 1; d * d <= c0; ++d) {
    if (c0 % d != 0) continue;
    for (const BigInt& cand : {d, BigInt(c0 / d)}) {
      if (sgn(p(Rational(cand))) == 0 || sgn(p(Rational(-cand))) == 0) return false;
    }
  }
  return true;
}

}  // namespace cantor
