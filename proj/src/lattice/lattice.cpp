#include "cantor/lattice/lattice.hpp"

#include "cantor/error.hpp"

namespace cantor {

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void axpy(IntegerVector& row, const BigInt& q, const IntegerVector& pivot_row) {
  for (std::size_t j = 0; j < row.size(); ++j) row[j] -= q * pivot_row[j];
}

BigInt common_denominator(const std::vector<RationalVector>& rows) {
  BigInt d = 1;
  for (const auto& r : rows) {
    for (const auto& v : r) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());
  }
  return d;
}

}  // namespace

IntegerMatrix hermite_normal_form(IntegerMatrix m) {
  if (m.empty()) return m;
  std::size_t n = m[0].size();
  std::size_t r = 0;
  for (std::size_t step = 0; step < n && r < m.size(); ++step) {
    std::size_t col = n - 1 - step;
    for (;;) {
      std::size_t best = m.size();
      for (std::size_t i = r; i < m.size(); ++i) {
        if (sgn(m[i][col]) == 0) continue;
        if (best == m.size() || abs(m[i][col]) < abs(m[best][col])) best = i;
      }
      if (best == m.size()) break;
      std::swap(m[r], m[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < m.size(); ++i) {
        if (sgn(m[i][col]) == 0) continue;
        axpy(m[i], floor_div(m[i][col], m[r][col]), m[r]);
        if (sgn(m[i][col]) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= m.size() || sgn(m[r][col]) == 0) continue;
    if (sgn(m[r][col]) < 0) {
      for (auto& v : m[r]) v = -v;
    }
    for (std::size_t i = 0; i < r; ++i) axpy(m[i], floor_div(m[i][col], m[r][col]), m[r]);
    ++r;
  }
  m.resize(r);
  return m;
}

RationalLattice::RationalLattice(std::size_t dimension, const std::vector<RationalVector>& generators)
    : dim_(dimension) {
  for (const auto& g : generators) {
    if (g.size() != dim_) fail_invariant("lattice generator dimension");
  }
  BigInt d = common_denominator(generators);
  IntegerMatrix m;
  for (const auto& g : generators) {
    IntegerVector row;
    for (const auto& v : g) {
      Rational s = v * Rational(d);
      row.push_back(s.get_num());
    }
    m.push_back(std::move(row));
  }
  for (auto& row : hermite_normal_form(std::move(m))) {
    RationalVector rv;
    std::size_t pivot = dim_;
    for (std::size_t j = 0; j < dim_; ++j) {
      rv.push_back(make_rational(row[j], d));
      if (sgn(row[j]) != 0) pivot = j;
    }
    rows_.push_back(std::move(rv));
    pivots_.push_back(pivot);
  }
}

std::vector<BigInt> RationalLattice::coordinates(const RationalVector& v) const {
  if (v.size() != dim_) fail_invariant("lattice vector dimension");
  RationalVector rest = v;
  std::vector<BigInt> z;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::size_t p = pivots_[i];
    Rational q = rest[p] / rows_[i][p];
    if (q.get_den() != 1) return {};
    for (std::size_t j = 0; j < dim_; ++j) rest[j] -= q * rows_[i][j];
    z.push_back(q.get_num());
  }
  for (const auto& x : rest) {
    if (sgn(x) != 0) return {};
  }
  if (z.empty()) z.push_back(0);  // zero vector in the zero lattice
  return z;
}

bool RationalLattice::contains(const RationalVector& v) const { return !coordinates(v).empty(); }

bool RationalLattice::contains(const RationalLattice& sub) const {
  for (const auto& r : sub.rows_) {
    if (!contains(r)) return false;
  }
  return true;
}

RationalLattice lattice_sum(const RationalLattice& a, const RationalLattice& b) {
  std::vector<RationalVector> g = a.basis();
  g.insert(g.end(), b.basis().begin(), b.basis().end());
  return {a.dimension(), g};
}

RationalLattice lattice_intersection(const RationalLattice& a, const RationalLattice& b) {
  // Rows [x | x] for x in a and [0 | y] for y in b. The high block is eliminated
  // first; rows left with a zero high block carry a ∩ b in the low block.
  std::size_t d = a.dimension();
  std::vector<RationalVector> g;
  for (const auto& x : a.basis()) {
    RationalVector row = x;
    row.insert(row.end(), x.begin(), x.end());
    g.push_back(std::move(row));
  }
  for (const auto& y : b.basis()) {
    RationalVector row(d, 0);
    row.insert(row.end(), y.begin(), y.end());
    g.push_back(std::move(row));
  }
  RationalLattice big(2 * d, g);
  std::vector<RationalVector> low;
  for (const auto& row : big.basis()) {
    bool high_zero = true;
    for (std::size_t j = d; j < 2 * d; ++j) high_zero = high_zero && sgn(row[j]) == 0;
    if (high_zero) low.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return {d, low};
}

FieldLattice::FieldLattice(FieldPtr field, const std::vector<AlgebraicReal>& generators) : field_(std::move(field)) {
  if (!field_) fail_precondition("lattice needs a field");
  std::vector<RationalVector> rows;
  for (const auto& g : generators) rows.push_back(g.in_field(field_).coords());
  lattice_ = RationalLattice(static_cast<std::size_t>(field_->degree()), rows);
}

std::vector<AlgebraicReal> FieldLattice::basis() const {
  std::vector<AlgebraicReal> out;
  for (const auto& r : lattice_.basis()) out.emplace_back(field_, r);
  return out;
}

bool FieldLattice::contains(const AlgebraicReal& x) const { return lattice_.contains(x.in_field(field_).coords()); }

FieldLattice FieldLattice::scaled(const AlgebraicReal& t) const {
  std::vector<AlgebraicReal> g;
  for (const auto& b : basis()) g.push_back(b * t);
  return {field_, g};
}

bool FieldLattice::is_order() const {
  if (!contains(AlgebraicReal(1))) return false;
  auto b = basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i; j < b.size(); ++j) {
      if (!contains(b[i] * b[j])) return false;
    }
  }
  return true;
}

Rational FieldLattice::discriminant() const {
  auto b = basis();
  RationalMatrix t(b.size(), RationalVector(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) t[i][j] = (b[i] * b[j]).trace();
  }
  return determinant(t);
}

bool operator==(const FieldLattice& a, const FieldLattice& b) {
  return same_field(a.field_, b.field_) && a.lattice_ == b.lattice_;
}

FieldLattice intersection(const FieldLattice& a, const FieldLattice& b) {
  if (!same_field(a.field(), b.field())) fail_precondition("field mismatch");
  return {a.field(), lattice_intersection(a.coordinates(), b.coordinates())};
}

}  // namespace cantor
