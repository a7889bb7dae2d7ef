#pragma once

#include <vector>

#include "cantor/exact/algebraic.hpp"
#include "cantor/exact/matrix.hpp"

namespace cantor {

using IntegerVector = std::vector<BigInt>;
using IntegerMatrix = std::vector<IntegerVector>;

/// Row Hermite normal form with pivots searched from the last column to the
/// first. Zero rows are dropped. Pivots are positive and every entry above a
/// pivot is reduced into [0, pivot).
IntegerMatrix hermite_normal_form(IntegerMatrix rows);

/// A finitely generated subgroup of Q^d, kept in canonical form
/// (1/D) * HNF(D * generators) with D the least common denominator.
/// Because pivots are taken from the high coordinate down, the order Z[alpha]
/// keeps 1 as its last basis row.
class RationalLattice {
 public:
  RationalLattice() = default;
  RationalLattice(std::size_t dimension, const std::vector<RationalVector>& generators);

  std::size_t dimension() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  bool full_rank() const { return rank() == dim_; }
  const std::vector<RationalVector>& basis() const { return rows_; }

  bool contains(const RationalVector& v) const;
  /// Integer coordinates of `v` in basis(); empty if v is not in the lattice.
  std::vector<BigInt> coordinates(const RationalVector& v) const;
  /// Whether `sub` is a subgroup of this lattice.
  bool contains(const RationalLattice& sub) const;

  friend bool operator==(const RationalLattice& a, const RationalLattice& b) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> pivots_;
};

RationalLattice lattice_sum(const RationalLattice& a, const RationalLattice& b);
RationalLattice lattice_intersection(const RationalLattice& a, const RationalLattice& b);

/// A lattice of elements of one number field, stored by power-basis coordinates.
class FieldLattice {
 public:
  FieldLattice() = default;
  FieldLattice(FieldPtr field, const std::vector<AlgebraicReal>& generators);
  FieldLattice(FieldPtr field, RationalLattice coords) : field_(std::move(field)), lattice_(std::move(coords)) {}

  const FieldPtr& field() const { return field_; }
  int degree() const { return field_->degree(); }
  std::size_t rank() const { return lattice_.rank(); }
  bool full_rank() const { return lattice_.full_rank(); }
  const RationalLattice& coordinates() const { return lattice_; }
  std::vector<AlgebraicReal> basis() const;

  bool contains(const AlgebraicReal& x) const;
  /// t * L.
  FieldLattice scaled(const AlgebraicReal& t) const;
  /// Closed under multiplication and contains 1.
  bool is_order() const;
  /// det(Tr(b_i b_j)) over the basis.
  Rational discriminant() const;

  friend bool operator==(const FieldLattice& a, const FieldLattice& b);

 private:
  FieldPtr field_;
  RationalLattice lattice_;
};

FieldLattice intersection(const FieldLattice& a, const FieldLattice& b);

}  // namespace cantor
