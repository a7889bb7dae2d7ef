#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cantor/exact/algebraic.hpp"
#include "cantor/lattice/lattice.hpp"

namespace cantor {

/// An order of a quadratic or cubic field: a full-rank lattice containing 1
/// and closed under multiplication.
struct OrderDescriptor {
  FieldLattice lattice;
  BigInt discriminant;

  const FieldPtr& field() const { return lattice.field(); }
  int degree() const { return lattice.degree(); }
  /// Number of real embeddings of the field.
  std::size_t real_embeddings() const { return lattice.field()->real_root_count(); }
};

/// Validates `lattice` as an order and computes its discriminant.
OrderDescriptor make_order(const FieldLattice& lattice);

/// Z[alpha] for the field generator alpha.
OrderDescriptor equation_order(const FieldPtr& field);

/// Whether u is a unit of the order: u and 1/u lie in it.
bool is_unit(const OrderDescriptor& order, const AlgebraicReal& u);

/// Fundamental unit > 1 of a real quadratic order, taken from the Pell
/// solution for the order discriminant and rewritten in the order's field.
AlgebraicReal quadratic_fundamental_unit(const OrderDescriptor& order);

/// sqrt(D) as an element of the quadratic field `field`, when D/disc is a
/// rational square; otherwise an error.
AlgebraicReal sqrt_in_field(const BigInt& D, const FieldPtr& field);

struct UnitSearchConfig {
  /// Search all units with real embedding in (1, bound].
  double bound = 1e5;
  /// Artin-type inequality |d| < c * eps^3 + offset.
  double artin_constant = 4;
  double artin_offset = 24;

  /// Defaults, with the bound replaced by CANTOR_FG_SEARCH_BOUND when set.
  static UnitSearchConfig from_environment();
};

struct ComplexCubicUnit {
  AlgebraicReal unit;
  /// ((|d| - offset) / c)^(1/3): no unit > 1 can lie below this.
  double artin_lower_bound = 0;
  double search_bound = 0;
  std::size_t candidates_examined = 0;
};

/// Unit > 1 generating the positive units of a cubic order with one real
/// embedding, found by exhaustive search over (1, bound].
ComplexCubicUnit fundamental_unit_complex_cubic(const OrderDescriptor& order,
                                                const UnitSearchConfig& config = UnitSearchConfig());

struct UnitSystemReport {
  bool each_is_unit = false;
  std::vector<Rational> norms;
  bool independent = false;
  /// Lower end of an enclosure of |det(log |sigma_i(u_j)|)|, 12 digits.
  std::string regulator_lower_bound = "0";
  /// Width of the final regulator enclosure.
  double enclosure_width = 0;
  std::string note = "verified unit system, fundamentality unchecked";
};

/// Exact norm checks plus an interval enclosure of the log-embedding
/// determinant, refined until its sign is decided or its width drops below 1e-10.
UnitSystemReport verify_unit_system(const OrderDescriptor& order, const std::vector<AlgebraicReal>& candidates);

/// Heuristic two-unit system for a totally real cubic order: the pair of
/// small units (coordinates bounded by `box`) with least nonzero regulator.
/// Every small unit found is checked to be a product of powers of the pair.
struct TotallyRealUnits {
  std::vector<AlgebraicReal> generators;
  std::size_t units_found = 0;
  bool all_found_expressible = false;
};
TotallyRealUnits totally_real_unit_search(const OrderDescriptor& order, int box = 4);

/// Exponents (a, b) with u = g1^a g2^b, |a|,|b| <= bound, if any.
std::optional<std::pair<long, long>> express_in(const AlgebraicReal& u, const AlgebraicReal& g1,
                                                const AlgebraicReal& g2, long bound);

}  // namespace cantor
