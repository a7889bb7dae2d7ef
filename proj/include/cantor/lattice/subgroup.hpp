#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cantor/exact/algebraic.hpp"
#include "cantor/lattice/lattice.hpp"
#include "cantor/lattice/supernatural.hpp"

namespace cantor {

/// { b/q : b in Z, q a positive divisor of N }.
struct RationalRankOne {
  Supernatural denominators;
  friend bool operator==(const RationalRankOne&, const RationalRankOne&) = default;
};

/// An additive subgroup of R containing 1: either rank one rational or a
/// lattice inside a real quadratic or cubic field.
class AdditiveSubgroup {
 public:
  explicit AdditiveSubgroup(RationalRankOne r) : rep_(std::move(r)) {}
  /// Checks that 1 belongs to the lattice and that the generators are independent.
  explicit AdditiveSubgroup(FieldLattice l);

  static AdditiveSubgroup from_generators(const FieldPtr& field, const std::vector<AlgebraicReal>& generators);
  /// "supernatural: 2^inf*3^2" or "lattice: field x^2-5; basis 1, (-1+a)/2";
  /// the short lattice form "x^2-5; 1, a" is accepted too.
  static AdditiveSubgroup parse(std::string_view text);

  bool is_rank_one() const { return std::holds_alternative<RationalRankOne>(rep_); }
  const Supernatural& denominators() const { return std::get<RationalRankOne>(rep_).denominators; }
  const FieldLattice& lattice() const { return std::get<FieldLattice>(rep_); }

  bool contains(const AlgebraicReal& x) const;

  std::string to_string() const;

  friend bool operator==(const AdditiveSubgroup& a, const AdditiveSubgroup& b) = default;

 private:
  std::variant<RationalRankOne, FieldLattice> rep_;
};

/// Finitely generated subgroup of the positive reals under multiplication.
struct MultiplicativeGroup {
  enum class Kind { trivial, cyclic, rank_two, prime_generated };

  Kind kind = Kind::trivial;
  /// Generators > 1 (cyclic, rank_two).
  std::vector<AlgebraicReal> generators;
  /// Generating primes in ascending order (prime_generated).
  std::vector<std::uint64_t> primes;
  /// False when generators were not proven to generate the whole group.
  bool certified = true;
  std::string note;

  static MultiplicativeGroup trivial();
  static MultiplicativeGroup cyclic(const AlgebraicReal& g);
  static MultiplicativeGroup rank_two(const AlgebraicReal& g1, const AlgebraicReal& g2);
  /// Empty prime list gives the trivial group.
  static MultiplicativeGroup prime_generated(std::vector<std::uint64_t> primes);

  /// Whether t is a product of integer powers of the generators
  /// (exponent search bounded for rank_two).
  bool contains(const AlgebraicReal& t) const;

  /// Same kind and identical generators; notes and certification are ignored.
  friend bool operator==(const MultiplicativeGroup& a, const MultiplicativeGroup& b) {
    return a.kind == b.kind && a.generators == b.generators && a.primes == b.primes;
  }
};

const char* kind_name(MultiplicativeGroup::Kind k);

/// No relation g1^a g2^b = 1 with 0 < max(|a|,|b|) <= bound.
bool multiplicatively_independent(const AlgebraicReal& g1, const AlgebraicReal& g2, int bound = 20);

/// O(E) = { t : tE in E } for a full-rank lattice E, as the intersection of
/// the lattices e^-1 E over a basis of E. Errors "not full rank" otherwise.
FieldLattice multiplier_ring(const FieldLattice& E);

/// The positive inner multiplier group IM+(E) = { t > 0 : t, 1/t in E, tE = E }.
MultiplicativeGroup im_plus(const AdditiveSubgroup& E);

/// Re-checks every generator t of `g` against E: t and 1/t in E and tE = E.
bool verify_inner_multipliers(const AdditiveSubgroup& E, const MultiplicativeGroup& g);

}  // namespace cantor
