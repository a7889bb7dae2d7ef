#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/exact/algebraic.hpp"
#include "cantor/lattice/subgroup.hpp"
#include "cantor/relations/clopen.hpp"

namespace cantor {

/// One or two rotation numbers in a common real quadratic or cubic field,
/// reduced into (0, 1). The cut set is the full orbit of 0.
struct DenjoySpec {
  std::vector<AlgebraicReal> thetas;
  FieldPtr field;

  /// Checks irrationality (one theta) or Q-independence of 1, theta1, theta2.
  static DenjoySpec make(std::vector<AlgebraicReal> thetas);
  /// "(-1+sqrt(5))/2" or "cbrt(2); cbrt(4)".
  static DenjoySpec parse(std::string_view text);
  int rank() const { return static_cast<int>(thetas.size()); }
  std::string to_string() const;
};

/// Orbit point n theta1 + m theta2 mod 1. The `top` marker stands for the
/// right end 1 of the unit interval and occurs only as a closing boundary.
struct Cut {
  std::int64_t n = 0;
  std::int64_t m = 0;
  bool top = false;
  friend bool operator==(const Cut&, const Cut&) = default;
};

/// [b0, b1) u [b2, b3) u ... with strictly increasing boundaries and no two
/// intervals touching.
struct ArcSet {
  std::vector<Cut> bounds;
  friend bool operator==(const ArcSet&, const ArcSet&) = default;
};

/// D_theta: discriminant b^2 - 4ac of the primitive integer minimal polynomial
/// of a quadratic theta. It equals the discriminant of the multiplier ring of Z + Z theta.
BigInt theta_discriminant(const AlgebraicReal& theta);

/// Pell route for one quadratic theta, the trivial group for a cubic theta,
/// and the unit group of the multiplier ring for two thetas.
MultiplicativeGroup denjoy_group_direct(const DenjoySpec& spec);

class Denjoy {
 public:
  using Set = ArcSet;

  explicit Denjoy(DenjoySpec spec);

  const DenjoySpec& spec() const { return spec_; }
  int rank() const { return spec_.rank(); }

  /// Exact position in [0, 1]; top gives 1.
  AlgebraicReal position(const Cut& c) const;
  /// -1, 0, 1 by position.
  int compare_cuts(const Cut& a, const Cut& b) const;

  Set full() const { return {{Cut{}, Cut{0, 0, true}}}; }
  Set empty() const { return {}; }
  /// The circular arc from `from` up to `to`; equal ends give the whole circle.
  Set arc(const Cut& from, const Cut& to) const;

  Set act(GroupElement g, const Set& s) const;
  Set unite(const Set& a, const Set& b) const;
  Set intersect(const Set& a, const Set& b) const;
  Set subtract(const Set& a, const Set& b) const;

  AlgebraicReal measure(const Set& s) const;
  /// Total length of pairwise disjoint arcs; errors "overlapping arcs" otherwise.
  AlgebraicReal arc_measure(const std::vector<Set>& arcs) const;
  Set apply(const Step& step, const Set& s) const;
  Rational step_scale(const Step&) const { return 1; }

  /// Arcs between orbit points of norm at most d, at most about 2000 of them.
  std::vector<Set> test_family(unsigned d) const;
  /// Cut points of max-norm at most d, ascending.
  std::vector<Cut> cuts(unsigned d) const;
  /// The partition of the circle cut at the points of norm at most d.
  std::vector<Set> atoms(unsigned d) const;
  /// Lengths of the pieces of `within` cut at the points of norm at most d.
  std::vector<AlgebraicReal> atom_measures(const Set& within, unsigned d) const;
  /// Least d whose cut points include every boundary of s.
  unsigned resolution(const Set& s) const;

  AdditiveSubgroup value_group() const;
  MultiplicativeGroup fundamental_group() const { return denjoy_group_direct(spec_); }

  std::string describe() const;
  /// Arcs "[a,b)" of orbit indices, joined by '+'; rank two writes (n;m).
  std::string describe(const Set& s) const;
  Set parse_set(std::string_view text) const;

 private:
  long double approx(const Cut& c) const;
  Set from_intervals(std::vector<std::pair<Cut, Cut>> intervals) const;
  template <class Op>
  Set combine(const Set& a, const Set& b, Op op) const;
  std::string cut_text(const Cut& c) const;

  DenjoySpec spec_;
  std::vector<long double> theta_approx_;
};

static_assert(ClopenSystem<Denjoy>);

}  // namespace cantor
