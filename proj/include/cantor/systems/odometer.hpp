#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cantor/lattice/subgroup.hpp"
#include "cantor/lattice/supernatural.hpp"
#include "cantor/relations/clopen.hpp"

namespace cantor {

/// Eventually periodic base sequence n_1, n_2, ... given as preperiod and period.
struct OdometerSpec {
  std::vector<std::uint64_t> preperiod;
  std::vector<std::uint64_t> period;

  /// "2,3|5" (preperiod | period) or "6" (period only).
  static OdometerSpec parse(std::string_view text);
  /// n_i for i >= 1.
  std::uint64_t base(std::size_t i) const;
  bool purely_periodic() const { return preperiod.empty(); }
  std::string to_string() const;
  friend bool operator==(const OdometerSpec&, const OdometerSpec&) = default;
};

/// N = prod p^eps_p with eps_p = sup { m : p^m | n_1 ... n_k }.
Supernatural supernatural_of(const OdometerSpec& spec);

/// The group generated by the primes dividing some period entry.
MultiplicativeGroup odometer_group_direct(const OdometerSpec& spec);

/// Union of depth-k cylinders, stored by mixed-radix index
/// N = w_1 + n_1 w_2 + n_1 n_2 w_3 + ... (first digit least significant).
/// Kept at the least depth that represents the set, so equality is data equality.
struct OdSet {
  unsigned depth = 0;
  std::vector<std::uint64_t> indices;
  friend bool operator==(const OdSet&, const OdSet&) = default;
};

class Odometer {
 public:
  using Set = OdSet;

  explicit Odometer(OdometerSpec spec);

  const OdometerSpec& spec() const { return spec_; }
  int rank() const { return 1; }

  /// n_1 ... n_k; errors "depth too large" past 2^48.
  std::uint64_t product(unsigned depth) const;
  std::uint64_t product_range(unsigned from_depth, unsigned to_depth) const;

  Set full() const { return {0, {0}}; }
  Set empty() const { return {0, {}}; }
  Set cylinder(const std::vector<unsigned>& word) const;
  Set from_indices(unsigned depth, std::vector<std::uint64_t> indices) const;
  std::uint64_t index_of(const std::vector<unsigned>& word) const;
  std::vector<unsigned> word_of(std::uint64_t index, unsigned depth) const;
  /// The same set written at a larger depth.
  Set refine(const Set& s, unsigned depth) const;

  Set act(GroupElement g, const Set& s) const;
  /// (input, image) under phi^power. Cylinders map to cylinders of equal depth,
  /// so the input needs no refinement.
  std::pair<Set, Set> apply_phi(const Set& s, std::int64_t power) const;

  Set unite(const Set& a, const Set& b) const;
  Set intersect(const Set& a, const Set& b) const;
  Set subtract(const Set& a, const Set& b) const;

  Rational exact_measure(const Set& s) const;
  AlgebraicReal measure(const Set& s) const { return AlgebraicReal(exact_measure(s)); }

  /// Word w can be prepended when the base is shift invariant by |w|.
  bool prepend_compatible(std::size_t word_length) const;
  Set apply(const Step& step, const Set& s) const;
  Rational step_scale(const Step& step) const;

  /// Cylinders of depth 1..d (every one while a depth has at most 512,
  /// an evenly strided selection beyond) plus the whole space.
  std::vector<Set> test_family(unsigned d) const;
  /// All cylinders of depth exactly d.
  std::vector<Set> cylinders(unsigned d) const;
  /// Measures of the depth-max(d, depth(within)) cylinders inside `within`.
  std::vector<AlgebraicReal> atom_measures(const Set& within, unsigned d) const;
  unsigned resolution(const Set& s) const { return s.depth; }

  AdditiveSubgroup value_group() const;
  MultiplicativeGroup fundamental_group() const { return odometer_group_direct(spec_); }

  std::string describe() const { return "odometer:" + spec_.to_string(); }
  /// "X", "{}" or cylinders joined by '+', e.g. "[0]+[1,1]".
  std::string describe(const Set& s) const;
  Set parse_set(std::string_view text) const;

 private:
  Set normalized(unsigned depth, std::vector<std::uint64_t> indices) const;
  std::pair<OdSet, OdSet> common(const Set& a, const Set& b) const;

  OdometerSpec spec_;
};

static_assert(ClopenSystem<Odometer>);

}  // namespace cantor
