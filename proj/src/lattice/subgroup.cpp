#include "cantor/lattice/subgroup.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cantor/error.hpp"
#include "cantor/exact/expression.hpp"
#include "cantor/units/units.hpp"

namespace cantor {

namespace {

std::string strip_prefix(std::string s, std::string_view prefix) {
  if (s.rfind(prefix, 0) == 0) s.erase(0, prefix.size());
  return s;
}

/// E ∩ (⋂ e^-1 E); valid for any rank.
FieldLattice multiplier_ring_any_rank(const FieldLattice& E) {
  FieldLattice O = E;
  for (const auto& e : E.basis()) O = intersection(O, E.scaled(e.inverse()));
  return O;
}

}  // namespace

AdditiveSubgroup::AdditiveSubgroup(FieldLattice l) : rep_(std::move(l)) {
  if (!lattice().contains(AlgebraicReal(1))) fail_precondition("subgroup must contain 1");
}

AdditiveSubgroup AdditiveSubgroup::from_generators(const FieldPtr& field, const std::vector<AlgebraicReal>& generators) {
  FieldLattice l(field, generators);
  if (l.rank() != generators.size()) fail_precondition("basis not independent", "generators are Z-linearly dependent");
  if (l.rank() < 2) fail_precondition("lattice rank must be 2 or 3");
  return AdditiveSubgroup(std::move(l));
}

AdditiveSubgroup AdditiveSubgroup::parse(std::string_view text) {
  std::string s = normalize_input(text);
  if (s.rfind("supernatural:", 0) == 0) return AdditiveSubgroup(RationalRankOne{Supernatural::parse(s)});
  s = strip_prefix(s, "lattice:");
  auto parts = split_top_level(s, ';');
  if (parts.size() != 2) fail_parse("lattice needs 'field; basis'", std::string(text));
  FieldPtr field = parse_field(strip_prefix(parts[0], "field"));
  std::vector<AlgebraicReal> basis;
  for (const auto& b : split_top_level(strip_prefix(parts[1], "basis"), ',')) basis.push_back(parse_real(b, field));
  return from_generators(field, basis);
}

bool AdditiveSubgroup::contains(const AlgebraicReal& x) const {
  if (is_rank_one()) {
    if (!x.is_rational()) fail_precondition("field mismatch", "rank-one subgroups hold rationals only");
    return denominators().divisible_by(x.rational_value().get_den());
  }
  return lattice().contains(x);
}

std::string AdditiveSubgroup::to_string() const {
  if (is_rank_one()) return "supernatural: " + denominators().to_string();
  const auto& l = lattice();
  std::string out = "lattice: field " + l.field()->to_string() + "@" + std::to_string(l.field()->root_index()) + "; basis ";
  auto b = l.basis();
  for (std::size_t i = 0; i < b.size(); ++i) out += (i ? ", " : "") + b[i].to_string();
  return out;
}

MultiplicativeGroup MultiplicativeGroup::trivial() { return {}; }

MultiplicativeGroup MultiplicativeGroup::cyclic(const AlgebraicReal& g) {
  MultiplicativeGroup m;
  m.kind = Kind::cyclic;
  m.generators = {compare(g, AlgebraicReal(1)) == std::strong_ordering::less ? g.inverse() : g};
  if (m.generators[0] == AlgebraicReal(1)) return trivial();
  return m;
}

MultiplicativeGroup MultiplicativeGroup::rank_two(const AlgebraicReal& g1, const AlgebraicReal& g2) {
  MultiplicativeGroup m;
  m.kind = Kind::rank_two;
  for (const auto& g : {g1, g2}) {
    m.generators.push_back(compare(g, AlgebraicReal(1)) == std::strong_ordering::less ? g.inverse() : g);
  }
  if (!multiplicatively_independent(m.generators[0], m.generators[1])) fail_invariant("generators not independent");
  return m;
}

MultiplicativeGroup MultiplicativeGroup::prime_generated(std::vector<std::uint64_t> primes) {
  if (primes.empty()) return trivial();
  MultiplicativeGroup m;
  m.kind = Kind::prime_generated;
  std::sort(primes.begin(), primes.end());
  m.primes = std::move(primes);
  return m;
}

bool MultiplicativeGroup::contains(const AlgebraicReal& t) const {
  if (t.sign() <= 0) return false;
  switch (kind) {
    case Kind::trivial:
      return t == AlgebraicReal(1);
    case Kind::prime_generated: {
      if (!t.is_rational()) return false;
      Rational q = t.rational_value();
      for (BigInt n : {BigInt(q.get_num()), BigInt(q.get_den())}) {
        for (auto p : primes) {
          BigInt bp(std::to_string(p));
          while (n % bp == 0) n /= bp;
        }
        if (n != 1) return false;
      }
      return true;
    }
    case Kind::cyclic: {
      const AlgebraicReal& g = generators[0];
      long n = std::lround(std::log(t.to_double()) / std::log(g.to_double()));
      return g.pow(n) == t;
    }
    case Kind::rank_two:
      return express_in(t, generators[0], generators[1], 64).has_value();
  }
  return false;
}

const char* kind_name(MultiplicativeGroup::Kind k) {
  switch (k) {
    case MultiplicativeGroup::Kind::trivial:
      return "trivial";
    case MultiplicativeGroup::Kind::cyclic:
      return "cyclic";
    case MultiplicativeGroup::Kind::rank_two:
      return "rank_two";
    case MultiplicativeGroup::Kind::prime_generated:
      return "prime_generated";
  }
  return "?";
}

bool multiplicatively_independent(const AlgebraicReal& g1, const AlgebraicReal& g2, int bound) {
  std::vector<AlgebraicReal> p1, p2;
  for (int k = -bound; k <= bound; ++k) {
    p1.push_back(g1.pow(k));
    p2.push_back(g2.pow(k));
  }
  // g1^a g2^b = 1  <=>  g1^a = g2^-b
  for (int a = -bound; a <= bound; ++a) {
    for (int b = -bound; b <= bound; ++b) {
      if (a == 0 && b == 0) continue;
      if (p1[static_cast<std::size_t>(a + bound)] == p2[static_cast<std::size_t>(-b + bound)]) return false;
    }
  }
  return true;
}

FieldLattice multiplier_ring(const FieldLattice& E) {
  if (!E.full_rank()) fail_precondition("not full rank", "multiplier ring needs rank equal to the field degree");
  FieldLattice O = multiplier_ring_any_rank(E);
  ensure(O.is_order(), "multiplier ring is an order");
  return O;
}

MultiplicativeGroup im_plus(const AdditiveSubgroup& E) {
  if (E.is_rank_one()) {
    auto g = MultiplicativeGroup::prime_generated(E.denominators().infinite_primes());
    return g;
  }
  const FieldLattice& L = E.lattice();
  if (!L.full_rank()) {
    // A rank-deficient E has O(E) = Z: the only subfield small enough is Q.
    FieldLattice O = multiplier_ring_any_rank(L);
    ensure(O.rank() == 1 && O.contains(AlgebraicReal(1)), "rank-deficient multiplier ring is Z");
    auto g = MultiplicativeGroup::trivial();
    g.note = "rank-deficient lattice; multiplier ring is Z";
    return g;
  }
  OrderDescriptor order = make_order(multiplier_ring(L));
  MultiplicativeGroup g;
  if (order.degree() == 2) {
    g = MultiplicativeGroup::cyclic(quadratic_fundamental_unit(order));
    g.note = "quadratic order of discriminant " + order.discriminant.get_str();
  } else if (order.real_embeddings() == 1) {
    auto u = fundamental_unit_complex_cubic(order, UnitSearchConfig::from_environment());
    g = MultiplicativeGroup::cyclic(u.unit);
    char buf[160];
    std::snprintf(buf, sizeof buf, "complex cubic order of discriminant %s; minimal unit below %.6g; Artin bound %.6f",
                  order.discriminant.get_str().c_str(), u.search_bound, u.artin_lower_bound);
    g.note = buf;
  } else {
    auto tr = totally_real_unit_search(order);
    g = MultiplicativeGroup::rank_two(tr.generators[0], tr.generators[1]);
    g.certified = false;
    g.note = "verified unit system, fundamentality unchecked";
    ensure(tr.all_found_expressible, "small units are products of the chosen pair");
  }
  ensure(verify_inner_multipliers(E, g), "generators are inner multipliers");
  return g;
}

bool verify_inner_multipliers(const AdditiveSubgroup& E, const MultiplicativeGroup& g) {
  if (E.is_rank_one()) {
    for (auto p : g.primes) {
      // pE = E needs 1/p^k in E for every k.
      if (E.denominators().exponent(p).has_value()) return false;
    }
    return g.generators.empty();
  }
  for (const auto& t : g.generators) {
    if (!E.contains(t) || !E.contains(t.inverse())) return false;
    if (!(E.lattice().scaled(t) == E.lattice())) return false;
  }
  return g.primes.empty();
}

}  // namespace cantor
