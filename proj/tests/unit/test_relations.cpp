#include <set>

#include "cantor/error.hpp"
#include "cantor/exact/expression.hpp"
#include "cantor/relations/constructions.hpp"
#include "cantor/systems/denjoy.hpp"
#include "cantor/systems/odometer.hpp"
#include "cantor/systems/odometer_scaling.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace cantor;

namespace {

Odometer od(const char* base) { return Odometer(OdometerSpec::parse(base)); }
Denjoy golden() { return Denjoy(DenjoySpec::parse("(-1+sqrt(5))/2")); }
AlgebraicReal Q(long p, long q) { return AlgebraicReal(make_rational(p, q)); }

}  // namespace

TEST_CASE("group enumeration") {
  auto z = enumerate_prefix(1, 5);
  CHECK(z == std::vector<GroupElement>{{0, 0}, {1, 0}, {-1, 0}, {2, 0}, {-2, 0}});
  auto z2 = enumerate_prefix(2, 9);
  CHECK(z2 == std::vector<GroupElement>{{0, 0}, {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}});
  // Shell r holds 8r elements, so index 1 + 8 + 16 starts shell 3.
  CHECK(enumerate_element(2, 25) == GroupElement{-3, -3});
  std::set<GroupElement> seen(z2.begin(), z2.end());
  auto big = enumerate_prefix(2, 441);
  std::set<GroupElement> all(big.begin(), big.end());
  CHECK(all.size() == 441);
  for (const auto& g : big) CHECK(std::max(std::abs(g.a), std::abs(g.b)) <= 10);
  CHECK(to_string(GroupElement{3, -1}, 2) == "(3,-1)");
  CHECK(to_string(GroupElement{-4, 0}, 1) == "-4");
}

TEST_CASE("psi is a bijection") {
  std::set<std::int64_t> hit;
  for (std::int64_t i = 1; i <= 4; ++i) {
    for (std::int64_t k = 1; k <= 3; ++k) {
      auto j = psi(k, i, 3);
      hit.insert(j);
      CHECK(psi_inverse(j, 3) == std::pair<std::int64_t, std::int64_t>{k, i});
    }
  }
  CHECK(hit.size() == 12);
  CHECK(*hit.begin() == 1);
  CHECK(*hit.rbegin() == 12);
  CHECK(flat_level(Level{1, 1}) == 1);
  CHECK(flat_level(Level{2, 1}) == 2);
  CHECK(flat_level(Level{1, 2}) == 3);
}

TEST_CASE("steps") {
  std::vector<Step> s = {Step::translate({2, 0}), Step::prepend({0}), Step::strip({0}), Step::translate({-2, 0})};
  CHECK(simplify_steps(s).empty());
  auto inv = invert_steps({Step::translate({1, 0}), Step::prepend({0, 1})});
  CHECK(inv == std::vector<Step>{Step::strip({0, 1}), Step::translate({-1, 0})});
  CHECK(simplify_steps({Step::translate({1, 0}), Step::translate({2, 0})}) == std::vector<Step>{Step::translate({3, 0})});
}

TEST_CASE("spans") {
  CHECK(spans_equal({Q(1, 2), Q(1, 3)}, {Q(1, 6)}));
  CHECK_FALSE(spans_equal({Q(1, 2)}, {Q(1, 4)}));
  auto th = parse_real("(-1+sqrt(5))/2");
  CHECK(spans_equal({AlgebraicReal(1), th}, {AlgebraicReal(1) - th, AlgebraicReal(2) * th - AlgebraicReal(1)}));
  CHECK_FALSE(spans_equal({AlgebraicReal(1), th}, {AlgebraicReal(2), th}));
}

TEST_CASE("minimal cover") {
  auto two = od("2");
  auto c = minimal_cover(two, two.cylinder({0}));
  CHECK(c.elements == std::vector<GroupElement>{{0, 0}, {1, 0}});
  CHECK(c.pieces[0] == two.cylinder({0}));
  CHECK(c.pieces[1] == two.cylinder({1}));
  // With the enumeration 0, 1, -1 the third translate is [2] = phi^{-1}[0].
  auto three = od("3");
  auto c3 = minimal_cover(three, three.cylinder({0}));
  CHECK(c3.elements == std::vector<GroupElement>{{0, 0}, {1, 0}, {-1, 0}});
  CHECK(c3.pieces[2] == three.cylinder({2}));
  auto g = golden();
  auto cg = minimal_cover(g, g.arc({0, 0}, {1, 0}));
  CHECK(cg.elements == std::vector<GroupElement>{{0, 0}, {1, 0}});
  CHECK(minimal_cover(two, two.full()).elements.size() == 1);
  CHECK_THROWS_WITH_AS(minimal_cover(two, two.empty()), doctest::Contains("clopen set is empty"), Error);
  CHECK_THROWS_WITH_AS(minimal_cover(two, two.cylinder({0, 0, 0, 0}), 5), doctest::Contains("cover bound exceeded"),
                       Error);
}

TEST_CASE("property: minimal cover pieces partition X") {
  for (int trial = 0; trial < 40; ++trial) {
    auto o = Odometer(OdometerSpec{{}, {static_cast<std::uint64_t>(oracle::uniform(2, 5))}});
    auto cyl = o.cylinders(static_cast<unsigned>(oracle::uniform(1, 3)));
    auto U = cyl[static_cast<std::size_t>(oracle::uniform(0, static_cast<long>(cyl.size()) - 1))];
    auto c = minimal_cover(o, U);
    auto total = o.empty();
    Rational m = 0;
    for (const auto& p : c.pieces) {
      CHECK(disjoint(o, total, p));
      total = o.unite(total, p);
      m += o.exact_measure(p);
    }
    CHECK(total == o.full());
    CHECK(m == 1);
    // A prefix one shorter never covers.
    auto shorter = o.empty();
    for (std::size_t k = 0; k + 1 < c.elements.size(); ++k) shorter = o.unite(shorter, o.act(c.elements[k], U));
    CHECK(shorter != o.full());
  }
  auto c2 = Denjoy(DenjoySpec::parse("cbrt(2);cbrt(4)"));
  auto cov = minimal_cover(c2, c2.arc({0, 0}, {1, 0}));
  auto total = c2.empty();
  for (const auto& p : cov.pieces) total = c2.unite(total, p);
  CHECK(total == c2.full());
}

TEST_CASE("restriction") {
  auto two = od("2");
  auto U = two.cylinder({0});
  auto rep = restrict_system(two, U, 20, 8);
  CHECK(rep.value_groups_equal);
  CHECK(rep.transport_probes > 0);
  CHECK(rep.chain_probes == 200);
  CHECK(rep.kac == AlgebraicReal(1));
  // mu([1]) through U_2 = [1]: phi^{-1}([1]) = [0].
  auto back = two.act({-1, 0}, two.intersect(two.cylinder({1}), rep.cover.pieces[1]));
  CHECK(back == two.cylinder({0}));
  CHECK(two.measure(back) == Q(1, 2));
  auto whole = restrict_system(two, two.full(), 4, 4);
  CHECK(whole.cover.elements.size() == 1);
  CHECK(whole.returns.size() == 1);
  auto g = golden();
  auto rg = restrict_system(g, g.arc({0, 0}, {1, 0}), 20, 6, 50);
  CHECK(rg.value_groups_equal);
  CHECK(rg.kac == AlgebraicReal(1));
  CHECK(rg.value_group_lag == 0);
  CHECK(rep.value_group_lag == 0);
  // Two atoms of depth 1 inside U cannot span a rank-three group; depth 2 does.
  auto c2 = Denjoy(DenjoySpec::parse("cbrt(2);cbrt(4)"));
  auto r2 = restrict_system(c2, c2.arc({0, 0}, {1, 0}), 3, 2, 10);
  CHECK(r2.value_groups_equal);
  CHECK(r2.value_group_lag == 1);
}

TEST_CASE("property: restriction checks pass on random odometer clopens") {
  for (int trial = 0; trial < 8; ++trial) {
    auto o = Odometer(OdometerSpec{{}, {static_cast<std::uint64_t>(oracle::uniform(2, 4))}});
    auto cyl = o.cylinders(2);
    auto U = o.unite(cyl[0], cyl[static_cast<std::size_t>(oracle::uniform(0, static_cast<long>(cyl.size()) - 1))]);
    auto rep = restrict_system(o, U, 6, 4, 40);
    CHECK(rep.value_groups_equal);
    CHECK(rep.kac == AlgebraicReal(1));
  }
}

TEST_CASE("amplified invariant") {
  auto two = od("2");
  auto a = amplify_invariant(two, 3);
  CHECK(a.value_group == AdditiveSubgroup(RationalRankOne{Supernatural::parse("2^inf")}));
  CHECK(a.unit_class == 3);
  CHECK(amplify_invariant(two, 1).unit_class == 1);
  auto g = amplify_invariant(golden(), 2);
  CHECK(g.value_group == AdditiveSubgroup::parse("x^2-5; 1, (-1+a)/2"));
  CHECK(g.unit_class == 2);
  CHECK_THROWS_AS(amplify_invariant(two, 0), Error);
}

TEST_CASE("level embedding into U") {
  auto two = od("2");
  auto e = lemma31_embedding(two, two.cylinder({0}), 1);
  REQUIRE(e.map.rules.size() == 2);
  const auto& r1 = e.map.rules[0];
  CHECK(r1.source == two.cylinder({0}));
  CHECK(r1.target == two.cylinder({0}));
  CHECK(r1.target_level == Level{1, 1});
  const auto& r2 = e.map.rules[1];
  CHECK(r2.source == two.cylinder({1}));
  CHECK(r2.target == two.cylinder({0}));
  CHECK(r2.target_level == Level{2, 1});
  AlgebraicReal src(0), tgt(0);
  for (const auto& r : e.map.rules) {
    src += two.measure(r.source);
    tgt += two.measure(r.target);
  }
  CHECK(src == AlgebraicReal(1));
  CHECK(tgt == AlgebraicReal(1));
  auto e3 = lemma31_embedding(od("3"), od("3").cylinder({0}), 4);
  std::set<std::int64_t> levels;
  for (const auto& r : e3.map.rules) levels.insert(r.target_level.index);
  CHECK(levels.size() == 12);
}

TEST_CASE("brown homeomorphism") {
  for (const char* base : {"2", "3"}) {
    auto o = od(base);
    auto U = o.cylinder({0});
    auto b = brown_homeomorphism(o, U, 5);
    INFO(base);
    CHECK(b.report.injective);
    CHECK(b.report.total);
    CHECK(b.report.surjective);
    CHECK(b.report.relation_preserving);
    CHECK(b.report.fixes_base);
    CHECK(b.report.measure_balanced);
    CHECK(b.report.inverse_identity);
    CHECK(b.report.complete_cells > 0);
  }
  auto two = od("2");
  auto b2 = brown_homeomorphism(two, two.cylinder({0}), 2);
  CHECK(b2.report.ok());
  // E_1 at level j = psi(k, i): the translates of U_k back into U.
  CHECK(b2.E.at(Level{1, 1}) == two.empty());
  CHECK(b2.E.at(Level{2, 1}) == two.cylinder({0}));
  auto g = golden();
  auto bg = brown_homeomorphism(g, g.arc({0, 0}, {1, 0}), 4);
  CHECK(bg.report.ok());
}

TEST_CASE("scaling witnesses") {
  auto two = od("2");
  auto U = two.cylinder({0});
  auto h = prepend_map(two, {0});
  auto w = scaling_automorphism(two, U, h, 4, 6);
  CHECK(w.lambda == Q(1, 2));
  CHECK(leveled_measure(two, apply_map(two, w.F, two.cylinder({1}), Level{})) == Q(1, 4));
  CHECK(verify_scaling(two, w, 6));
  CHECK(verify_scaling(two, invert_witness(w), 6));
  CHECK(im_plus(two.value_group()).contains(w.lambda));

  auto id = odometer_witness(two, AlgebraicReal(1), 3, 6);
  REQUIRE(id);
  CHECK(id->lambda == AlgebraicReal(1));
  CHECK(verify_scaling(two, *id, 6));

  auto three = od("3");
  auto w3 = odometer_witness(three, Q(1, 3), witness_levels(three, {Q(1, 3)}), 6);
  REQUIRE(w3);
  CHECK(w3->lambda == Q(1, 3));
  CHECK(three.fundamental_group().contains(w3->lambda));
  CHECK_FALSE(odometer_witness(two, Q(1, 3), 4, 6).has_value());
  CHECK(period_power(two, Q(1, 8)) == -3);
  CHECK(period_power(two, AlgebraicReal(4)) == 2);
  CHECK_FALSE(period_power(two, Q(1, 6)).has_value());
}

TEST_CASE("orbit equivalence check rejects a broken map") {
  auto two = od("2");
  PiecewiseMap<OdSet> h;
  h.rules.push_back({two.cylinder({0}), Level{}, {Step::strip({0}), Step::prepend({0, 0, 0})}, Level{},
                     two.cylinder({0, 0, 0})});
  h.rules.push_back({two.cylinder({1}), Level{}, {Step::strip({1}), Step::prepend({0, 1})}, Level{}, two.cylinder({0, 1})});
  auto U = two.unite(two.cylinder({0, 0, 0}), two.cylinder({0, 1}));
  CHECK_FALSE(verify_orbit_equivalence(two, h, U, 6));
  CHECK_THROWS_WITH_AS(scaling_automorphism(two, U, h, 3, 6), doctest::Contains("not an orbit equivalence at clopen level"),
                       Error);
  CHECK(verify_orbit_equivalence(two, prepend_map(two, {0}), two.cylinder({0}), 6));
}

TEST_CASE("scaling group law at witness level") {
  auto two = od("2");
  auto run = [&](std::vector<AlgebraicReal> c) {
    auto L = witness_levels(two, c);
    return scaling_group_check(two, c, [&](const AlgebraicReal& l) { return odometer_witness(two, l, L, 6); }, 6);
  };
  auto r = run({Q(1, 2), AlgebraicReal(2)});
  CHECK(r.ok());
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].witnessed);
  CHECK(r.entries[1].witnessed);
  REQUIRE(r.products.size() == 3);
  CHECK(r.products[1].a * r.products[1].b == AlgebraicReal(1));
  CHECK(r.products[1].verified);
  auto rr = run({Q(1, 2), Q(1, 2)});
  CHECK(rr.ok());
  CHECK(rr.products[1].a * rr.products[1].b == Q(1, 4));
  auto u = run({Q(1, 3)});
  CHECK(u.ok());
  REQUIRE(u.entries.size() == 1);
  CHECK_FALSE(u.entries[0].witnessed);
  CHECK(u.entries[0].note == "unwitnessed");
}
