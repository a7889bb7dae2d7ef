#include <algorithm>
#include <numeric>

#include "cantor/error.hpp"
#include "cantor/exact/expression.hpp"
#include "cantor/relations/constructions.hpp"
#include "cantor/systems/denjoy.hpp"
#include "cantor/systems/odometer.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace cantor;

namespace {

AlgebraicReal R(const char* s) { return parse_real(s); }

Odometer od(const char* base) { return Odometer(OdometerSpec::parse(base)); }

std::vector<std::uint64_t> bases_of(const Odometer& o, unsigned k) {
  std::vector<std::uint64_t> b;
  for (unsigned i = 1; i <= k; ++i) b.push_back(o.spec().base(i));
  return b;
}

OdometerSpec random_spec() {
  static const std::vector<std::uint64_t> pool = {2, 3, 4, 5, 6, 7, 9, 10, 12, 15};
  OdometerSpec s;
  long pre = oracle::uniform(0, 3), per = oracle::uniform(1, 3);
  for (long i = 0; i < pre; ++i) s.preperiod.push_back(pool[static_cast<std::size_t>(oracle::uniform(0, 9))]);
  for (long i = 0; i < per; ++i) s.period.push_back(pool[static_cast<std::size_t>(oracle::uniform(0, 9))]);
  return s;
}

Denjoy golden() { return Denjoy(DenjoySpec::parse("(-1+sqrt(5))/2")); }

}  // namespace

TEST_CASE("odometer base parsing") {
  auto s = OdometerSpec::parse("2,3|5");
  CHECK(s.preperiod == std::vector<std::uint64_t>{2, 3});
  CHECK(s.period == std::vector<std::uint64_t>{5});
  CHECK(s.base(1) == 2);
  CHECK(s.base(4) == 5);
  CHECK(OdometerSpec::parse(s.to_string()) == s);
  CHECK(OdometerSpec::parse("6").period == std::vector<std::uint64_t>{6});
  CHECK_THROWS_AS(OdometerSpec::parse("2|"), Error);
  CHECK_THROWS_WITH_AS(OdometerSpec::parse("1"), doctest::Contains("at least 2"), Error);
  CHECK_THROWS_AS(OdometerSpec::parse("2,x"), Error);
}

TEST_CASE("supernatural of odometer bases") {
  CHECK(supernatural_of(OdometerSpec::parse("2")).to_string() == "2^inf");
  CHECK(supernatural_of(OdometerSpec::parse("2|3")).to_string() == "2^1*3^inf");
  CHECK(supernatural_of(OdometerSpec::parse("6")).to_string() == "2^inf*3^inf");
  CHECK(supernatural_of(OdometerSpec::parse("4,6|3")).to_string() == "2^3*3^inf");
}

TEST_CASE("phi on cylinders") {
  auto two = od("2");
  CHECK(two.apply_phi(two.cylinder({0}), 1).second == two.cylinder({1}));
  // The all-max word carries into deeper digits; the image is still a cylinder.
  auto [in, out] = two.apply_phi(two.cylinder({1, 1}), 1);
  CHECK(in == two.cylinder({1, 1}));
  CHECK(out == two.cylinder({0, 0}));
  auto three = od("3");
  auto [in3, out3] = three.apply_phi(three.cylinder({2, 2}), 1);
  CHECK(out3 == three.cylinder({0, 0}));
  CHECK(three.exact_measure(in3) == make_rational(1, 9));
  CHECK(three.exact_measure(out3) == make_rational(1, 9));
}

TEST_CASE("phi agrees with digit-wise carry") {
  for (const char* base : {"2", "3", "2,3|3,2", "5|2,3"}) {
    auto o = od(base);
    for (unsigned k = 1; k <= 5; ++k) {
      auto b = bases_of(o, k);
      for (const auto& c : o.cylinders(k)) {
        auto w = o.word_of(c.indices.empty() ? 0 : c.indices[0], c.depth);
        w.resize(k, 0);
        auto full_word = o.word_of(o.refine(c, k).indices[0], k);
        for (std::int64_t g = -7; g <= 7; ++g) {
          CHECK(o.act({g, 0}, c) == o.cylinder(oracle::odometer_add(b, full_word, g)));
        }
      }
    }
  }
}

TEST_CASE("odometer measures") {
  auto two = od("2");
  CHECK(two.exact_measure(two.cylinder({0})) == make_rational(1, 2));
  CHECK(two.exact_measure(two.full()) == 1);
  CHECK(two.exact_measure(two.cylinder({0})) + two.exact_measure(two.cylinder({1})) == 1);
  auto b23 = od("2,3");
  CHECK(b23.exact_measure(b23.cylinder({0, 2})) == make_rational(1, 6));
}

TEST_CASE("odometer set algebra is canonical") {
  auto o = od("2,3");
  CHECK(o.unite(o.cylinder({0}), o.cylinder({1})) == o.full());
  CHECK(o.unite(o.unite(o.cylinder({0, 0}), o.cylinder({0, 1})), o.cylinder({0, 2})) == o.cylinder({0}));
  CHECK(o.subtract(o.full(), o.cylinder({1})) == o.cylinder({0}));
  CHECK(o.intersect(o.cylinder({0}), o.cylinder({1, 2})) == o.empty());
  auto s = o.parse_set("[0,1]+[1]");
  CHECK(o.parse_set(o.describe(s)) == s);
  CHECK(o.describe(o.full()) == "X");
  CHECK(o.describe(o.empty()) == "{}");
  CHECK_THROWS_WITH_AS(o.cylinder({2}), doctest::Contains("digit out of range"), Error);
}

TEST_CASE("prepend and strip") {
  auto two = od("2");
  Step p = Step::prepend({0});
  auto img = two.apply(p, two.cylinder({1, 0}));
  CHECK(img == two.cylinder({0, 1, 0}));
  CHECK(two.apply(p.inverse(), img) == two.cylinder({1, 0}));
  CHECK(two.step_scale(p) == make_rational(1, 2));
  CHECK_THROWS_WITH_AS(two.apply(Step::strip({0}), two.cylinder({1})), doctest::Contains("strip outside cylinder"),
                       Error);
  auto pre = od("2|3");
  CHECK_THROWS_WITH_AS(pre.apply(p, pre.full()), doctest::Contains("shift-invariant"), Error);
  // Conjugacy of the induced map on [0] with phi: 0(x+1) = 0x + 2.
  for (unsigned k = 1; k <= 4; ++k) {
    for (const auto& c : two.cylinders(k)) {
      CHECK(two.apply(p, two.act({1, 0}, c)) == two.act({2, 0}, two.apply(p, c)));
    }
  }
}

TEST_CASE("property: odometer action preserves measure on cylinders of depth <= 8") {
  for (const char* base : {"2", "3", "2,3"}) {
    auto o = od(base);
    for (unsigned k = 1; k <= 8; ++k) {
      for (const auto& c : o.cylinders(k)) {
        for (std::int64_t g : {1, -1, 5}) REQUIRE(o.exact_measure(o.act({g, 0}, c)) == o.exact_measure(c));
        REQUIRE(o.act({-1, 0}, o.act({1, 0}, c)) == c);
      }
    }
  }
}

TEST_CASE("property: disjointified translates of a first-digit cylinder partition X") {
  for (const char* base : {"2", "3", "5", "2,3", "3|2"}) {
    auto o = od(base);
    auto U = o.cylinder({0});
    auto n = static_cast<std::int64_t>(o.spec().base(1));
    auto covered = o.empty();
    Rational total = 0;
    for (std::int64_t k = 0; k < n; ++k) {
      auto Uk = o.subtract(o.act({k, 0}, U), covered);
      CHECK(o.intersect(Uk, covered) == o.empty());
      covered = o.unite(covered, Uk);
      total += o.exact_measure(Uk);
    }
    CHECK(covered == o.full());
    CHECK(total == 1);
  }
}

TEST_CASE("odometer value groups and fundamental groups") {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    auto o = Odometer(OdometerSpec{{}, {p}});
    CHECK(o.value_group() == AdditiveSubgroup(RationalRankOne{Supernatural::infinite_power(p)}));
    CHECK(o.fundamental_group() == MultiplicativeGroup::prime_generated({p}));
  }
  CHECK(od("2|3").fundamental_group() == MultiplicativeGroup::prime_generated({3}));
  CHECK(od("2|3").value_group().denominators().to_string() == "2^1*3^inf");
  CHECK(od("6").value_group().denominators().to_string() == "2^inf*3^inf");
  CHECK(od("210").fundamental_group() == MultiplicativeGroup::prime_generated({2, 3, 5, 7}));
}

TEST_CASE("property: odometer group paths agree and match the exponent oracle") {
  for (int trial = 0; trial < 30; ++trial) {
    auto spec = random_spec();
    Odometer o(spec);
    auto direct = o.fundamental_group();
    CHECK(direct == im_plus(o.value_group()));
    auto oracle_primes = oracle::unbounded_primes(spec.preperiod, spec.period);
    std::vector<std::uint64_t> expect(oracle_primes.begin(), oracle_primes.end());
    CHECK(direct == MultiplicativeGroup::prime_generated(expect));
    // Finite exponents from the preperiod.
    auto sn = supernatural_of(spec);
    for (const auto& [p, e] : sn.exponents()) {
      if (e) CHECK(static_cast<int>(*e) == oracle::cumulative_exponent(spec.preperiod, spec.period,
                                                                       static_cast<std::int64_t>(p), spec.preperiod.size()));
    }
  }
}

TEST_CASE("property: reordering and blocking leave the invariants unchanged") {
  for (int trial = 0; trial < 30; ++trial) {
    auto spec = random_spec();
    auto reordered = spec;
    std::reverse(reordered.preperiod.begin(), reordered.preperiod.end());
    std::rotate(reordered.period.begin(), reordered.period.begin() + 1, reordered.period.end());
    CHECK(supernatural_of(reordered) == supernatural_of(spec));
    // Block the period doubled into consecutive pairs, and the preperiod's first two entries.
    auto blocked = spec;
    blocked.period.clear();
    auto twice = spec.period;
    twice.insert(twice.end(), spec.period.begin(), spec.period.end());
    for (std::size_t i = 0; i + 1 < twice.size(); i += 2) blocked.period.push_back(twice[i] * twice[i + 1]);
    if (spec.preperiod.size() >= 2) {
      blocked.preperiod = {spec.preperiod[0] * spec.preperiod[1]};
      blocked.preperiod.insert(blocked.preperiod.end(), spec.preperiod.begin() + 2, spec.preperiod.end());
    }
    CHECK(supernatural_of(blocked) == supernatural_of(spec));
    CHECK(odometer_group_direct(blocked) == odometer_group_direct(spec));
    CHECK(odometer_group_direct(reordered) == odometer_group_direct(spec));
  }
}

TEST_CASE("first return") {
  auto two = od("2");
  auto r = first_return(two, two.cylinder({0}));
  REQUIRE(r.size() == 1);
  CHECK(r[0].time == 2);
  CHECK(r[0].piece == two.cylinder({0}));
  auto full = first_return(two, two.full());
  REQUIRE(full.size() == 1);
  CHECK(full[0].time == 1);
  auto b23 = od("2,3");
  auto r23 = first_return(b23, b23.cylinder({0}));
  for (const auto& p : r23) CHECK(p.time == 2);
  CHECK(kac_sum(b23, r23) == AlgebraicReal(1));
  auto sub = two.parse_set("[0,0]+[1,1,0]");
  CHECK(kac_sum(two, first_return(two, sub)) == AlgebraicReal(1));
  auto m = induced_map(two, r);
  CHECK(check_map(two, m).ok());
}

TEST_CASE("property: Kac identity for random odometer clopens") {
  for (int trial = 0; trial < 40; ++trial) {
    auto o = Odometer(random_spec());
    unsigned k = static_cast<unsigned>(oracle::uniform(1, 3));
    auto cyl = o.cylinders(k);
    auto U = o.empty();
    for (const auto& c : cyl) {
      if (oracle::uniform(0, 2) == 0) U = o.unite(U, c);
    }
    if (U == o.empty()) U = cyl.front();
    CHECK(kac_sum(o, first_return(o, U)) == AlgebraicReal(1));
  }
}

TEST_CASE("denjoy specs") {
  auto g = golden();
  CHECK(g.rank() == 1);
  CHECK(g.spec().thetas[0] == R("(-1+sqrt(5))/2"));
  // Reduced into (0, 1).
  CHECK(Denjoy(DenjoySpec::parse("(1+sqrt(5))/2")).spec().thetas[0] == R("(-1+sqrt(5))/2"));
  CHECK_THROWS_WITH_AS(DenjoySpec::parse("3/7"), doctest::Contains("theta must be irrational"), Error);
  CHECK_THROWS_WITH_AS(DenjoySpec::parse("cbrt(2); 2*cbrt(2)"), doctest::Contains("thetas not independent"), Error);
  CHECK_THROWS_WITH_AS(DenjoySpec::parse("sqrt(2); sqrt(3)"), doctest::Contains("field mismatch"), Error);
  for (const char* text : {"(-1+sqrt(5))/2", "cbrt(2);cbrt(4)", "2*cos(2*pi/7); 4*cos(2*pi/7)^2"}) {
    auto s = DenjoySpec::parse(text);
    auto back = DenjoySpec::parse(s.to_string());
    REQUIRE(back.thetas.size() == s.thetas.size());
    for (std::size_t i = 0; i < s.thetas.size(); ++i) CHECK(back.thetas[i] == s.thetas[i]);
  }
}

TEST_CASE("arc measures") {
  auto g = golden();
  AlgebraicReal theta = R("(-1+sqrt(5))/2");
  CHECK(g.measure(g.full()) == AlgebraicReal(1));
  CHECK(g.measure(g.arc({0, 0}, {0, 0})) == AlgebraicReal(1));
  auto a01 = g.arc({0, 0}, {1, 0});
  CHECK(g.measure(a01) == theta);
  auto a12 = g.arc({1, 0}, {2, 0});
  // [theta, 2 theta mod 1) wraps through 0.
  CHECK(a12.bounds.size() == 4);
  CHECK(g.measure(a01) + g.measure(a12) == AlgebraicReal(2) * theta);
  CHECK(g.unite(a01, a12) == g.full());
  CHECK_THROWS_WITH_AS(g.arc_measure({a01, a12}), doctest::Contains("overlapping arcs"), Error);
  CHECK(g.arc_measure({a01, g.arc({1, 0}, {0, 0})}) == AlgebraicReal(1));
}

TEST_CASE("rotations") {
  auto g = golden();
  auto a = g.arc({0, 0}, {1, 0});
  CHECK(g.act({}, a) == a);
  CHECK(g.act({1, 0}, a) == g.arc({1, 0}, {2, 0}));
  CHECK(g.act({-1, 0}, g.act({1, 0}, a)) == a);
  auto s = g.parse_set("[0,1)+[3,-2)");
  CHECK(g.parse_set(g.describe(s)) == s);
}

TEST_CASE("property: rotation preserves arc measure and matches the float oracle") {
  auto g = golden();
  long double th = static_cast<long double>(g.spec().thetas[0].to_double());
  for (int trial = 0; trial < 100; ++trial) {
    Cut a{oracle::uniform(-20, 20), 0}, b{oracle::uniform(-20, 20), 0};
    auto A = g.arc(a, b);
    std::int64_t k = oracle::uniform(-10, 10);
    auto B = g.act({k, 0}, A);
    CHECK(g.measure(B) == g.measure(A));
    long double pa = oracle::circle_point(th, 0, a.n, 0), pb = oracle::circle_point(th, 0, b.n, 0);
    long double len = a.n == b.n ? 1.0L : pb - pa + (pb < pa ? 1.0L : 0.0L);
    CHECK(static_cast<long double>(g.measure(A).to_double()) == doctest::Approx(static_cast<double>(len)).epsilon(1e-12));
  }
  auto c2 = Denjoy(DenjoySpec::parse("cbrt(2);cbrt(4)"));
  for (int trial = 0; trial < 30; ++trial) {
    auto A = c2.arc({oracle::uniform(-5, 5), oracle::uniform(-5, 5)}, {oracle::uniform(-5, 5), oracle::uniform(-5, 5)});
    GroupElement h{oracle::uniform(-10, 10), oracle::uniform(-10, 10)};
    CHECK(c2.measure(c2.act(h, A)) == c2.measure(A));
  }
}

TEST_CASE("property: cut points of the cubic Z^2 system never collide") {
  auto s = DenjoySpec::parse("cbrt(2);cbrt(4)");
  // n theta1 + m theta2 = n' theta1 + m' theta2 mod 1 would need a rational difference.
  for (std::int64_t dn = -100; dn <= 100; ++dn) {
    for (std::int64_t dm = -100; dm <= 100; ++dm) {
      if (dn == 0 && dm == 0) continue;
      REQUIRE_FALSE((AlgebraicReal(dn) * s.thetas[0] + AlgebraicReal(dm) * s.thetas[1]).is_rational());
    }
  }
}

TEST_CASE("property: orbit cuts 0..k partition the circle") {
  auto g = golden();
  for (int k = 1; k <= 30; ++k) {
    std::vector<Cut> c;
    for (int i = 0; i <= k; ++i) c.push_back({i, 0});
    std::sort(c.begin(), c.end(), [&](const Cut& x, const Cut& y) { return g.compare_cuts(x, y) < 0; });
    std::vector<ArcSet> arcs;
    for (std::size_t i = 0; i < c.size(); ++i) arcs.push_back(g.arc(c[i], i + 1 < c.size() ? c[i + 1] : Cut{}));
    CHECK(g.arc_measure(arcs) == AlgebraicReal(1));
    auto u = g.empty();
    for (const auto& a : arcs) u = g.unite(u, a);
    CHECK(u == g.full());
  }
}

TEST_CASE("atoms") {
  auto g = golden();
  auto atoms = g.atoms(1);
  REQUIRE(atoms.size() == 3);
  AlgebraicReal theta = R("(-1+sqrt(5))/2");
  CHECK(g.measure(atoms[0]) == AlgebraicReal(1) - theta);
  CHECK(g.measure(atoms[1]) == AlgebraicReal(2) * theta - AlgebraicReal(1));
  auto within = g.atom_measures(g.arc({0, 0}, {1, 0}), 1);
  REQUIRE(within.size() == 2);
  CHECK(within[0] + within[1] == theta);
}

TEST_CASE("denjoy value groups") {
  CHECK(golden().value_group() == AdditiveSubgroup::parse("x^2-5; 1, (-1+a)/2"));
  CHECK(Denjoy(DenjoySpec::parse("cbrt(2);cbrt(4)")).value_group() == AdditiveSubgroup::parse("x^3-2; 1, a, a^2"));
  CHECK(Denjoy(DenjoySpec::parse("1/sqrt(5)")).value_group() == AdditiveSubgroup::parse("x^2-5; 1, a/5"));
}

TEST_CASE("denjoy fundamental groups") {
  CHECK(golden().fundamental_group() == MultiplicativeGroup::cyclic(R("(1+sqrt(5))/2")));
  CHECK(Denjoy(DenjoySpec::parse("1/sqrt(5)")).fundamental_group() == MultiplicativeGroup::cyclic(R("2+sqrt(5)")));
  CHECK(Denjoy(DenjoySpec::parse("sqrt(5)-2")).fundamental_group() == MultiplicativeGroup::cyclic(R("2+sqrt(5)")));
  CHECK(Denjoy(DenjoySpec::parse("1/sqrt(5)")).fundamental_group().contains(R("sqrt(5)-2")));
  CHECK(Denjoy(DenjoySpec::parse("cbrt(2)-1")).fundamental_group().kind == MultiplicativeGroup::Kind::trivial);
  CHECK(Denjoy(DenjoySpec::parse("cbrt(2);cbrt(4)")).fundamental_group() ==
        MultiplicativeGroup::cyclic(R("1+cbrt(2)+cbrt(4)")));
  CHECK(theta_discriminant(R("1/sqrt(5)")) == 20);
  CHECK(theta_discriminant(R("(-1+sqrt(5))/2")) == 5);
}

TEST_CASE("property: quadratic denjoy groups are presentation independent and agree across paths") {
  for (const char* t : {"(-1+sqrt(5))/2", "sqrt(5)-2", "1/sqrt(5)", "sqrt(2)-1", "(1+sqrt(13))/6", "sqrt(7)/3"}) {
    auto theta = R(t);
    auto base = Denjoy(DenjoySpec::make({theta})).fundamental_group();
    CHECK(base == im_plus(Denjoy(DenjoySpec::make({theta})).value_group()));
    for (long k = -3; k <= 3; ++k) {
      CHECK(Denjoy(DenjoySpec::make({AlgebraicReal(k) - theta})).fundamental_group() == base);
      CHECK(Denjoy(DenjoySpec::make({theta + AlgebraicReal(k)})).fundamental_group() == base);
    }
  }
}
