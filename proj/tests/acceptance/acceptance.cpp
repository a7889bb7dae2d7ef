// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "cantor/cli/cli.hpp"
#include "cantor/error.hpp"
#include "cantor/exact/expression.hpp"
#include "cantor/lattice/subgroup.hpp"
#include "cantor/relations/constructions.hpp"
#include "cantor/systems/denjoy.hpp"
#include "cantor/systems/odometer.hpp"
#include "cantor/systems/odometer_scaling.hpp"
#include "cantor/units/pell.hpp"
#include "cantor/units/units.hpp"
#include "support/oracles.hpp"

using namespace cantor;

namespace {

// Pinned limits.
constexpr double kPellSeconds = 10.0;
constexpr double kBrownSeconds = 30.0;
constexpr double kRegulatorFloor = 1e-10;
constexpr std::int64_t kPellExhaustive = 10000;
constexpr std::int64_t kPellCrossBound = 1000000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

AlgebraicReal R(const char* s) { return parse_real(s); }

struct Check {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

nlohmann::json cli_json(std::vector<std::string> args) {
  args.insert(args.begin(), "cantor-fg");
  std::ostringstream out, err;
  int status = cli::run(args, out, err);
  if (status != 0) fail_invariant("cli exit status " + std::to_string(status), err.str());
  return nlohmann::json::parse(out.str());
}

Check odometer_groups() {
  Check c;
  for (std::uint64_t p : {2, 3, 5, 7}) {
    auto j = cli_json({"fg", "odometer", "--base", std::to_string(p)});
    c.require(j["group"]["kind"] == "prime_generated" && j["group"]["primes"] == nlohmann::json::array({p}),
              "cli base " + std::to_string(p));
    c.require(odometer_group_direct(OdometerSpec::parse(std::to_string(p))) == MultiplicativeGroup::prime_generated({p}),
              "library base " + std::to_string(p));
  }
  auto six = cli_json({"fg", "odometer", "--base", "6"});
  c.require(six["group"]["primes"] == nlohmann::json::array({2, 3}), "base 6");
  auto pre = cli_json({"fg", "odometer", "--base", "2|3"});
  c.require(pre["group"]["primes"] == nlohmann::json::array({3}), "preperiod 2, period 3");
  if (c.ok) c.detail = "<2>,<3>,<5>,<7>; base 6 -> <2,3>; 2|3 -> <3>";
  return c;
}

Check denjoy_groups() {
  Check c;
  auto group = [](const char* t) { return Denjoy(DenjoySpec::parse(t)).fundamental_group(); };
  c.require(group("(-1+sqrt(5))/2") == MultiplicativeGroup::cyclic(R("(1+sqrt(5))/2")), "golden theta");
  c.require(group("sqrt(5)-2") == MultiplicativeGroup::cyclic(R("2+sqrt(5)")), "sqrt(5)-2");
  c.require(group("1/sqrt(5)") == MultiplicativeGroup::cyclic(R("2+sqrt(5)")), "1/sqrt(5)");
  c.require(group("1/sqrt(5)").contains(R("sqrt(5)-2")), "sqrt(5)-2 generates the same group");
  c.require(group("cbrt(2)-1").kind == MultiplicativeGroup::Kind::trivial, "cbrt(2)-1");
  if (c.ok) c.detail = "(1+sqrt5)/2; 2+sqrt5 twice; cbrt(2)-1 trivial";
  return c;
}

Check pell_suite() {
  Check c;
  auto start = Clock::now();
  std::size_t count = 0, exhaustive = 0, certified = 0;
  for (long D = 5; D <= 500; ++D) {
    if (!is_quadratic_discriminant(BigInt(D))) continue;
    ++count;
    auto s = pell_min_solution(BigInt(D));
    c.require(s.t * s.t - BigInt(D) * s.u * s.u == s.sign, "identity at D=" + std::to_string(D));
    auto brute = oracle::pell_brute_force(D, kPellExhaustive);
    if (brute) {
      ++exhaustive;
      c.require(s.t == brute->t && s.u == brute->u && s.sign == brute->sign, "brute force at D=" + std::to_string(D));
    } else {
      auto x = pell_cross_check(BigInt(D), kPellCrossBound);
      c.require(x.agree, "cross check at D=" + std::to_string(D));
      ++certified;
    }
  }
  double t = seconds_since(start);
  c.require(t < kPellSeconds, "runtime " + std::to_string(t) + " s");
  if (c.ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu discriminants: %zu by exhaustive search, %zu by search + power bound; %.2f s",
                  count, exhaustive, certified, t);
    c.detail = buf;
  }
  return c;
}

Check cubic_units() {
  Check c;
  auto pure = [](long m) { return equation_order(NumberField::make({BigInt(-m), 0, 0, 1}, 0)); };
  auto u2 = fundamental_unit_complex_cubic(pure(2), UnitSearchConfig::from_environment());
  c.require(u2.unit == R("1+cbrt(2)+cbrt(4)") && u2.unit.norm() == 1, "Q(cbrt 2) unit");
  c.require(u2.search_bound >= u2.artin_lower_bound, "search covers the Artin bound");
  auto u3 = fundamental_unit_complex_cubic(pure(3), UnitSearchConfig::from_environment());
  c.require(u3.unit == R("4+3*cbrt(3)+2*cbrt(9)") && u3.unit.norm() == 1, "Q(cbrt 3) unit");
  Rational printed = R("4+3*cbrt(2)+2*cbrt(4)").norm();
  c.require(printed != 1, "printed symbols");
  auto h = equation_order(heptagonal_field());
  AlgebraicReal t = R("2*cos(2*pi/7)");
  auto rep = verify_unit_system(h, {AlgebraicReal(-1) + t + t * t, AlgebraicReal(2) - t * t});
  bool norms = true;
  for (const auto& n : rep.norms) norms = norms && (n == 1 || n == -1);
  c.require(rep.each_is_unit && norms, "heptagonal units");
  c.require(rep.independent && std::stod(rep.regulator_lower_bound) > kRegulatorFloor, "heptagonal regulator");
  auto g = im_plus(AdditiveSubgroup::from_generators(h.field(), h.lattice.basis()));
  c.require(!g.certified && g.note.find("fundamentality unchecked") != std::string::npos, "totally real flagged");
  if (c.ok) {
    c.detail = "1+cbrt2+cbrt4 (bound " + std::to_string(static_cast<long>(u2.search_bound)) +
               "); 4+3cbrt3+2cbrt9; printed 4+3cbrt2+2cbrt4 has norm " + printed.get_str() +
               " (discrepant); heptagonal regulator >= " + rep.regulator_lower_bound + ", fundamentality unverified";
  }
  return c;
}

Check nine_adic() {
  Check c;
  auto g = im_plus(AdditiveSubgroup(RationalRankOne{Supernatural::parse("9^inf")}));
  c.require(g == MultiplicativeGroup::prime_generated({3}), "9^inf");
  if (c.ok) c.detail = "im_plus(Z[1/9^inf]) = <3>";
  return c;
}

Check measure_invariance() {
  Check c;
  std::size_t n = 0;
  for (const char* base : {"2", "3", "2,3"}) {
    Odometer o(OdometerSpec::parse(base));
    for (unsigned k = 1; k <= 8; ++k) {
      for (const auto& cyl : o.cylinders(k)) {
        auto [in, out] = o.apply_phi(cyl, 1);
        c.require(in == cyl && o.exact_measure(out) == o.exact_measure(cyl), std::string("odometer ") + base);
        ++n;
      }
    }
  }
  Denjoy g(DenjoySpec::parse("(-1+sqrt(5))/2"));
  oracle::rng().seed(0xacce);
  for (int i = 0; i < 100; ++i) {
    auto A = g.arc({oracle::uniform(-30, 30), 0}, {oracle::uniform(-30, 30), 0});
    std::int64_t k = oracle::uniform(-10, 10);
    c.require(g.measure(g.act({k, 0}, A)) == g.measure(A), "golden rotation");
    ++n;
  }
  if (c.ok) c.detail = std::to_string(n) + " exact comparisons";
  return c;
}

Check restriction() {
  Check c;
  Odometer two(OdometerSpec::parse("2"));
  auto r = restrict_system(two, two.cylinder({0}), 20, 8);
  c.require(r.value_groups_equal && r.kac == AlgebraicReal(1), "2-odometer");
  Denjoy g(DenjoySpec::parse("(-1+sqrt(5))/2"));
  auto rg = restrict_system(g, g.arc({0, 0}, {1, 0}), 20, 6);
  c.require(rg.value_groups_equal && rg.kac == AlgebraicReal(1), "golden Denjoy");
  if (c.ok) {
    c.detail = std::to_string(r.transport_probes + rg.transport_probes) + " transport and " +
               std::to_string(r.chain_probes + rg.chain_probes) + " chain probes, depth 20";
  }
  return c;
}

Check brown() {
  Check c;
  auto start = Clock::now();
  std::size_t rules = 0;
  for (const char* base : {"2", "3"}) {
    Odometer o(OdometerSpec::parse(base));
    auto b = brown_homeomorphism(o, o.cylinder({0}), 5);
    c.require(b.report.ok() && b.report.complete_cells > 0, std::string("odometer ") + base);
    rules += b.report.rules;
  }
  double t = seconds_since(start);
  c.require(t < kBrownSeconds, "runtime");
  if (c.ok) c.detail = std::to_string(rules) + " rules at levels <= 5, " + std::to_string(t).substr(0, 5) + " s";
  return c;
}

Check scaling() {
  Check c;
  for (std::uint64_t p : {2, 3}) {
    Odometer o(OdometerSpec{{}, {p}});
    auto lambda = AlgebraicReal(make_rational(1, static_cast<long>(p)));
    std::vector<AlgebraicReal> cands = {lambda, lambda.inverse(), lambda};
    auto L = witness_levels(o, cands);
    auto w = scaling_automorphism(o, o.cylinder({0}), prepend_map(o, {0}), L, 6);
    c.require(w.lambda == lambda, "lambda = 1/p");
    for (unsigned k = 1; k <= 6; ++k) {
      for (const auto& V : o.cylinders(k)) {
        c.require(leveled_measure(o, apply_map(o, w.F, V, Level{})) == lambda * o.measure(V), "depth-6 cylinder");
      }
    }
    auto rep = scaling_group_check(
        o, cands, [&](const AlgebraicReal& l) { return odometer_witness(o, l, L, 6); }, 6);
    c.require(rep.ok() && rep.products.size() == 6, "group law");
    for (const auto& e : rep.entries) c.require(e.witnessed && e.in_im_plus, "inside im_plus");
  }
  if (c.ok) c.detail = "1/2 and 1/3 exact on depth <= 6; inverses and products re-verified";
  return c;
}

Check cross_path() {
  Check c;
  oracle::rng().seed(0x30);
  static const std::vector<std::uint64_t> pool = {2, 3, 4, 5, 6, 7, 9, 10, 12, 15};
  for (int i = 0; i < 30; ++i) {
    OdometerSpec s;
    for (long k = oracle::uniform(0, 3); k > 0; --k) s.preperiod.push_back(pool[static_cast<std::size_t>(oracle::uniform(0, 9))]);
    for (long k = oracle::uniform(1, 3); k > 0; --k) s.period.push_back(pool[static_cast<std::size_t>(oracle::uniform(0, 9))]);
    Odometer o(s);
    c.require(odometer_group_direct(s) == im_plus(o.value_group()), "odometer " + s.to_string());
  }
  for (const char* t : {"(-1+sqrt(5))/2", "sqrt(5)-2", "1/sqrt(5)"}) {
    Denjoy d(DenjoySpec::parse(t));
    c.require(denjoy_group_direct(d.spec()) == im_plus(d.value_group()), t);
  }
  if (c.ok) c.detail = "30 odometer specs and 3 quadratic thetas";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"odometer groups", odometer_groups},     {"quadratic Denjoy groups", denjoy_groups},
      {"Pell suite", pell_suite},               {"cubic unit groups", cubic_units},
      {"3^n versus 9^n", nine_adic},            {"measure invariance", measure_invariance},
      {"restriction machinery", restriction},   {"Brown construction", brown},
      {"scaling witnesses", scaling},           {"cross-path consistency", cross_path},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    failed += !c.ok;
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << c.detail << "\n";
  }
  return failed ? 1 : 0;
}
