#include "cantor/cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <variant>

#include "cantor/error.hpp"
#include "cantor/exact/expression.hpp"
#include "cantor/lattice/subgroup.hpp"
#include "cantor/relations/constructions.hpp"
#include "cantor/systems/denjoy.hpp"
#include "cantor/systems/odometer.hpp"
#include "cantor/systems/odometer_scaling.hpp"
#include "cantor/units/pell.hpp"

namespace cantor::cli {

namespace {

using Json = nlohmann::ordered_json;
using System = std::variant<Odometer, Denjoy>;

constexpr const char* kSchema = "cantor-fg/1";
constexpr unsigned kDigits = 12;

Json header(const std::string& command) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

Json rational_json(const Rational& q) { return q.get_str(); }

Json number_json(const AlgebraicReal& x) {
  Json j;
  j["minpoly"] = x.minimal_polynomial().to_string();
  if (x.has_field()) j["field"] = x.field()->to_string() + "@" + std::to_string(x.field()->root_index());
  Json coords = Json::array();
  for (const auto& c : x.coords()) coords.push_back(rational_json(c));
  j["coords"] = coords;
  j["decimal"] = x.approximate(kDigits);
  return j;
}

Json group_json(const MultiplicativeGroup& g) {
  Json j;
  j["kind"] = kind_name(g.kind);
  Json gens = Json::array();
  for (const auto& x : g.generators) gens.push_back(number_json(x));
  j["generators"] = gens;
  j["primes"] = g.primes;
  j["certified"] = g.certified;
  j["note"] = g.note;
  return j;
}

System parse_system(const std::string& text) {
  std::string s = normalize_input(text);
  auto colon = s.find(':');
  if (colon == std::string::npos) fail_parse("system needs 'kind:spec'", text);
  std::string kind = s.substr(0, colon), rest = s.substr(colon + 1);
  if (kind == "odometer") return Odometer(OdometerSpec::parse(rest));
  if (kind == "denjoy" || kind == "denjoy2") {
    Denjoy d(DenjoySpec::parse(rest));
    if ((kind == "denjoy2") != (d.rank() == 2)) fail_parse("wrong number of thetas", text);
    return d;
  }
  fail_parse("unknown system kind", kind);
}

template <class Set>
Json rules_json(const auto& sys, const PiecewiseMap<Set>& m) {
  Json rules = Json::array();
  for (const auto& r : m.rules) {
    Json j;
    j["source"] = sys.describe(r.source);
    j["source_level"] = {r.source_level.index, r.source_level.stage};
    Json steps = Json::array();
    for (const auto& st : r.steps) steps.push_back(to_string(st, sys.rank()));
    j["steps"] = steps;
    j["target_level"] = {r.target_level.index, r.target_level.stage};
    j["target"] = sys.describe(r.target);
    rules.push_back(j);
  }
  return rules;
}

template <class Set>
Json cover_json(const auto& sys, const Cover<Set>& c) {
  Json j = Json::array();
  for (std::size_t k = 0; k < c.elements.size(); ++k) {
    j.push_back({{"g", to_string(c.elements[k], sys.rank())}, {"piece", sys.describe(c.pieces[k])}});
  }
  return j;
}

/// Flattens a report into "path: value" lines.
void render_text(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], path + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    out << path << ": " << j.get<std::string>() << "\n";
  } else {
    out << path << ": " << j.dump() << "\n";
  }
}

struct Options {
  std::string format = "json";
  // fg
  std::string base, supernatural, theta, theta1, theta2, lattice;
  // verify and describe
  std::string system = "odometer:2";
  std::string clopen;
  long dmin = 5, dmax = 500;
  std::int64_t pell_bound = 1000000;
  std::int64_t levels = 4;
  unsigned depth = 8, test_depth = 6, samples = 200;
  long power = 1;
  std::vector<std::string> lambdas;
  long amplify = 1;
};

struct Outcome {
  Json report;
  int status = Status::ok;
};

Outcome fg_odometer(const Options& o) {
  Outcome r{header("fg odometer")};
  if (!o.base.empty()) {
    auto spec = OdometerSpec::parse(o.base);
    Odometer od(spec);
    auto direct = od.fundamental_group();
    auto via = im_plus(od.value_group());
    r.report["system"] = od.describe();
    r.report["supernatural"] = supernatural_of(spec).to_string();
    r.report["group"] = group_json(direct);
    r.report["paths_agree"] = direct == via;
    if (!(direct == via)) r.status = Status::check_failed;
  } else {
    auto E = AdditiveSubgroup(RationalRankOne{Supernatural::parse(o.supernatural)});
    r.report["supernatural"] = E.denominators().to_string();
    r.report["group"] = group_json(im_plus(E));
  }
  return r;
}

Outcome fg_denjoy(const Options& o, bool two) {
  Outcome r{header(two ? "fg denjoy2" : "fg denjoy")};
  auto spec = two ? DenjoySpec::make({parse_real(o.theta1), parse_real(o.theta2)})
                  : DenjoySpec::make({parse_real(o.theta)});
  Denjoy d(spec);
  r.report["system"] = d.describe();
  r.report["value_group"] = d.value_group().to_string();
  if (!two && spec.thetas[0].degree() == 2) r.report["theta_discriminant"] = theta_discriminant(spec.thetas[0]).get_str();
  auto direct = d.fundamental_group();
  r.report["group"] = group_json(direct);
  auto via = im_plus(d.value_group());
  r.report["paths_agree"] = direct == via;
  if (!(direct == via)) r.status = Status::check_failed;
  return r;
}

Outcome fg_subgroup(const Options& o) {
  Outcome r{header("fg subgroup")};
  auto E = o.lattice.empty() ? AdditiveSubgroup(RationalRankOne{Supernatural::parse(o.supernatural)})
                             : AdditiveSubgroup::parse(o.lattice);
  r.report["subgroup"] = E.to_string();
  if (!E.is_rank_one() && E.lattice().full_rank()) {
    auto O = multiplier_ring(E.lattice());
    Json basis = Json::array();
    for (const auto& b : O.basis()) basis.push_back(b.to_string());
    r.report["multiplier_ring"] = {{"basis", basis}, {"discriminant", O.discriminant().get_str()}};
  }
  r.report["group"] = group_json(im_plus(E));
  return r;
}

Outcome verify_pell(const Options& o) {
  Outcome r{header("verify pell")};
  if (o.dmin < 1 || o.dmax < o.dmin) fail_precondition("empty discriminant range");
  Json entries = Json::array();
  bool all = true;
  std::size_t count = 0;
  for (long D = o.dmin; D <= o.dmax; ++D) {
    if (!is_quadratic_discriminant(BigInt(D))) continue;
    auto c = pell_cross_check(BigInt(D), o.pell_bound);
    ++count;
    all = all && c.agree;
    entries.push_back({{"D", D},
                       {"t", c.cf.t.get_str()},
                       {"u", c.cf.u.get_str()},
                       {"sign", c.cf.sign},
                       {"method", c.method},
                       {"agree", c.agree}});
  }
  r.report["search_bound"] = o.pell_bound;
  r.report["discriminants"] = count;
  r.report["all_agree"] = all;
  r.report["results"] = entries;
  if (!all) r.status = Status::check_failed;
  return r;
}

template <class S>
typename S::Set clopen_or_default(const S& sys, const std::string& text) {
  if (!text.empty()) return sys.parse_set(text);
  if constexpr (std::is_same_v<S, Odometer>) {
    return sys.cylinder({0});
  } else {
    return sys.arc({0, 0}, {1, 0});
  }
}

Outcome verify_brown(const Options& o) {
  Outcome r{header("verify brown")};
  std::visit(
      [&](const auto& sys) {
        auto U = clopen_or_default(sys, o.clopen);
        auto b = brown_homeomorphism(sys, U, o.levels);
        const auto& rep = b.report;
        r.report["system"] = sys.describe();
        r.report["clopen"] = sys.describe(U);
        r.report["levels"] = o.levels;
        r.report["cover"] = cover_json(sys, b.cover);
        r.report["checks"] = {{"injective", rep.injective},
                              {"total", rep.total},
                              {"surjective", rep.surjective},
                              {"relation_preserving", rep.relation_preserving},
                              {"fixes_base", rep.fixes_base},
                              {"measure_balanced", rep.measure_balanced},
                              {"inverse_identity", rep.inverse_identity}};
        r.report["complete_cells"] = rep.complete_cells;
        r.report["ok"] = rep.ok();
        Json E = Json::array();
        for (const auto& [l, s] : b.E) E.push_back({{"level", {l.index, l.stage}}, {"set", sys.describe(s)}});
        r.report["E"] = E;
        r.report["rules"] = rules_json(sys, b.phi);
        if (!rep.ok()) r.status = Status::check_failed;
      },
      parse_system(o.system));
  return r;
}

Outcome verify_restriction(const Options& o) {
  Outcome r{header("verify restriction")};
  std::visit(
      [&](const auto& sys) {
        auto U = clopen_or_default(sys, o.clopen);
        auto rep = restrict_system(sys, U, o.depth, o.test_depth, o.samples);
        r.report["system"] = sys.describe();
        r.report["clopen"] = sys.describe(U);
        r.report["measure"] = sys.measure(U).to_string();
        r.report["cover"] = cover_json(sys, rep.cover);
        r.report["transport_probes"] = rep.transport_probes;
        r.report["chain_probes"] = rep.chain_probes;
        r.report["depth"] = rep.depth;
        r.report["value_groups_equal"] = rep.value_groups_equal;
        r.report["value_group_lag"] = rep.value_group_lag;
        if (sys.rank() == 1) {
          Json ret = Json::array();
          for (const auto& p : rep.returns) ret.push_back({{"piece", sys.describe(p.piece)}, {"time", p.time}});
          r.report["first_return"] = ret;
          r.report["kac_sum"] = rep.kac.to_string();
        }
        auto amp = amplify_invariant(sys, o.amplify);
        r.report["amplified"] = {{"value_group", amp.value_group.to_string()}, {"unit_class", amp.unit_class}};
      },
      parse_system(o.system));
  return r;
}

Outcome verify_scaling_cmd(const Options& o) {
  Outcome r{header("verify scaling")};
  auto sys = parse_system(o.system);
  auto* od = std::get_if<Odometer>(&sys);
  if (!od) fail_precondition("scaling witnesses need an odometer", o.system);
  if (!od->spec().purely_periodic()) fail_precondition("scaling witnesses need a purely periodic base", o.system);
  std::vector<AlgebraicReal> candidates;
  if (o.lambdas.empty()) {
    Rational q = 1;
    for (auto n : od->spec().period) q *= Rational(static_cast<unsigned long>(n));
    AlgebraicReal lambda = AlgebraicReal(q).pow(-o.power);
    candidates.push_back(lambda);
  } else {
    for (const auto& s : o.lambdas) candidates.push_back(parse_real(s));
  }
  auto L = witness_levels(*od, candidates);
  auto factory = [&](const AlgebraicReal& l) { return odometer_witness(*od, l, L, o.test_depth); };
  Json witnesses = Json::array();
  for (const auto& l : candidates) {
    auto w = factory(l);
    if (!w) continue;
    witnesses.push_back({{"lambda", l.to_string()},
                         {"clopen", od->describe(w->U)},
                         {"inverted", w->inverted},
                         {"h", rules_json(*od, w->h)},
                         {"F_rules", w->F.rules.size()}});
  }
  auto rep = scaling_group_check(*od, candidates, factory, o.test_depth);
  r.report["system"] = od->describe();
  r.report["levels"] = L;
  r.report["test_depth"] = o.test_depth;
  r.report["fundamental_group"] = group_json(od->fundamental_group());
  Json entries = Json::array();
  for (const auto& e : rep.entries) {
    entries.push_back({{"lambda", e.lambda.to_string()},
                       {"witnessed", e.witnessed},
                       {"verified", e.verified},
                       {"inverse_verified", e.inverse_verified},
                       {"in_im_plus", e.in_im_plus},
                       {"note", e.note}});
  }
  r.report["candidates"] = entries;
  Json products = Json::array();
  for (const auto& p : rep.products) {
    products.push_back({{"a", p.a.to_string()}, {"b", p.b.to_string()}, {"product", (p.a * p.b).to_string()},
                        {"verified", p.verified}});
  }
  r.report["products"] = products;
  r.report["witnesses"] = witnesses;
  r.report["ok"] = rep.ok();
  if (!rep.ok()) r.status = Status::check_failed;
  return r;
}

Outcome verify_measure(const Options& o) {
  Outcome r{header("verify measure")};
  std::size_t checks = 0;
  bool ok = true;
  std::visit(
      [&](const auto& sys) {
        using S = std::decay_t<decltype(sys)>;
        r.report["system"] = sys.describe();
        if constexpr (std::is_same_v<S, Odometer>) {
          for (unsigned k = 1; k <= o.depth; ++k) {
            for (const auto& c : sys.cylinders(k)) {
              for (std::int64_t g : {1, -1}) {
                ok = ok && sys.exact_measure(sys.act({g, 0}, c)) == sys.exact_measure(c);
                ++checks;
              }
            }
          }
          r.report["depth"] = o.depth;
        } else {
          std::mt19937_64 rng(0x5eed);
          std::uniform_int_distribution<std::int64_t> cut(-20, 20), rot(-10, 10);
          for (unsigned i = 0; i < o.samples; ++i) {
            Cut a{cut(rng), sys.rank() == 2 ? cut(rng) : 0}, b{cut(rng), sys.rank() == 2 ? cut(rng) : 0};
            auto A = sys.arc(a, b);
            GroupElement g{rot(rng), sys.rank() == 2 ? rot(rng) : 0};
            ok = ok && sys.measure(sys.act(g, A)) == sys.measure(A);
            ++checks;
          }
          r.report["samples"] = o.samples;
        }
      },
      parse_system(o.system));
  r.report["checks"] = checks;
  r.report["ok"] = ok;
  if (!ok) r.status = Status::check_failed;
  return r;
}

Outcome describe_cmd(const Options& o) {
  Outcome r{header("describe")};
  std::visit(
      [&](const auto& sys) {
        using S = std::decay_t<decltype(sys)>;
        r.report["system"] = sys.describe();
        r.report["rank"] = sys.rank();
        if constexpr (std::is_same_v<S, Odometer>) r.report["supernatural"] = supernatural_of(sys.spec()).to_string();
        r.report["value_group"] = sys.value_group().to_string();
        r.report["group"] = group_json(sys.fundamental_group());
      },
      parse_system(o.system));
  return r;
}

Json error_json(const std::string& kind, const std::string& code, const std::string& message) {
  Json j;
  j["schema"] = kSchema;
  j["error"] = {{"kind", kind}, {"code", code}, {"message", message}};
  return j;
}

void emit(const Json& j, const std::string& format, std::ostream& out) {
  if (format == "text") {
    render_text(j, "", out);
  } else {
    out << j.dump(2) << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Fundamental groups of orbit equivalence relations on Cantor systems", "cantor-fg"};
  app.set_config("--config", "", "TOML file supplying any of the options");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.require_subcommand(1);
  app.fallthrough();

  std::function<Outcome()> action;
  auto bind = [&](CLI::App* sub, std::function<Outcome()> f) { sub->callback([&action, f] { action = f; }); };

  auto* fg = app.add_subcommand("fg", "Compute a fundamental group")->require_subcommand(1);
  auto* fg_od = fg->add_subcommand("odometer", "Odometer with an eventually periodic base");
  auto* b = fg_od->add_option("--base", o.base, "Base sequence 'preperiod|period', e.g. '2,3|5'");
  auto* sn = fg_od->add_option("--supernatural", o.supernatural, "Supernatural number, e.g. '2^inf*3^2'");
  b->excludes(sn);
  fg_od->require_option(1);
  bind(fg_od, [&] { return fg_odometer(o); });
  auto* fg_dj = fg->add_subcommand("denjoy", "Denjoy system of one rotation");
  fg_dj->add_option("--theta", o.theta, "Rotation number, e.g. '(-1+sqrt(5))/2'")->required();
  bind(fg_dj, [&] { return fg_denjoy(o, false); });
  auto* fg_d2 = fg->add_subcommand("denjoy2", "Denjoy system of two rotations");
  fg_d2->add_option("--theta1", o.theta1, "First rotation number")->required();
  fg_d2->add_option("--theta2", o.theta2, "Second rotation number")->required();
  bind(fg_d2, [&] { return fg_denjoy(o, true); });
  auto* fg_sg = fg->add_subcommand("subgroup", "Inner multipliers of a subgroup of R");
  auto* lat = fg_sg->add_option("--lattice", o.lattice, "'x^2-5; 1, a' (a is the field generator)");
  auto* sgs = fg_sg->add_option("--supernatural", o.supernatural, "Supernatural number of denominators");
  lat->excludes(sgs);
  fg_sg->require_option(1);
  bind(fg_sg, [&] { return fg_subgroup(o); });

  auto* verify = app.add_subcommand("verify", "Run a verification suite")->require_subcommand(1);
  auto add_system = [&](CLI::App* sub) {
    sub->add_option("--system", o.system, "odometer:<base>, denjoy:<theta> or denjoy2:<theta1>;<theta2>")
        ->capture_default_str();
  };
  auto* v_pell = verify->add_subcommand("pell", "Continued fractions against exhaustive search");
  v_pell->add_option("--dmin", o.dmin)->capture_default_str();
  v_pell->add_option("--dmax", o.dmax)->capture_default_str();
  v_pell->add_option("--bound", o.pell_bound, "Exhaustive search bound on u")->capture_default_str();
  bind(v_pell, [&] { return verify_pell(o); });
  auto* v_brown = verify->add_subcommand("brown", "Stagewise bijection U x N x N -> X x N x N");
  add_system(v_brown);
  v_brown->add_option("--clopen", o.clopen, "Clopen U, e.g. '[0]' or '[0,1)'");
  v_brown->add_option("--levels", o.levels)->capture_default_str()->check(CLI::Range(1, 64));
  bind(v_brown, [&] { return verify_brown(o); });
  auto* v_res = verify->add_subcommand("restriction", "Measure transport through a finite cover");
  add_system(v_res);
  v_res->add_option("--clopen", o.clopen, "Clopen U");
  v_res->add_option("--depth", o.depth, "Value-group depth")->capture_default_str()->check(CLI::Range(1, 64));
  v_res->add_option("--test-depth", o.test_depth)->capture_default_str()->check(CLI::Range(1, 16));
  v_res->add_option("--samples", o.samples, "Random chain probes")->capture_default_str();
  v_res->add_option("--amplify", o.amplify, "n for the amplified invariant")->capture_default_str();
  bind(v_res, [&] { return verify_restriction(o); });
  auto* v_sc = verify->add_subcommand("scaling", "Scaling automorphisms and their group law");
  add_system(v_sc);
  auto* pw = v_sc->add_option("--power", o.power, "Witness for lambda = Q^-k, Q the period product")->capture_default_str();
  auto* lm = v_sc->add_option("--lambda", o.lambdas, "Candidate scaling factors")->delimiter(',');
  pw->excludes(lm);
  v_sc->add_option("--test-depth", o.test_depth)->capture_default_str()->check(CLI::Range(1, 12));
  bind(v_sc, [&] { return verify_scaling_cmd(o); });
  auto* v_me = verify->add_subcommand("measure", "Invariance of the measure under the action");
  add_system(v_me);
  v_me->add_option("--depth", o.depth, "Cylinder depth (odometers)")->capture_default_str()->check(CLI::Range(1, 16));
  v_me->add_option("--samples", o.samples, "Random arcs (Denjoy systems)")->capture_default_str();
  bind(v_me, [&] { return verify_measure(o); });

  auto* desc = app.add_subcommand("describe", "Canonical form and invariants of a system");
  desc->add_option("--system", o.system)->required();
  bind(desc, [&] { return describe_cmd(o); });

  std::vector<std::string> args(argv.rbegin(), argv.rend() - 1);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Status::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Status::ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return Status::usage;
  }

  try {
    Outcome r = action();
    emit(r.report, o.format, out);
    return r.status;
  } catch (const Error& e) {
    static const char* names[] = {"precondition", "invariant", "parse"};
    auto kind = static_cast<int>(e.kind());
    emit(error_json(names[kind], e.code(), e.what()), o.format, out);
    err << "cantor-fg: " << e.what() << "\n";
    if (e.kind() == ErrorKind::parse) {
      err << "\n" << app.help();
      return Status::usage;
    }
    return e.kind() == ErrorKind::precondition ? Status::precondition_failed : Status::check_failed;
  }
}

}  // namespace cantor::cli
