#include "cantor/systems/denjoy.hpp"

#include <algorithm>
#include <cmath>

#include "cantor/error.hpp"
#include "cantor/exact/expression.hpp"
#include "cantor/units/pell.hpp"
#include "cantor/units/units.hpp"

namespace cantor {

namespace {

constexpr long double kSeparation = 1e-9L;
constexpr std::size_t kFamilyLimit = 2000;

std::int64_t parse_int(const std::string& s) {
  std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (s.size() == start || s.size() > 15 ||
      !std::all_of(s.begin() + static_cast<long>(start), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    fail_parse("bad orbit index", s);
  }
  return std::stoll(s);
}

}  // namespace

DenjoySpec DenjoySpec::make(std::vector<AlgebraicReal> thetas) {
  if (thetas.empty() || thetas.size() > 2) fail_precondition("one or two rotation numbers expected");
  DenjoySpec spec;
  for (auto& t : thetas) {
    if (t.is_rational()) fail_precondition("theta must be irrational", t.to_string());
    t = t.frac();
    spec.field = spec.field ? common_field(AlgebraicReal::generator(spec.field), t) : t.field();
  }
  for (auto& t : thetas) t = t.in_field(spec.field);
  if (thetas.size() == 2) {
    const auto &a = thetas[0].coords(), &b = thetas[1].coords();
    // det [[1,0,0],[a0,a1,a2],[b0,b1,b2]] = a1 b2 - a2 b1
    if (spec.field->degree() != 3 || a[1] * b[2] - a[2] * b[1] == 0) {
      fail_precondition("thetas not independent", "1, theta1, theta2 must be linearly independent over Q");
    }
  }
  spec.thetas = std::move(thetas);
  return spec;
}

DenjoySpec DenjoySpec::parse(std::string_view text) {
  std::vector<AlgebraicReal> thetas;
  for (const auto& piece : split_top_level(normalize_input(text), ';')) thetas.push_back(parse_real(piece));
  return make(std::move(thetas));
}

std::string DenjoySpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < thetas.size(); ++i) out += (i ? ";" : "") + to_expression(thetas[i]);
  return out;
}

BigInt theta_discriminant(const AlgebraicReal& theta) {
  Polynomial p = theta.minimal_polynomial();
  if (p.degree() != 2) fail_precondition("theta is not quadratic");
  BigInt den = 1;
  for (const auto& c : p.coefficients()) den = lcm(den, BigInt(c.get_den()));
  std::vector<BigInt> z;
  BigInt g = 0;
  for (const auto& c : p.coefficients()) {
    z.push_back(BigInt(c.get_num() * (den / c.get_den())));
    g = gcd(g, z.back());
  }
  for (auto& c : z) c /= g;
  return z[1] * z[1] - 4 * z[2] * z[0];
}

MultiplicativeGroup denjoy_group_direct(const DenjoySpec& spec) {
  if (spec.rank() == 2) {
    auto g = im_plus(AdditiveSubgroup::from_generators(spec.field, {AlgebraicReal(1), spec.thetas[0], spec.thetas[1]}));
    return g;
  }
  if (spec.field->degree() != 2) {
    auto g = MultiplicativeGroup::trivial();
    g.note = "theta is not quadratic";
    return g;
  }
  BigInt D = theta_discriminant(spec.thetas[0]);
  PellSolution s = pell_min_solution(D);
  AlgebraicReal eps = (AlgebraicReal(Rational(s.t)) + AlgebraicReal(Rational(s.u)) * sqrt_in_field(D, spec.field)) /
                      AlgebraicReal(2);
  auto g = MultiplicativeGroup::cyclic(eps);
  g.note = "Pell discriminant " + D.get_str();
  return g;
}

Denjoy::Denjoy(DenjoySpec spec) : spec_(std::move(spec)) {
  for (const auto& t : spec_.thetas) theta_approx_.push_back(static_cast<long double>(t.to_double()));
}

long double Denjoy::approx(const Cut& c) const {
  if (c.top) return 1.0L;
  long double v = static_cast<long double>(c.n) * theta_approx_[0];
  if (rank() == 2) v += static_cast<long double>(c.m) * theta_approx_[1];
  return v - std::floor(v);
}

AlgebraicReal Denjoy::position(const Cut& c) const {
  if (c.top) return AlgebraicReal(1);
  AlgebraicReal x = AlgebraicReal(c.n) * spec_.thetas[0];
  if (rank() == 2) x += AlgebraicReal(c.m) * spec_.thetas[1];
  long double v = static_cast<long double>(c.n) * theta_approx_[0];
  if (rank() == 2) v += static_cast<long double>(c.m) * theta_approx_[1];
  long double fl = std::floor(v), fr = v - fl;
  if (fr > kSeparation && fr < 1 - kSeparation) return x - AlgebraicReal(static_cast<long>(fl));
  return x.frac();
}

int Denjoy::compare_cuts(const Cut& a, const Cut& b) const {
  if (a == b) return 0;
  if (a.top) return 1;
  if (b.top) return -1;
  long double da = approx(a), db = approx(b);
  if (std::fabs(da - db) > kSeparation) return da < db ? -1 : 1;
  auto c = compare(position(a), position(b));
  ensure(c != std::strong_ordering::equal, "distinct orbit points are distinct");
  return c == std::strong_ordering::less ? -1 : 1;
}

ArcSet Denjoy::from_intervals(std::vector<std::pair<Cut, Cut>> iv) const {
  std::sort(iv.begin(), iv.end(), [&](const auto& x, const auto& y) { return compare_cuts(x.first, y.first) < 0; });
  ArcSet out;
  for (const auto& [l, r] : iv) {
    if (!out.bounds.empty() && out.bounds.back() == l) {
      out.bounds.back() = r;
    } else {
      out.bounds.push_back(l);
      out.bounds.push_back(r);
    }
  }
  return out;
}

ArcSet Denjoy::arc(const Cut& from, const Cut& to) const {
  if (from.top) fail_precondition("an arc cannot start at the top marker");
  Cut end = to;
  if (!end.top && end.n == 0 && end.m == 0) end.top = true;
  if (from == to) return full();
  if (compare_cuts(from, end) < 0) return from_intervals({{from, end}});
  return from_intervals({{from, Cut{0, 0, true}}, {Cut{}, end}});
}

ArcSet Denjoy::act(GroupElement g, const Set& s) const {
  if (g.is_zero()) return s;
  std::int64_t gb = rank() == 2 ? g.b : 0;
  std::vector<std::pair<Cut, Cut>> iv;
  for (std::size_t i = 0; i + 1 < s.bounds.size(); i += 2) {
    Cut l{s.bounds[i].n + g.a, s.bounds[i].m + gb};
    const Cut& r0 = s.bounds[i + 1];
    Cut r = r0.top ? Cut{g.a, gb} : Cut{r0.n + g.a, r0.m + gb};
    if (r.n == 0 && r.m == 0) r.top = true;
    if (compare_cuts(l, r) < 0) {
      iv.emplace_back(l, r);
    } else {
      iv.emplace_back(l, Cut{0, 0, true});
      iv.emplace_back(Cut{}, r);
    }
  }
  return from_intervals(std::move(iv));
}

template <class Op>
ArcSet Denjoy::combine(const Set& a, const Set& b, Op op) const {
  std::size_t i = 0, j = 0;
  bool in_a = false, in_b = false, prev = false;
  ArcSet out;
  while (i < a.bounds.size() || j < b.bounds.size()) {
    Cut p;
    int c = i == a.bounds.size() ? 1 : j == b.bounds.size() ? -1 : compare_cuts(a.bounds[i], b.bounds[j]);
    if (c <= 0) {
      p = a.bounds[i++];
      in_a = !in_a;
    }
    if (c >= 0) {
      p = b.bounds[j++];
      in_b = !in_b;
    }
    bool now = op(in_a, in_b);
    if (now != prev) out.bounds.push_back(p);
    prev = now;
  }
  return out;
}

ArcSet Denjoy::unite(const Set& a, const Set& b) const {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}

ArcSet Denjoy::intersect(const Set& a, const Set& b) const {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}

ArcSet Denjoy::subtract(const Set& a, const Set& b) const {
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}

AlgebraicReal Denjoy::measure(const Set& s) const {
  AlgebraicReal total(0);
  for (std::size_t i = 0; i + 1 < s.bounds.size(); i += 2) total += position(s.bounds[i + 1]) - position(s.bounds[i]);
  return total;
}

AlgebraicReal Denjoy::arc_measure(const std::vector<Set>& arcs) const {
  Set seen;
  AlgebraicReal total(0);
  for (const auto& a : arcs) {
    if (!intersect(seen, a).bounds.empty()) fail_precondition("overlapping arcs", describe(a));
    seen = unite(seen, a);
    total += measure(a);
  }
  return total;
}

ArcSet Denjoy::apply(const Step& step, const Set& s) const {
  if (step.kind != Step::Kind::translate) fail_precondition("digit shifts need an odometer");
  return act(step.g, s);
}

std::vector<Cut> Denjoy::cuts(unsigned d) const {
  std::vector<Cut> out;
  auto D = static_cast<std::int64_t>(d);
  for (std::int64_t n = -D; n <= D; ++n) {
    if (rank() == 1) {
      out.push_back({n, 0});
      continue;
    }
    for (std::int64_t m = -D; m <= D; ++m) out.push_back({n, m});
  }
  std::sort(out.begin(), out.end(), [&](const Cut& x, const Cut& y) { return compare_cuts(x, y) < 0; });
  return out;
}

std::vector<ArcSet> Denjoy::atoms(unsigned d) const {
  auto c = cuts(d);
  std::vector<ArcSet> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Cut end = i + 1 < c.size() ? c[i + 1] : Cut{0, 0, true};
    out.push_back({{c[i], end}});
  }
  return out;
}

unsigned Denjoy::resolution(const Set& s) const {
  std::int64_t r = 0;
  for (const auto& c : s.bounds) {
    if (!c.top) r = std::max({r, std::abs(c.n), std::abs(c.m)});
  }
  return static_cast<unsigned>(r);
}

std::vector<AlgebraicReal> Denjoy::atom_measures(const Set& within, unsigned d) const {
  // Sweep the cut points together with the boundaries of `within`.
  auto c = cuts(d);
  c.push_back(Cut{0, 0, true});
  std::vector<AlgebraicReal> out;
  std::size_t i = 0, j = 0;
  bool inside = false;
  Cut last;
  bool have_last = false;
  while (i < c.size() || j < within.bounds.size()) {
    Cut p;
    int cmp = i == c.size() ? 1 : j == within.bounds.size() ? -1 : compare_cuts(c[i], within.bounds[j]);
    bool toggle = false;
    if (cmp <= 0) p = c[i++];
    if (cmp >= 0) {
      p = within.bounds[j++];
      toggle = true;
    }
    if (have_last && inside) out.push_back(position(p) - position(last));
    if (toggle) inside = !inside;
    last = p;
    have_last = true;
  }
  return out;
}

std::vector<ArcSet> Denjoy::test_family(unsigned d) const {
  auto c = cuts(d);
  std::vector<ArcSet> out = {full()};
  std::size_t total = c.size() * (c.size() - 1), stride = std::max<std::size_t>(1, total / kFamilyLimit), k = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (i == j) continue;
      if (k++ % stride == 0) out.push_back(arc(c[i], c[j]));
    }
  }
  return out;
}

AdditiveSubgroup Denjoy::value_group() const {
  std::vector<AlgebraicReal> gens = {AlgebraicReal(1)};
  gens.insert(gens.end(), spec_.thetas.begin(), spec_.thetas.end());
  return AdditiveSubgroup::from_generators(spec_.field, gens);
}

std::string Denjoy::describe() const { return (rank() == 1 ? "denjoy:" : "denjoy2:") + spec_.to_string(); }

std::string Denjoy::cut_text(const Cut& c) const {
  if (c.top) return rank() == 1 ? "0" : "(0,0)";
  if (rank() == 1) return std::to_string(c.n);
  return "(" + std::to_string(c.n) + "," + std::to_string(c.m) + ")";
}

std::string Denjoy::describe(const Set& s) const {
  if (s.bounds.empty()) return "{}";
  if (s == full()) return "X";
  std::string out;
  for (std::size_t i = 0; i + 1 < s.bounds.size(); i += 2) {
    out += (i ? "+" : "") + ("[" + cut_text(s.bounds[i]) + "," + cut_text(s.bounds[i + 1]) + ")");
  }
  return out;
}

ArcSet Denjoy::parse_set(std::string_view text) const {
  std::string s = normalize_input(text);
  if (s == "X") return full();
  if (s == "{}" || s == "empty") return empty();
  auto parse_cut = [&](const std::string& t) -> Cut {
    if (rank() == 1) return {parse_int(t), 0};
    if (t.size() < 2 || t.front() != '(' || t.back() != ')') fail_parse("rank-two cut must look like (n,m)", t);
    auto parts = split_top_level(t.substr(1, t.size() - 2), ',');
    if (parts.size() != 2) fail_parse("rank-two cut must look like (n,m)", t);
    return {parse_int(parts[0]), parse_int(parts[1])};
  };
  ArcSet out;
  for (const auto& piece : split_top_level(s, '+')) {
    if (piece.size() < 2 || piece.front() != '[' || piece.back() != ')') fail_parse("arc must look like [a,b)", piece);
    auto ends = split_top_level(piece.substr(1, piece.size() - 2), ',');
    if (ends.size() != 2) fail_parse("arc must look like [a,b)", piece);
    out = unite(out, arc(parse_cut(ends[0]), parse_cut(ends[1])));
  }
  return out;
}

}  // namespace cantor
