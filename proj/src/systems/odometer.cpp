#include "cantor/systems/odometer.hpp"

#include <algorithm>
#include <set>

#include "cantor/error.hpp"
#include "cantor/exact/expression.hpp"

namespace cantor {

namespace {

constexpr std::uint64_t kProductLimit = std::uint64_t{1} << 48;
constexpr std::size_t kSetLimit = std::size_t{1} << 24;

std::vector<std::uint64_t> parse_entries(const std::string& text) {
  std::vector<std::uint64_t> out;
  if (text.empty()) return out;
  for (const auto& piece : split_top_level(text, ',')) {
    if (piece.empty() || !std::all_of(piece.begin(), piece.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      fail_parse("bad base entry", piece);
    }
    if (piece.size() > 9) fail_precondition("base entry too large", piece);
    std::uint64_t n = std::stoull(piece);
    if (n < 2) fail_precondition("base entries must be at least 2", piece);
    out.push_back(n);
  }
  return out;
}

std::string join(const std::vector<std::uint64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

}  // namespace

OdometerSpec OdometerSpec::parse(std::string_view text) {
  std::string s = normalize_input(text);
  auto bar = s.find('|');
  OdometerSpec spec;
  if (bar == std::string::npos) {
    spec.period = parse_entries(s);
  } else {
    if (s.find('|', bar + 1) != std::string::npos) fail_parse("base has more than one '|'", s);
    spec.preperiod = parse_entries(s.substr(0, bar));
    spec.period = parse_entries(s.substr(bar + 1));
  }
  if (spec.period.empty()) fail_parse("period is empty", s);
  return spec;
}

std::uint64_t OdometerSpec::base(std::size_t i) const {
  if (i == 0) fail_precondition("base index starts at 1");
  if (i <= preperiod.size()) return preperiod[i - 1];
  return period[(i - 1 - preperiod.size()) % period.size()];
}

std::string OdometerSpec::to_string() const {
  if (preperiod.empty()) return join(period);
  return join(preperiod) + "|" + join(period);
}

Supernatural supernatural_of(const OdometerSpec& spec) {
  Supernatural n;
  for (auto b : spec.preperiod) n.multiply_integer(b);
  for (auto b : spec.period) n.multiply_integer_infinitely(b);
  return n;
}

MultiplicativeGroup odometer_group_direct(const OdometerSpec& spec) {
  std::set<std::uint64_t> primes;
  for (auto b : spec.period) {
    for (auto [p, e] : factorize(b)) primes.insert(p);
  }
  return MultiplicativeGroup::prime_generated({primes.begin(), primes.end()});
}

Odometer::Odometer(OdometerSpec spec) : spec_(std::move(spec)) {
  if (spec_.period.empty()) fail_precondition("period is empty");
  for (const auto* part : {&spec_.preperiod, &spec_.period}) {
    for (auto b : *part) {
      if (b < 2) fail_precondition("base entries must be at least 2");
    }
  }
}

std::uint64_t Odometer::product_range(unsigned from_depth, unsigned to_depth) const {
  std::uint64_t p = 1;
  for (unsigned i = from_depth + 1; i <= to_depth; ++i) {
    p *= spec_.base(i);
    if (p > kProductLimit) fail_precondition("depth too large", "cylinder count exceeds 2^48");
  }
  return p;
}

std::uint64_t Odometer::product(unsigned depth) const { return product_range(0, depth); }

std::uint64_t Odometer::index_of(const std::vector<unsigned>& word) const {
  std::uint64_t n = 0, p = 1;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] >= spec_.base(i + 1)) fail_precondition("digit out of range", std::to_string(word[i]));
    n += word[i] * p;
    p *= spec_.base(i + 1);
    if (p > kProductLimit) fail_precondition("depth too large");
  }
  return n;
}

std::vector<unsigned> Odometer::word_of(std::uint64_t index, unsigned depth) const {
  std::vector<unsigned> w;
  for (unsigned i = 1; i <= depth; ++i) {
    w.push_back(static_cast<unsigned>(index % spec_.base(i)));
    index /= spec_.base(i);
  }
  return w;
}

OdSet Odometer::cylinder(const std::vector<unsigned>& word) const {
  return normalized(static_cast<unsigned>(word.size()), {index_of(word)});
}

OdSet Odometer::from_indices(unsigned depth, std::vector<std::uint64_t> indices) const {
  std::uint64_t p = product(depth);
  for (auto n : indices) {
    if (n >= p) fail_precondition("cylinder index out of range");
  }
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return normalized(depth, std::move(indices));
}

OdSet Odometer::normalized(unsigned depth, std::vector<std::uint64_t> idx) const {
  if (idx.empty()) return empty();
  while (depth > 0) {
    std::uint64_t parent = product(depth - 1), n = spec_.base(depth);
    if (idx.size() % n != 0) break;
    std::size_t block = idx.size() / n;
    bool whole = true;
    for (std::size_t j = 0; j < n && whole; ++j) {
      for (std::size_t t = 0; t < block; ++t) {
        if (idx[j * block + t] != idx[t] + j * parent) {
          whole = false;
          break;
        }
      }
    }
    if (!whole || idx[block - 1] >= parent) break;
    idx.resize(block);
    --depth;
  }
  return {depth, std::move(idx)};
}

OdSet Odometer::refine(const Set& s, unsigned depth) const {
  if (depth <= s.depth || s.indices.empty()) return s;
  std::vector<std::uint64_t> idx = s.indices;
  for (unsigned k = s.depth; k < depth; ++k) {
    std::uint64_t p = product(k), n = spec_.base(k + 1);
    if (idx.size() * n > kSetLimit) fail_precondition("set too large", "refinement exceeds 2^24 cylinders");
    std::vector<std::uint64_t> next;
    next.reserve(idx.size() * n);
    for (std::uint64_t j = 0; j < n; ++j) {
      for (auto v : idx) next.push_back(v + j * p);
    }
    idx = std::move(next);
  }
  return {depth, std::move(idx)};
}

std::pair<OdSet, OdSet> Odometer::common(const Set& a, const Set& b) const {
  unsigned d = std::max(a.depth, b.depth);
  return {refine(a, d), refine(b, d)};
}

OdSet Odometer::act(GroupElement g, const Set& s) const {
  if (s.depth == 0 || g.a == 0) return s;
  auto p = static_cast<std::int64_t>(product(s.depth));
  auto shift = static_cast<std::uint64_t>(((g.a % p) + p) % p);
  std::vector<std::uint64_t> idx;
  idx.reserve(s.indices.size());
  for (auto n : s.indices) idx.push_back((n + shift) % static_cast<std::uint64_t>(p));
  std::sort(idx.begin(), idx.end());
  return normalized(s.depth, std::move(idx));
}

std::pair<OdSet, OdSet> Odometer::apply_phi(const Set& s, std::int64_t power) const {
  return {s, act({power, 0}, s)};
}

OdSet Odometer::unite(const Set& a, const Set& b) const {
  auto [x, y] = common(a, b);
  std::vector<std::uint64_t> out;
  std::set_union(x.indices.begin(), x.indices.end(), y.indices.begin(), y.indices.end(), std::back_inserter(out));
  return normalized(std::max(x.depth, y.depth), std::move(out));
}

OdSet Odometer::intersect(const Set& a, const Set& b) const {
  if (a.indices.empty() || b.indices.empty()) return empty();
  auto [x, y] = common(a, b);
  std::vector<std::uint64_t> out;
  std::set_intersection(x.indices.begin(), x.indices.end(), y.indices.begin(), y.indices.end(),
                        std::back_inserter(out));
  return normalized(std::max(x.depth, y.depth), std::move(out));
}

OdSet Odometer::subtract(const Set& a, const Set& b) const {
  if (a.indices.empty() || b.indices.empty()) return a;
  auto [x, y] = common(a, b);
  std::vector<std::uint64_t> out;
  std::set_difference(x.indices.begin(), x.indices.end(), y.indices.begin(), y.indices.end(), std::back_inserter(out));
  return normalized(std::max(x.depth, y.depth), std::move(out));
}

Rational Odometer::exact_measure(const Set& s) const {
  return make_rational(BigInt(static_cast<unsigned long>(s.indices.size())),
                       BigInt(static_cast<unsigned long>(product(s.depth))));
}

bool Odometer::prepend_compatible(std::size_t word_length) const {
  return spec_.purely_periodic() && word_length % spec_.period.size() == 0;
}

OdSet Odometer::apply(const Step& step, const Set& s) const {
  if (step.kind == Step::Kind::translate) return act(step.g, s);
  auto len = static_cast<unsigned>(step.word.size());
  if (!prepend_compatible(len)) {
    fail_precondition("prepend needs a shift-invariant base", "word length must be a multiple of the period");
  }
  std::uint64_t head = index_of(step.word), p = product(len);
  if (step.kind == Step::Kind::prepend) {
    if (s.indices.empty()) return s;
    std::vector<std::uint64_t> idx;
    for (auto n : s.indices) idx.push_back(head + p * n);
    product(len + s.depth);
    return normalized(len + s.depth, std::move(idx));
  }
  if (!is_subset(*this, s, cylinder(step.word))) fail_precondition("strip outside cylinder", describe(s));
  if (s.indices.empty()) return s;
  OdSet r = refine(s, std::max(s.depth, len));
  std::vector<std::uint64_t> idx;
  for (auto m : r.indices) idx.push_back((m - head) / p);
  std::sort(idx.begin(), idx.end());
  return normalized(r.depth - len, std::move(idx));
}

Rational Odometer::step_scale(const Step& step) const {
  if (step.kind == Step::Kind::translate) return 1;
  auto p = BigInt(static_cast<unsigned long>(product(static_cast<unsigned>(step.word.size()))));
  return step.kind == Step::Kind::prepend ? make_rational(1, p) : Rational(p);
}

std::vector<OdSet> Odometer::cylinders(unsigned d) const {
  std::vector<OdSet> out;
  std::uint64_t p = product(d);
  for (std::uint64_t n = 0; n < p; ++n) out.push_back(normalized(d, {n}));
  return out;
}

std::vector<OdSet> Odometer::test_family(unsigned d) const {
  std::vector<OdSet> out = {full()};
  for (unsigned k = 1; k <= d; ++k) {
    std::uint64_t p = product(k), stride = std::max<std::uint64_t>(1, p / 512);
    for (std::uint64_t n = 0; n < p; n += stride) out.push_back(normalized(k, {n}));
  }
  return out;
}

std::vector<AlgebraicReal> Odometer::atom_measures(const Set& within, unsigned d) const {
  if (within.indices.empty()) return {};
  auto p = BigInt(static_cast<unsigned long>(product(std::max(d, within.depth))));
  return {AlgebraicReal(make_rational(1, p))};
}

AdditiveSubgroup Odometer::value_group() const { return AdditiveSubgroup(RationalRankOne{supernatural_of(spec_)}); }

std::string Odometer::describe(const Set& s) const {
  if (s.indices.empty()) return "{}";
  if (s.depth == 0) return "X";
  std::string out;
  for (std::size_t i = 0; i < s.indices.size(); ++i) {
    auto w = word_of(s.indices[i], s.depth);
    std::string cyl;
    for (std::size_t j = 0; j < w.size(); ++j) cyl += (j ? "," : "") + std::to_string(w[j]);
    out += (i ? "+" : "") + ("[" + cyl + "]");
  }
  return out;
}

OdSet Odometer::parse_set(std::string_view text) const {
  std::string s = normalize_input(text);
  if (s == "X") return full();
  if (s == "{}" || s == "empty") return empty();
  OdSet out = empty();
  for (const auto& piece : split_top_level(s, '+')) {
    if (piece.size() < 2 || piece.front() != '[' || piece.back() != ']') fail_parse("cylinder must look like [0,1]", piece);
    std::vector<unsigned> word;
    std::string inner = piece.substr(1, piece.size() - 2);
    if (!inner.empty()) {
      for (const auto& d : split_top_level(inner, ',')) {
        if (d.empty() || d.size() > 9 || !std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; })) {
          fail_parse("bad digit", d);
        }
        word.push_back(static_cast<unsigned>(std::stoul(d)));
      }
    }
    out = unite(out, cylinder(word));
  }
  return out;
}

}  // namespace cantor
