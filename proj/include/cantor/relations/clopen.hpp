#pragma once

#include <concepts>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cantor/error.hpp"
#include "cantor/exact/algebraic.hpp"
#include "cantor/lattice/subgroup.hpp"
#include "cantor/relations/group.hpp"

namespace cantor {

/// A copy of the space inside X x N x N. Plain X x N uses stage 1.
struct Level {
  std::int64_t index = 1;
  std::int64_t stage = 1;
  friend auto operator<=>(const Level&, const Level&) = default;
};

std::string to_string(Level l);

/// One move of a piecewise rule. Translations act through the group; prepend
/// and strip are odometer digit shifts (x -> wx and wx -> x).
struct Step {
  enum class Kind { translate, prepend, strip };
  Kind kind = Kind::translate;
  GroupElement g;
  std::vector<unsigned> word;

  static Step translate(GroupElement g) { return {Kind::translate, g, {}}; }
  static Step prepend(std::vector<unsigned> w) { return {Kind::prepend, {}, std::move(w)}; }
  static Step strip(std::vector<unsigned> w) { return {Kind::strip, {}, std::move(w)}; }
  Step inverse() const;
  friend bool operator==(const Step&, const Step&) = default;
};

std::string to_string(const Step& s, int rank);

/// Reverse order, each step inverted.
std::vector<Step> invert_steps(const std::vector<Step>& steps);

/// Merges adjacent translations, drops zero translations, cancels a prepend
/// against a following strip of the same word (and vice versa).
std::vector<Step> simplify_steps(std::vector<Step> steps);

/// Whether the Z-spans of the two lists agree (rational spans via gcd, field
/// spans via lattice normal form).
bool spans_equal(const std::vector<AlgebraicReal>& a, const std::vector<AlgebraicReal>& b);

template <class S>
concept ClopenSystem = requires(const S& s, const typename S::Set& x, const typename S::Set& y, GroupElement g,
                                const Step& st, unsigned d) {
  { s.rank() } -> std::convertible_to<int>;
  { s.full() } -> std::same_as<typename S::Set>;
  { s.empty() } -> std::same_as<typename S::Set>;
  { s.act(g, x) } -> std::same_as<typename S::Set>;
  { s.unite(x, y) } -> std::same_as<typename S::Set>;
  { s.intersect(x, y) } -> std::same_as<typename S::Set>;
  { s.subtract(x, y) } -> std::same_as<typename S::Set>;
  { x == y } -> std::convertible_to<bool>;
  { s.measure(x) } -> std::same_as<AlgebraicReal>;
  { s.apply(st, x) } -> std::same_as<typename S::Set>;
  { s.step_scale(st) } -> std::same_as<Rational>;
  { s.test_family(d) } -> std::same_as<std::vector<typename S::Set>>;
  { s.atom_measures(x, d) } -> std::same_as<std::vector<AlgebraicReal>>;
  { s.resolution(x) } -> std::convertible_to<unsigned>;
  { s.value_group() } -> std::same_as<AdditiveSubgroup>;
  { s.describe() } -> std::same_as<std::string>;
  { s.describe(x) } -> std::same_as<std::string>;
};

/// (x, i) -> (steps(x), j) for x in source at level i.
template <class Set>
struct Rule {
  Set source;
  Level source_level;
  std::vector<Step> steps;
  Level target_level;
  Set target;
};

template <class Set>
struct PiecewiseMap {
  std::vector<Rule<Set>> rules;
};

template <class Set>
using LeveledSet = std::vector<std::pair<Set, Level>>;

template <ClopenSystem S>
bool is_empty(const S& sys, const typename S::Set& x) {
  return x == sys.empty();
}

template <ClopenSystem S>
bool disjoint(const S& sys, const typename S::Set& x, const typename S::Set& y) {
  return is_empty(sys, sys.intersect(x, y));
}

template <ClopenSystem S>
bool is_subset(const S& sys, const typename S::Set& x, const typename S::Set& y) {
  return is_empty(sys, sys.subtract(x, y));
}

template <ClopenSystem S>
typename S::Set apply_steps(const S& sys, const std::vector<Step>& steps, typename S::Set x) {
  for (const auto& st : steps) x = sys.apply(st, x);
  return x;
}

template <ClopenSystem S>
Rational steps_scale(const S& sys, const std::vector<Step>& steps) {
  Rational r = 1;
  for (const auto& st : steps) r *= sys.step_scale(st);
  return r;
}

template <ClopenSystem S>
AlgebraicReal leveled_measure(const S& sys, const LeveledSet<typename S::Set>& xs) {
  AlgebraicReal total(0);
  for (const auto& [x, l] : xs) total += sys.measure(x);
  return total;
}

template <class Set>
PiecewiseMap<Set> invert(const PiecewiseMap<Set>& m) {
  PiecewiseMap<Set> out;
  for (const auto& r : m.rules) out.rules.push_back({r.target, r.target_level, invert_steps(r.steps), r.source_level, r.source});
  return out;
}

/// second o first, restricted to where both are materialized.
template <ClopenSystem S>
PiecewiseMap<typename S::Set> compose(const S& sys, const PiecewiseMap<typename S::Set>& second,
                                      const PiecewiseMap<typename S::Set>& first) {
  PiecewiseMap<typename S::Set> out;
  std::multimap<Level, const Rule<typename S::Set>*> by_level;
  for (const auto& q : second.rules) by_level.emplace(q.source_level, &q);
  for (const auto& r : first.rules) {
    auto [lo, hi] = by_level.equal_range(r.target_level);
    for (auto it = lo; it != hi; ++it) {
      const auto& q = *it->second;
      auto mid = sys.intersect(r.target, q.source);
      if (is_empty(sys, mid)) continue;
      auto src = apply_steps(sys, invert_steps(r.steps), mid);
      std::vector<Step> steps = r.steps;
      steps.insert(steps.end(), q.steps.begin(), q.steps.end());
      out.rules.push_back({src, r.source_level, simplify_steps(steps), q.target_level, apply_steps(sys, q.steps, mid)});
    }
  }
  return out;
}

/// Image of x at level l. Errors when x is not covered by materialized sources.
template <ClopenSystem S>
LeveledSet<typename S::Set> apply_map(const S& sys, const PiecewiseMap<typename S::Set>& m, const typename S::Set& x,
                                      Level l) {
  LeveledSet<typename S::Set> out;
  auto rest = x;
  for (const auto& r : m.rules) {
    if (r.source_level != l) continue;
    auto piece = sys.intersect(x, r.source);
    if (is_empty(sys, piece)) continue;
    rest = sys.subtract(rest, piece);
    out.emplace_back(apply_steps(sys, r.steps, piece), r.target_level);
  }
  if (!is_empty(sys, rest)) fail_precondition("outside materialized range", sys.describe(rest) + " at " + to_string(l));
  return out;
}

template <ClopenSystem S>
LeveledSet<typename S::Set> apply_map(const S& sys, const PiecewiseMap<typename S::Set>& m,
                                      const LeveledSet<typename S::Set>& xs) {
  LeveledSet<typename S::Set> out;
  for (const auto& [x, l] : xs) {
    auto part = apply_map(sys, m, x, l);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

struct MapCheck {
  bool sources_disjoint = true;
  bool targets_disjoint = true;
  bool targets_match_steps = true;
  bool measures_match = true;
  /// Every rule is a group translation plus a level change.
  bool translations_only = true;

  bool ok() const { return sources_disjoint && targets_disjoint && targets_match_steps && measures_match; }
};

/// Rule-wise exact checks of a materialized map.
template <ClopenSystem S>
MapCheck check_map(const S& sys, const PiecewiseMap<typename S::Set>& m) {
  MapCheck c;
  std::map<Level, std::vector<const typename S::Set*>> src, tgt;
  for (const auto& r : m.rules) {
    for (const auto* other : src[r.source_level]) c.sources_disjoint = c.sources_disjoint && disjoint(sys, *other, r.source);
    for (const auto* other : tgt[r.target_level]) c.targets_disjoint = c.targets_disjoint && disjoint(sys, *other, r.target);
    src[r.source_level].push_back(&r.source);
    tgt[r.target_level].push_back(&r.target);
    c.targets_match_steps = c.targets_match_steps && apply_steps(sys, r.steps, r.source) == r.target;
    c.measures_match =
        c.measures_match && sys.measure(r.target) == AlgebraicReal(steps_scale(sys, r.steps)) * sys.measure(r.source);
    for (const auto& st : r.steps) c.translations_only = c.translations_only && st.kind == Step::Kind::translate;
  }
  return c;
}

/// Every rule has no net steps, keeps its level and sends its source onto itself.
template <ClopenSystem S>
bool is_identity(const S& sys, const PiecewiseMap<typename S::Set>& m) {
  for (const auto& r : m.rules) {
    if (!simplify_steps(r.steps).empty() || r.source_level != r.target_level || !(r.source == r.target)) return false;
  }
  (void)sys;
  return true;
}

/// Union of the rule targets at level l.
template <ClopenSystem S>
typename S::Set image_at(const S& sys, const PiecewiseMap<typename S::Set>& m, Level l) {
  auto out = sys.empty();
  for (const auto& r : m.rules) {
    if (r.target_level == l) out = sys.unite(out, r.target);
  }
  return out;
}

/// Union of the rule sources at level l.
template <ClopenSystem S>
typename S::Set domain_at(const S& sys, const PiecewiseMap<typename S::Set>& m, Level l) {
  auto out = sys.empty();
  for (const auto& r : m.rules) {
    if (r.source_level == l) out = sys.unite(out, r.source);
  }
  return out;
}

}  // namespace cantor
