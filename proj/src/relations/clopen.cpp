#include "cantor/relations/clopen.hpp"

#include <numeric>

#include "cantor/lattice/lattice.hpp"

namespace cantor {

std::string to_string(Level l) { return "(" + std::to_string(l.index) + "," + std::to_string(l.stage) + ")"; }

Step Step::inverse() const {
  switch (kind) {
    case Kind::translate:
      return translate(-g);
    case Kind::prepend:
      return strip(word);
    case Kind::strip:
      return prepend(word);
  }
  return *this;
}

std::string to_string(const Step& s, int rank) {
  auto word = [&] {
    std::string w;
    for (std::size_t i = 0; i < s.word.size(); ++i) w += (i ? "," : "") + std::to_string(s.word[i]);
    return "[" + w + "]";
  };
  switch (s.kind) {
    case Step::Kind::translate:
      return "translate " + to_string(s.g, rank);
    case Step::Kind::prepend:
      return "prepend " + word();
    case Step::Kind::strip:
      return "strip " + word();
  }
  return "?";
}

std::vector<Step> invert_steps(const std::vector<Step>& steps) {
  std::vector<Step> out;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) out.push_back(it->inverse());
  return out;
}

std::vector<Step> simplify_steps(std::vector<Step> steps) {
  std::vector<Step> out;
  for (auto& s : steps) {
    if (!out.empty()) {
      Step& last = out.back();
      if (last.kind == Step::Kind::translate && s.kind == Step::Kind::translate) {
        last.g = last.g + s.g;
        if (last.g.is_zero()) out.pop_back();
        continue;
      }
      if (last.kind != Step::Kind::translate && s.kind != Step::Kind::translate && last.kind != s.kind &&
          last.word == s.word) {
        out.pop_back();
        continue;
      }
    }
    if (s.kind == Step::Kind::translate && s.g.is_zero()) continue;
    out.push_back(std::move(s));
  }
  return out;
}

bool spans_equal(const std::vector<AlgebraicReal>& a, const std::vector<AlgebraicReal>& b) {
  FieldPtr f;
  for (const auto* list : {&a, &b}) {
    for (const auto& x : *list) {
      if (!x.is_rational()) f = x.field();
    }
  }
  if (!f) {
    // The Z-span of rationals p_i/q_i is g Z with g = gcd(p_i') / lcm(q_i).
    auto gen = [](const std::vector<AlgebraicReal>& xs) {
      BigInt den = 1;
      for (const auto& x : xs) den = lcm(den, BigInt(x.rational_value().get_den()));
      BigInt num = 0;
      for (const auto& x : xs) num = gcd(num, BigInt(x.rational_value().get_num() * (den / x.rational_value().get_den())));
      return make_rational(num, den);
    };
    return gen(a) == gen(b);
  }
  return FieldLattice(f, a) == FieldLattice(f, b);
}

}  // namespace cantor
