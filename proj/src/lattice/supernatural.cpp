#include "cantor/lattice/supernatural.hpp"

#include <charconv>

#include "cantor/error.hpp"
#include "cantor/exact/expression.hpp"

namespace cantor {

namespace {

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) fail_parse("expected positive integer", s);
  return v;
}

}  // namespace

Supernatural Supernatural::infinite_power(std::uint64_t p) {
  Supernatural n;
  n.multiply_integer_infinitely(p);
  return n;
}

void Supernatural::multiply(std::uint64_t p, Exponent e) {
  if (!is_prime(p)) fail_precondition("not a prime", std::to_string(p));
  if (e && *e == 0) return;
  auto it = exps_.find(p);
  if (it == exps_.end()) {
    exps_.emplace(p, e);
  } else if (!e || !it->second) {
    it->second = std::nullopt;
  } else {
    *it->second += *e;
  }
}

void Supernatural::multiply_integer(std::uint64_t n) {
  if (n == 0) fail_precondition("zero is not a supernatural factor");
  for (auto [p, e] : factorize(n)) multiply(p, e);
}

void Supernatural::multiply_integer_infinitely(std::uint64_t n) {
  if (n == 0) fail_precondition("zero is not a supernatural factor");
  for (auto [p, e] : factorize(n)) multiply(p, std::nullopt);
}

Supernatural Supernatural::parse(std::string_view text) {
  std::string s = normalize_input(text);
  if (s.rfind("supernatural:", 0) == 0) s = s.substr(13);
  Supernatural n;
  if (s.empty()) fail_parse("empty supernatural number");
  for (const auto& factor : split_top_level(s, '*')) {
    auto caret = factor.find('^');
    std::uint64_t base = parse_u64(factor.substr(0, caret));
    if (base == 0) fail_parse("zero factor", factor);
    if (caret == std::string::npos) {
      n.multiply_integer(base);
      continue;
    }
    std::string e = factor.substr(caret + 1);
    if (e == "inf" || e == "infinity" || e == "\xE2\x88\x9E") {
      if (base > 1) n.multiply_integer_infinitely(base);
    } else {
      std::uint64_t k = parse_u64(e);
      if (k > 4096) fail_parse("exponent too large", factor);
      for (std::uint64_t i = 0; i < k; ++i) n.multiply_integer(base);
    }
  }
  return n;
}

Supernatural::Exponent Supernatural::exponent(std::uint64_t p) const {
  auto it = exps_.find(p);
  return it == exps_.end() ? Exponent(0) : it->second;
}

std::vector<std::uint64_t> Supernatural::infinite_primes() const {
  std::vector<std::uint64_t> out;
  for (const auto& [p, e] : exps_) {
    if (!e) out.push_back(p);
  }
  return out;
}

bool Supernatural::divisible_by(const BigInt& q) const {
  if (sgn(q) <= 0) fail_precondition("divisor must be positive");
  BigInt rest = q;
  for (const auto& [p, e] : exps_) {
    BigInt bp(std::to_string(p));
    unsigned k = 0;
    while (rest % bp == 0) {
      rest /= bp;
      ++k;
    }
    if (e && k > *e) return false;
  }
  return rest == 1;
}

std::string Supernatural::to_string() const {
  if (exps_.empty()) return "1";
  std::string out;
  for (const auto& [p, e] : exps_) {
    if (!out.empty()) out += "*";
    out += std::to_string(p) + "^" + (e ? std::to_string(*e) : std::string("inf"));
  }
  return out;
}

}  // namespace cantor
