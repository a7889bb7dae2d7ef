#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/exact/rational.hpp"

namespace cantor {

/// Formal product of prime powers p^e with e finite (>= 1) or infinite.
class Supernatural {
 public:
  /// nullopt encodes an infinite exponent.
  using Exponent = std::optional<unsigned>;

  Supernatural() = default;

  static Supernatural infinite_power(std::uint64_t p);
  /// Parses "2^inf*3^2", "6^inf", "1". Composite bases are factored.
  static Supernatural parse(std::string_view text);

  /// Multiplies in p^e (e = nullopt for p^inf).
  void multiply(std::uint64_t p, Exponent e);
  /// Multiplies in every prime factor of n with its multiplicity.
  void multiply_integer(std::uint64_t n);
  /// Multiplies in n^inf.
  void multiply_integer_infinitely(std::uint64_t n);

  const std::map<std::uint64_t, Exponent>& exponents() const { return exps_; }
  Exponent exponent(std::uint64_t p) const;
  /// Primes with infinite exponent, ascending.
  std::vector<std::uint64_t> infinite_primes() const;

  /// Whether the positive integer q divides this supernatural number.
  bool divisible_by(const BigInt& q) const;

  /// Canonical rendering "2^inf*3^2", or "1".
  std::string to_string() const;

  friend bool operator==(const Supernatural& a, const Supernatural& b) = default;

 private:
  std::map<std::uint64_t, Exponent> exps_;
};

}  // namespace cantor
