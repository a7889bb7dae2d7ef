#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace cantor {

/// Element of Z (b unused, always 0) or Z^2.
struct GroupElement {
  std::int64_t a = 0;
  std::int64_t b = 0;

  bool is_zero() const { return a == 0 && b == 0; }
  GroupElement operator-() const { return {-a, -b}; }
  friend GroupElement operator+(GroupElement x, GroupElement y) { return {x.a + y.a, x.b + y.b}; }
  friend GroupElement operator-(GroupElement x, GroupElement y) { return {x.a - y.a, x.b - y.b}; }
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// "3" for rank one, "(3,-1)" for rank two.
std::string to_string(GroupElement g, int rank);

/// The n-th group element (n >= 0) in the fixed enumeration: for Z the order
/// 0, 1, -1, 2, -2, ...; for Z^2 ascending max-norm shells, each shell in
/// lexicographic order.
GroupElement enumerate_element(int rank, std::uint64_t n);

/// The first `count` elements of the enumeration.
std::vector<GroupElement> enumerate_prefix(int rank, std::uint64_t count);

/// Psi(k, i) = (i-1) n + k, a bijection {1..n} x N -> N.
inline std::int64_t psi(std::int64_t k, std::int64_t i, std::int64_t n) { return (i - 1) * n + k; }

/// Inverse of psi: j -> (k, i).
inline std::pair<std::int64_t, std::int64_t> psi_inverse(std::int64_t j, std::int64_t n) {
  return {(j - 1) % n + 1, (j - 1) / n + 1};
}

}  // namespace cantor
