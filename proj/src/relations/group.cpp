#include "cantor/relations/group.hpp"

#include <cstdlib>

namespace cantor {

std::string to_string(GroupElement g, int rank) {
  if (rank == 1) return std::to_string(g.a);
  return "(" + std::to_string(g.a) + "," + std::to_string(g.b) + ")";
}

GroupElement enumerate_element(int rank, std::uint64_t n) {
  if (rank == 1) {
    if (n == 0) return {};
    auto k = static_cast<std::int64_t>((n + 1) / 2);
    return {n % 2 == 1 ? k : -k, 0};
  }
  if (n == 0) return {};
  // Shell r holds (2r+1)^2 - (2r-1)^2 = 8r elements.
  std::uint64_t r = 1, before = 1;
  while (before + 8 * r <= n) {
    before += 8 * r;
    ++r;
  }
  std::uint64_t offset = n - before;
  auto R = static_cast<std::int64_t>(r);
  for (std::int64_t a = -R; a <= R; ++a) {
    for (std::int64_t b = -R; b <= R; ++b) {
      if (std::max(std::llabs(a), std::llabs(b)) != R) continue;
      if (offset == 0) return {a, b};
      --offset;
    }
  }
  return {};
}

std::vector<GroupElement> enumerate_prefix(int rank, std::uint64_t count) {
  std::vector<GroupElement> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(enumerate_element(rank, i));
  return out;
}

}  // namespace cantor
