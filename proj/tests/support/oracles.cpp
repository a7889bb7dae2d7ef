#include "support/oracles.hpp"

#include <cmath>
#include <functional>

namespace oracle {

namespace {

bool is_square(std::int64_t v, std::int64_t& root) {
  if (v < 0) return false;
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<long double>(v))));
  for (std::int64_t c = r - 2 < 0 ? 0 : r - 2; c <= r + 2; ++c) {
    if (c * c == v) {
      root = c;
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<PellPair> pell_brute_force(std::int64_t D, std::int64_t u_max) {
  for (std::int64_t u = 1; u <= u_max; ++u) {
    std::int64_t du2 = D * u * u;
    std::int64_t t = 0;
    // Smaller t first: -4 gives the smaller (t + u sqrt D)/2 for equal u.
    if (du2 >= 4 && is_square(du2 - 4, t) && t > 0) return PellPair{t, u, -4};
    if (is_square(du2 + 4, t)) return PellPair{t, u, 4};
  }
  return std::nullopt;
}

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool lattice_member_brute_force(const std::vector<std::vector<std::int64_t>>& basis,
                                const std::vector<std::int64_t>& target, int bound) {
  std::size_t r = basis.size();
  std::size_t d = target.size();
  std::vector<std::int64_t> acc(d, 0);
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == r) return acc == target;
    for (int z = -bound; z <= bound; ++z) {
      for (std::size_t k = 0; k < d; ++k) acc[k] += z * basis[i][k];
      bool hit = go(i + 1);
      for (std::size_t k = 0; k < d; ++k) acc[k] -= z * basis[i][k];
      if (hit) return true;
    }
    return false;
  };
  return go(0);
}

std::int64_t pure_cubic_norm(std::int64_t m, std::int64_t a, std::int64_t b, std::int64_t c) {
  return a * a * a + m * b * b * b + m * m * c * c * c - 3 * m * a * b * c;
}

std::vector<unsigned> odometer_add(const std::vector<std::uint64_t>& bases, std::vector<unsigned> word, std::int64_t g) {
  // Repeated +1 or -1 on the digits, the way the adding machine is defined.
  for (std::int64_t step = 0; step < (g < 0 ? -g : g); ++step) {
    for (std::size_t i = 0; i < word.size(); ++i) {
      auto n = static_cast<unsigned>(bases[i]);
      if (g > 0) {
        if (word[i] + 1 < n) {
          ++word[i];
          break;
        }
        word[i] = 0;
      } else {
        if (word[i] > 0) {
          --word[i];
          break;
        }
        word[i] = n - 1;
      }
    }
  }
  return word;
}

int cumulative_exponent(const std::vector<std::uint64_t>& preperiod, const std::vector<std::uint64_t>& period,
                        std::int64_t p, std::size_t k) {
  int e = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t n = i < preperiod.size() ? preperiod[i] : period[(i - preperiod.size()) % period.size()];
    while (n % static_cast<std::uint64_t>(p) == 0) {
      n /= static_cast<std::uint64_t>(p);
      ++e;
    }
  }
  return e;
}

std::vector<std::int64_t> unbounded_primes(const std::vector<std::uint64_t>& preperiod,
                                           const std::vector<std::uint64_t>& period) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p < 1000; ++p) {
    bool prime = true;
    for (std::int64_t d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
    if (!prime) continue;
    std::size_t k1 = preperiod.size() + 10 * period.size(), k2 = preperiod.size() + 20 * period.size();
    if (cumulative_exponent(preperiod, period, p, k2) > cumulative_exponent(preperiod, period, p, k1)) out.push_back(p);
  }
  return out;
}

long double circle_point(long double a, long double b, std::int64_t n, std::int64_t m) {
  long double v = static_cast<long double>(n) * a + static_cast<long double>(m) * b;
  return v - std::floor(v);
}

}  // namespace oracle
