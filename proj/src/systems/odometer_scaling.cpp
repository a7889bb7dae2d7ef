#include "cantor/systems/odometer_scaling.hpp"

#include <algorithm>

namespace cantor {

std::optional<long> period_power(const Odometer& od, const AlgebraicReal& lambda) {
  if (!od.spec().purely_periodic() || !lambda.is_rational() || lambda.sign() <= 0) return std::nullopt;
  BigInt q = 1;
  for (auto b : od.spec().period) q *= static_cast<unsigned long>(b);
  Rational r = lambda.rational_value();
  bool small = r < 1;
  BigInt v = small ? BigInt(r.get_den()) : BigInt(r.get_num());
  if ((small ? r.get_num() : r.get_den()) != 1) return std::nullopt;
  long k = 0;
  while (v > 1) {
    if (v % q != 0) return std::nullopt;
    v /= q;
    ++k;
  }
  return small ? -k : k;
}

PiecewiseMap<OdSet> prepend_map(const Odometer& od, const std::vector<unsigned>& word) {
  Step st = Step::prepend(word);
  return {{{od.full(), Level{}, {st}, Level{}, od.apply(st, od.full())}}};
}

std::int64_t witness_levels(const Odometer& od, const std::vector<AlgebraicReal>& lambdas) {
  std::int64_t n = 1;
  for (const auto& l : lambdas) {
    if (auto k = period_power(od, l)) {
      std::int64_t q = static_cast<std::int64_t>(od.product(static_cast<unsigned>(od.spec().period.size())));
      std::int64_t c = 1;
      for (long i = 0; i < std::labs(*k); ++i) c *= q;
      n = std::max(n, c);
    }
  }
  return std::max<std::int64_t>(3, n * n + 2);
}

std::optional<ScalingWitness<OdSet>> odometer_witness(const Odometer& od, const AlgebraicReal& lambda,
                                                      std::int64_t levels, unsigned test_depth) {
  auto k = period_power(od, lambda);
  if (!k) return std::nullopt;
  if (*k == 0) {
    PiecewiseMap<OdSet> id{{{od.full(), Level{}, {}, Level{}, od.full()}}};
    return scaling_automorphism(od, od.full(), id, levels, test_depth);
  }
  std::vector<unsigned> word(static_cast<std::size_t>(std::labs(*k)) * od.spec().period.size(), 0);
  auto w = scaling_automorphism(od, od.cylinder(word), prepend_map(od, word), levels, test_depth);
  if (*k > 0) return invert_witness(w);
  return w;
}

}  // namespace cantor
