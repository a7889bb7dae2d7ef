#pragma once

#include <optional>
#include <vector>

#include "cantor/relations/constructions.hpp"
#include "cantor/systems/odometer.hpp"

namespace cantor {

/// k with lambda = Q^k, Q the product of one period, for a purely periodic base.
std::optional<long> period_power(const Odometer& od, const AlgebraicReal& lambda);

/// x -> wx on X x {(1,1)}.
PiecewiseMap<OdSet> prepend_map(const Odometer& od, const std::vector<unsigned>& word);

/// Level bound large enough to compose any two of the witnesses for `lambdas`.
std::int64_t witness_levels(const Odometer& od, const std::vector<AlgebraicReal>& lambdas);

/// Built-in witness for lambda = Q^k: prepend k periods of zeros (k < 0),
/// the inverse of that witness (k > 0), or the identity. Other lambdas get none.
std::optional<ScalingWitness<OdSet>> odometer_witness(const Odometer& od, const AlgebraicReal& lambda,
                                                      std::int64_t levels, unsigned test_depth);

}  // namespace cantor
