#pragma once

#include <optional>
#include <vector>

#include "cantor/exact/rational.hpp"

namespace cantor {

/// Small dense rational matrices, row-major. Sizes here never exceed a handful.
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

RationalMatrix identity_matrix(std::size_t n);
RationalMatrix transpose(const RationalMatrix& a);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
/// Row vector times matrix.
RationalVector multiply(const RationalVector& v, const RationalMatrix& a);

Rational determinant(RationalMatrix a);
std::size_t rank(RationalMatrix a);
/// Inverse of a square matrix, or nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& a);

}  // namespace cantor
