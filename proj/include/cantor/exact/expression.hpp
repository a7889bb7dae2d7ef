#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cantor/exact/algebraic.hpp"

namespace cantor {

/// Parses an exact real expression: integers, + - * / ^ (integer exponents),
/// parentheses, sqrt(q), cbrt(q), cos(2*pi/7). The identifier `a` stands for the
/// generator of `context` and is rejected when no context is given.
///
/// sqrt and cbrt normalise their radicand, so sqrt(20) lands in Q(sqrt 5) and
/// cbrt(4) is expressed as the square of cbrt(2). `root(x^2-5@0)` denotes a
/// field generator explicitly, which is what to_expression emits.
AlgebraicReal parse_real(std::string_view text, const FieldPtr& context = nullptr);

/// Parses a field description "x^2-5" or "x^3+x^2-2*x-1 @ 2". The optional
/// suffix selects a real root by ascending index; the default is the largest.
FieldPtr parse_field(std::string_view text);

/// Integer polynomial in x, e.g. "x^3-2".
std::vector<BigInt> parse_integer_polynomial(std::string_view text);

/// Self-contained expression that parse_real maps back to the same value.
std::string to_expression(const AlgebraicReal& x);

/// Field for 2*cos(2*pi/7): the root of x^3+x^2-2x-1 in (1.2, 1.3).
FieldPtr heptagonal_field();

/// Replaces U+2212 by '-'; strips ASCII whitespace.
std::string normalize_input(std::string_view text);

/// Splits on `sep` at parenthesis depth zero and trims the pieces.
std::vector<std::string> split_top_level(std::string_view text, char sep);

}  // namespace cantor
