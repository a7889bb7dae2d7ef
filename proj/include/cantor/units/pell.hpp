#pragma once

#include <optional>
#include <string>

#include "cantor/exact/algebraic.hpp"

namespace cantor {

/// Least solution of t^2 - D u^2 = +-4 with t, u > 0.
struct PellSolution {
  BigInt D;
  BigInt t;
  BigInt u;
  int sign = 0;  // +4 or -4
  /// (t + u sqrt D) / 2 in the field Q(sqrt D).
  AlgebraicReal epsilon0;
};

/// Whether D is a non-square integer >= 5 with D = 0 or 1 mod 4.
bool is_quadratic_discriminant(const BigInt& D);

/// Continued-fraction solver; throws "not a discriminant" for invalid D.
PellSolution pell_min_solution(const BigInt& D);

/// Outcome of comparing the continued-fraction answer with exhaustive search.
struct PellCrossCheck {
  PellSolution cf;
  std::int64_t search_bound = 0;
  /// Exhaustive search result, if some u <= search_bound solves the equation.
  std::optional<std::pair<std::int64_t, std::int64_t>> brute;
  int brute_sign = 0;
  bool agree = false;
  /// How agreement was established: "exhaustive" or "exhaustive+power-bound".
  std::string method;
};

/// Searches u = 1..search_bound. When nothing is found the continued-fraction
/// unit must exceed the bound and be smaller than the square of the least value
/// any unseen solution could take, so it cannot be a proper power.
PellCrossCheck pell_cross_check(const BigInt& D, std::int64_t search_bound);

}  // namespace cantor
