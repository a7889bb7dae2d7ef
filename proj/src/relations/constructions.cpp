#include "cantor/relations/constructions.hpp"

#include <cstdlib>

namespace cantor {

std::uint64_t cover_search_bound() {
  if (const char* env = std::getenv("CANTOR_FG_SEARCH_BOUND")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v >= 1) return static_cast<std::uint64_t>(v);
  }
  return 10000;
}

std::int64_t flat_level(Level l) {
  std::int64_t a = l.index - 1, b = l.stage - 1;
  return (a + b) * (a + b + 1) / 2 + b + 1;
}

}  // namespace cantor
