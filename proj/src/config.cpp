#include "cspk/config.hpp"

#include <cstdlib>
#include <string>

namespace cspk {

namespace {

Config load_from_env() {
  Config c;
  if (const char* v = std::getenv("CSPK_MAX_ARITY")) {
    int n = std::atoi(v);
    if (n >= 1 && n <= Config::kHardMaxArity) c.max_arity = n;
  }
  if (const char* v = std::getenv("CSPK_ORACLE_BUDGET")) {
    long long n = std::atoll(v);
    if (n > 0) {
      c.sat_budget = static_cast<std::uint64_t>(n);
      c.equivalence_budget = static_cast<std::uint64_t>(n);
    }
  }
  return c;
}

}  // namespace

const Config& Config::get() {
  static const Config instance = load_from_env();
  return instance;
}

}  // namespace cspk
