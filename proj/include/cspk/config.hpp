#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cspk {

// Runtime caps. Hard limits protect the 2^k enumerations; the working
// values can be raised through environment variables, never past the
// hard cap.
struct Config {
  static constexpr int kHardMaxArity = 16;

  int max_arity = 8;                         // CSPK_MAX_ARITY
  std::uint64_t sat_budget = 1u << 24;       // CSPK_ORACLE_BUDGET (assignments)
  std::uint64_t equivalence_budget = 1u << 20;
  int cone_search_max_source_arity = 6;

  static const Config& get();  // singleton, env applied once
};

// Thrown when a configured cap or budget would be exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cspk
