#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cspk/capture.hpp"
#include "cspk/config.hpp"
#include "cspk/relation.hpp"

namespace cspk {

// One slot of a cone definition: a constant, a target variable, or a
// negated target variable.
struct ConeSymbol {
  enum class Kind { Const0, Const1, Var, NegVar };
  Kind kind = Kind::Const0;
  int var = 0;  // 1-based, for Var/NegVar

  static ConeSymbol constant(int b) { return {b ? Kind::Const1 : Kind::Const0, 0}; }
  static ConeSymbol variable(int v) { return {Kind::Var, v}; }
  static ConeSymbol negated(int v) { return {Kind::NegVar, v}; }

  // 0 < 1 < x_1 < !x_1 < x_2 < ...
  int rank() const;

  // Value under an assignment of the target variables (bit i-1 of mask
  // is the value of x_i).
  int value(std::uint32_t assignment) const;

  bool operator==(const ConeSymbol&) const = default;
  std::string to_string() const;
};

struct ConeDefinition {
  int target_arity = 0;  // m
  int source_arity = 0;  // n
  std::vector<ConeSymbol> symbols;  // length n

  std::string to_string() const;
  bool operator==(const ConeDefinition&) const = default;
};

// All 2^m assignments replayed; also enforces that every target variable
// occurs. Throws on malformed definitions.
bool check_cone_definition(const BooleanRelation& target, const BooleanRelation& source,
                           const ConeDefinition& def);

struct ConeSearchLimits {
  int max_source_arity = Config::get().cone_search_max_source_arity;
};

enum class ConeSearchStatus { Found, NoneExact, Capped };

struct ConeSearchResult {
  ConeSearchStatus status = ConeSearchStatus::NoneExact;
  std::optional<ConeDefinition> definition;

  bool found() const { return status == ConeSearchStatus::Found; }
  bool exact() const { return status != ConeSearchStatus::Capped; }
};

// Lexicographically first valid definition over the symbol order, or an
// exhaustive NoneExact; Capped when the source arity exceeds the limit.
ConeSearchResult search_cone_definition(const BooleanRelation& target,
                                        const BooleanRelation& source,
                                        const ConeSearchLimits& limits = {});

// |R| = 2^k - 1: y_i = x_i where the unique non-member has a 0, negated
// otherwise; defines k-OR.
ConeDefinition one_unsat_or_definition(const BooleanRelation& r);

// Nonempty proper relation defines 1-OR through any (member, non-member)
// pair; deterministic on the lexicographically first pair.
ConeDefinition one_or_definition(const BooleanRelation& r);

// Shortens an alternating weight identity to a,b,c in S, d in U with
// a - b + c = d.
struct WeightQuadruple {
  int a = 0, b = 0, c = 0, d = 0;
};
WeightQuadruple shorten_weight_witness(const std::vector<int>& weights, int target_weight,
                                       const std::set<int>& satisfying, int arity);

// 2-OR definition from a symmetric unbalanced relation; direct quadruple
// scan first, witness shortening as fallback.
ConeDefinition symmetric_two_or_definition(const BooleanRelation& r);

struct OrArityEntry {
  std::string relation;
  int value = 0;
  bool exact = true;
  std::optional<ConeDefinition> definition;  // witnessing the reported value
};

struct OrArityReport {
  std::vector<OrArityEntry> per_relation;
  int language_max = 0;
  bool exact = true;
};

OrArityEntry max_or_arity(const BooleanRelation& r, const ConeSearchLimits& limits = {});
OrArityReport max_or_arity(const ConstraintLanguage& language,
                           const ConeSearchLimits& limits = {});

// def(T from U) composed with def(U from W) gives def(T from W).
ConeDefinition compose_cone_definitions(const ConeDefinition& outer, const ConeDefinition& inner);

}  // namespace cspk
