#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cspk/capture.hpp"
#include "cspk/cone.hpp"
#include "cspk/relation.hpp"
#include "cspk/sparsify.hpp"

namespace cspk {

struct RelationAnalysis {
  std::string name;
  int arity = 0;
  std::size_t size = 0;
  WeightSpectrum spectrum;
  BalanceResult balance;
  OrArityEntry or_arity;
  Strategy strategy = Strategy::DedupOnly;
  std::optional<bool> or2_interdefinable;  // arity-2 relations only
};

struct LowerBoundClaim {
  int exponent = 0;          // no kernel of size O(n^(exponent - eps))
  std::string statement;     // human-readable, conditional on NP !< coNP/poly
  std::string basis;         // machine-readable reason tag
  std::string basis_detail;  // why the preconditions hold
  std::string relation;      // witnessing relation
  std::optional<ConeDefinition> certificate;
  int certificate_target_arity = 0;  // arity of the OR the certificate defines
};

struct ClassificationReport {
  std::vector<RelationAnalysis> relations;
  SchaeferReport schaefer;
  bool tractable = false;
  bool balanced = false;
  bool symmetric = false;
  int max_arity = 0;

  int upper_exponent = 1;      // language-level kernel size O(n^upper_exponent)
  int strategy_exponent = 1;   // max per-relation strategy exponent (may be smaller)
  OrArityReport or_report;

  std::optional<LowerBoundClaim> lower_bound;
  std::string optimality;  // TIGHT | UNKNOWN | NOT_APPLICABLE
};

RelationAnalysis analyze_relation(const BooleanRelation& r,
                                  const ConeSearchLimits& limits = {});

ClassificationReport classify_language(const ConstraintLanguage& language,
                                       const ConeSearchLimits& limits = {});

}  // namespace cspk
