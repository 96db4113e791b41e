#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cspk/capture.hpp"
#include "cspk/relation.hpp"

namespace cspk {

// One constraint application: a relation name and a variable tuple
// (1-based; repeats allowed).
struct Constraint {
  std::string relation;
  std::vector<int> vars;

  bool operator==(const Constraint&) const = default;
};

struct CspInstance {
  int num_vars = 0;
  std::vector<Constraint> constraints;

  // Throws on undefined relation names, arity mismatches, and variable
  // indices outside [1, num_vars].
  void validate(const ConstraintLanguage& language) const;

  bool operator==(const CspInstance&) const = default;
};

enum class Strategy { DropFull, Degree1, DegreeKm1, DedupOnly };

std::string strategy_name(Strategy s);

struct RelationPlan {
  Strategy strategy = Strategy::DedupOnly;
  // Degree1: mod-q entries per non-member. DegreeKm1: rational entries.
  std::optional<CaptureCertificate> certificate;
};

// DropFull for the full relation, Degree1 when balanced, DegreeKm1 when
// |R| < 2^k - 1, DedupOnly for the remaining |R| = 2^k - 1 case.
RelationPlan plan_strategy(const BooleanRelation& r);

// Row-basis reduction of all constraints over one relation; the returned
// positions (a subset of the given ones, increasing) suffice to imply
// every discarded constraint on Boolean assignments.
std::vector<std::size_t> reduce_relation_constraints(
    const BooleanRelation& r, const std::vector<std::pair<std::size_t, std::vector<int>>>& constraints,
    int num_vars, const RelationPlan& plan);

struct RelationStrategyReport {
  std::string relation;
  Strategy strategy = Strategy::DedupOnly;
  std::size_t constraint_count = 0;
  std::size_t kept_count = 0;
  Int size_bound;  // claimed bound for this relation at this n
  std::optional<CaptureCertificate> certificate;
};

struct KernelReport {
  std::vector<std::size_t> kept;  // positions into the input constraint list
  std::vector<RelationStrategyReport> strategies;
  Int total_bound;
};

std::pair<CspInstance, KernelReport> sparsify_instance(const ConstraintLanguage& language,
                                                       const CspInstance& instance);

}  // namespace cspk
