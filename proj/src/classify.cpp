#include "cspk/classify.hpp"

#include <algorithm>

namespace cspk {

namespace {

int strategy_exponent_for(const RelationAnalysis& ra) {
  switch (ra.strategy) {
    case Strategy::DropFull: return 0;
    case Strategy::Degree1: return 1;
    case Strategy::DegreeKm1: return ra.arity - 1;
    case Strategy::DedupOnly: return ra.arity;
  }
  return ra.arity;
}

}  // namespace

RelationAnalysis analyze_relation(const BooleanRelation& r, const ConeSearchLimits& limits) {
  RelationAnalysis ra;
  ra.name = r.name();
  ra.arity = r.arity();
  ra.size = r.size();
  ra.spectrum = weight_spectrum(r);
  ra.balance = decide_balanced(r);
  ra.or_arity = max_or_arity(r, limits);
  ra.strategy = plan_strategy(r).strategy;
  if (r.arity() == 2) {
    BooleanRelation or2 = kor(2);
    ra.or2_interdefinable = search_cone_definition(or2, r, limits).found() &&
                            search_cone_definition(r, or2, limits).found();
  }
  return ra;
}

ClassificationReport classify_language(const ConstraintLanguage& language,
                                       const ConeSearchLimits& limits) {
  ClassificationReport report;
  for (const auto& r : language.relations())
    report.relations.push_back(analyze_relation(r, limits));

  report.schaefer = schaefer_report(language);
  report.tractable = report.schaefer.tractable;
  report.balanced = std::all_of(report.relations.begin(), report.relations.end(),
                                [](const RelationAnalysis& ra) { return ra.balance.balanced; });
  report.symmetric = std::all_of(report.relations.begin(), report.relations.end(),
                                 [](const RelationAnalysis& ra) { return ra.spectrum.is_symmetric; });
  report.max_arity = language.max_arity();

  for (const auto& ra : report.relations) {
    report.or_report.per_relation.push_back(ra.or_arity);
    report.or_report.language_max = std::max(report.or_report.language_max, ra.or_arity.value);
    report.or_report.exact = report.or_report.exact && ra.or_arity.exact;
  }

  // language-level kernel exponent
  const bool has_top_one_unsat =
      std::any_of(report.relations.begin(), report.relations.end(), [&](const RelationAnalysis& ra) {
        return ra.arity == report.max_arity &&
               ra.size == (std::size_t{1} << ra.arity) - 1;
      });
  if (report.balanced) report.upper_exponent = 1;
  else if (!has_top_one_unsat) report.upper_exponent = std::max(1, report.max_arity - 1);
  else report.upper_exponent = report.max_arity;

  report.strategy_exponent = 1;
  for (const auto& ra : report.relations)
    report.strategy_exponent = std::max(report.strategy_exponent, strategy_exponent_for(ra));

  // lower bounds need NP-completeness; certificates are validated cone
  // definitions of the relevant OR
  if (!report.tractable) {
    std::vector<LowerBoundClaim> claims;

    const bool all_low_arity = report.max_arity <= 3;
    if (all_low_arity && report.or_report.exact) {
      int k = report.or_report.language_max;
      for (const auto& ra : report.relations) {
        if (ra.or_arity.value == k && ra.or_arity.definition) {
          LowerBoundClaim c;
          c.exponent = k;
          c.statement = "no generalized kernel of size O(n^(" + std::to_string(k) +
                        "-eps)) for any eps > 0, unless NP is in coNP/poly";
          c.basis = "largest-expressible-or";
          c.basis_detail = "the largest OR expressible from the language with constants and "
                           "negations has arity " + std::to_string(k) +
                           "; kernels of size O(n^" + std::to_string(k) + ") exist and are optimal";
          c.relation = ra.name;
          c.certificate = ra.or_arity.definition;
          c.certificate_target_arity = k;
          claims.push_back(std::move(c));
          break;
        }
      }
    }
    if (has_top_one_unsat) {
      for (const auto& ra : report.relations) {
        if (ra.arity == report.max_arity && ra.size == (std::size_t{1} << ra.arity) - 1) {
          LowerBoundClaim c;
          c.exponent = report.max_arity;
          c.statement = "no generalized kernel of size O(n^(" + std::to_string(c.exponent) +
                        "-eps)) for any eps > 0, unless NP is in coNP/poly";
          c.basis = "one-falsifying-assignment";
          c.basis_detail = "relation " + ra.name + " has exactly one falsifying assignment at the "
                           "maximum arity, so it expresses " + std::to_string(c.exponent) +
                           "-OR up to negations";
          c.relation = ra.name;
          c.certificate = one_unsat_or_definition(language.at(ra.name));
          c.certificate_target_arity = c.exponent;
          claims.push_back(std::move(c));
          break;
        }
      }
    }
    if (report.symmetric && !report.balanced) {
      for (const auto& ra : report.relations) {
        if (!ra.balance.balanced) {
          LowerBoundClaim c;
          c.exponent = 2;
          c.statement = "no generalized kernel of size O(n^(2-eps)) for any eps > 0, "
                        "unless NP is in coNP/poly";
          c.basis = "symmetric-unbalanced";
          c.basis_detail = "symmetric relation " + ra.name + " is unbalanced and expresses "
                           "binary OR with constants and negations";
          c.relation = ra.name;
          c.certificate = symmetric_two_or_definition(language.at(ra.name));
          c.certificate_target_arity = 2;
          claims.push_back(std::move(c));
          break;
        }
      }
    }

    // strongest claim wins; earlier entries break ties
    for (const auto& c : claims)
      if (!report.lower_bound || c.exponent > report.lower_bound->exponent)
        report.lower_bound = c;
  }

  // conditional lower bounds need NP-completeness; tractable languages get
  // kernels but no optimality claim
  if (report.lower_bound && report.lower_bound->exponent == report.upper_exponent)
    report.optimality = "TIGHT";
  else report.optimality = "UNKNOWN";

  return report;
}

}  // namespace cspk
