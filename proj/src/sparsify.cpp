#include "cspk/sparsify.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

namespace cspk {

void CspInstance::validate(const ConstraintLanguage& language) const {
  if (num_vars < 0) throw std::invalid_argument("instance has negative variable count");
  for (const auto& c : constraints) {
    const BooleanRelation& r = language.at(c.relation);
    if (static_cast<int>(c.vars.size()) != r.arity())
      throw std::invalid_argument("constraint arity mismatch for relation " + c.relation);
    for (int v : c.vars)
      if (v < 1 || v > num_vars)
        throw std::invalid_argument("variable index out of range in constraint over " + c.relation);
  }
}

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::DropFull: return "DROP_FULL";
    case Strategy::Degree1: return "DEGREE1";
    case Strategy::DegreeKm1: return "DEGREE_KM1";
    case Strategy::DedupOnly: return "DEDUP_ONLY";
  }
  return "?";
}

RelationPlan plan_strategy(const BooleanRelation& r) {
  RelationPlan plan;
  if (r.is_full()) {
    plan.strategy = Strategy::DropFull;
    return plan;
  }
  BalanceResult bal = decide_balanced(r);
  if (bal.balanced) {
    plan.strategy = Strategy::Degree1;
    plan.certificate = std::move(bal.certificate);
    return plan;
  }
  if (r.size() < r.table_size() - 1) {
    plan.strategy = Strategy::DegreeKm1;
    CaptureCertificate cert;
    cert.relation = r.name();
    cert.arity = r.arity();
    for (std::uint32_t ui : r.nonmember_indices()) {
      Tuple u = index_to_tuple(ui, r.arity());
      cert.entries.emplace_back(ui, Ring::rationals(), degree_km1_capture(r, u));
    }
    plan.certificate = std::move(cert);
    return plan;
  }
  plan.strategy = Strategy::DedupOnly;
  return plan;
}

namespace {

// Instance-level monomial: the set of distinct variables after collapsing
// powers through x^2 = x.
using VarSet = std::vector<int>;

VarSet instantiate_monomial(Monomial m, const std::vector<int>& vars) {
  VarSet out;
  Monomial rest = m;
  while (rest) {
    int pos = std::countr_zero(rest);
    out.push_back(vars[pos]);
    rest &= rest - 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool varset_less(const VarSet& a, const VarSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Kept positions for the constraints of one relation under one capture
// entry; the union over entries is taken by the caller.
template <typename BasisFn>
std::vector<std::size_t> reduce_with_entry(
    const MultilinearPolynomial& p,
    const std::vector<std::pair<std::size_t, std::vector<int>>>& constraints, BasisFn basis) {
  // collect the instantiated monomial columns, ordered by degree then
  // lexicographically; constant column first
  std::map<VarSet, std::size_t, decltype(&varset_less)> columns(&varset_less);
  std::vector<std::map<VarSet, Rat, decltype(&varset_less)>> sparse_rows;
  for (const auto& [pos, vars] : constraints) {
    std::map<VarSet, Rat, decltype(&varset_less)> row(&varset_less);
    for (const auto& [m, coeff] : p.terms()) {
      VarSet vs = instantiate_monomial(m, vars);
      row[vs] += coeff;
    }
    for (const auto& [vs, c] : row) columns.emplace(vs, 0);
    sparse_rows.push_back(std::move(row));
  }
  std::size_t next = 0;
  for (auto& [vs, id] : columns) id = next++;

  std::vector<RatVec> rows;
  rows.reserve(sparse_rows.size());
  for (const auto& sr : sparse_rows) {
    RatVec dense(columns.size(), Rat(0));
    for (const auto& [vs, c] : sr) dense[columns.at(vs)] = c;
    rows.push_back(std::move(dense));
  }
  auto kept_rows = basis(rows);
  std::vector<std::size_t> kept;
  kept.reserve(kept_rows.size());
  for (auto i : kept_rows) kept.push_back(constraints[i].first);
  return kept;
}

}  // namespace

std::vector<std::size_t> reduce_relation_constraints(
    const BooleanRelation& r,
    const std::vector<std::pair<std::size_t, std::vector<int>>>& constraints, int num_vars,
    const RelationPlan& plan) {
  (void)r;
  (void)num_vars;
  if (constraints.empty()) return {};

  switch (plan.strategy) {
    case Strategy::DropFull:
      return {};

    case Strategy::DedupOnly: {
      std::vector<std::size_t> kept;
      std::set<std::vector<int>> seen;
      for (const auto& [pos, vars] : constraints)
        if (seen.insert(vars).second) kept.push_back(pos);
      return kept;
    }

    case Strategy::Degree1:
    case Strategy::DegreeKm1: {
      if (!plan.certificate) throw std::invalid_argument("strategy requires capture certificates");
      std::set<std::size_t> kept;
      for (const auto& entry : plan.certificate->entries) {
        std::vector<std::size_t> part;
        if (entry.ring.kind == Ring::Kind::Mod) {
          const PrimePowerModulus q = entry.ring.mod;
          part = reduce_with_entry(entry.polynomial, constraints,
                                   [&q](const std::vector<RatVec>& rows) {
                                     std::vector<IntVec> irows;
                                     irows.reserve(rows.size());
                                     for (const auto& row : rows) {
                                       IntVec ir(row.size());
                                       for (std::size_t j = 0; j < row.size(); ++j)
                                         ir[j] = mod_canonical(numerator(row[j]), q.q);
                                       irows.push_back(std::move(ir));
                                     }
                                     return modq_row_basis(irows, q);
                                   });
        } else {
          part = reduce_with_entry(entry.polynomial, constraints,
                                   [](const std::vector<RatVec>& rows) {
                                     return rational_row_basis(rows);
                                   });
        }
        kept.insert(part.begin(), part.end());
      }
      return {kept.begin(), kept.end()};
    }
  }
  return {};
}

namespace {

Int relation_bound(const BooleanRelation& r, const RelationPlan& plan, int n,
                   std::size_t count) {
  switch (plan.strategy) {
    case Strategy::DropFull: return 0;
    case Strategy::Degree1: {
      Int bound = 0;
      for (const auto& e : plan.certificate->entries) bound += Int(e.ring.mod.k_exp) * (n + 1);
      return bound;
    }
    case Strategy::DegreeKm1: {
      Int nk = 1;
      for (int i = 0; i < r.arity() - 1; ++i) nk *= n;
      return Int(r.table_size() - r.size()) * (nk + 1);
    }
    case Strategy::DedupOnly: {
      Int nk = 1;
      for (int i = 0; i < r.arity(); ++i) nk *= n;
      return std::min(nk, Int(count));
    }
  }
  return 0;
}

}  // namespace

std::pair<CspInstance, KernelReport> sparsify_instance(const ConstraintLanguage& language,
                                                       const CspInstance& instance) {
  instance.validate(language);

  std::map<std::string, std::vector<std::pair<std::size_t, std::vector<int>>>> by_relation;
  for (std::size_t i = 0; i < instance.constraints.size(); ++i)
    by_relation[instance.constraints[i].relation].emplace_back(i, instance.constraints[i].vars);

  KernelReport report;
  std::set<std::size_t> kept;
  for (const auto& r : language.relations()) {
    auto it = by_relation.find(r.name());
    const auto empty = std::vector<std::pair<std::size_t, std::vector<int>>>{};
    const auto& constraints = it == by_relation.end() ? empty : it->second;

    RelationPlan plan = plan_strategy(r);
    auto positions = reduce_relation_constraints(r, constraints, instance.num_vars, plan);
    kept.insert(positions.begin(), positions.end());

    RelationStrategyReport rs;
    rs.relation = r.name();
    rs.strategy = plan.strategy;
    rs.constraint_count = constraints.size();
    rs.kept_count = positions.size();
    rs.size_bound = relation_bound(r, plan, instance.num_vars, constraints.size());
    rs.certificate = std::move(plan.certificate);
    report.total_bound += rs.size_bound;
    report.strategies.push_back(std::move(rs));
  }

  CspInstance kernel;
  kernel.num_vars = instance.num_vars;
  report.kept.assign(kept.begin(), kept.end());
  for (auto i : report.kept) kernel.constraints.push_back(instance.constraints[i]);
  return {std::move(kernel), std::move(report)};
}

}  // namespace cspk
