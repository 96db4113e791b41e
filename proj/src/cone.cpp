#include "cspk/cone.hpp"

#include <algorithm>
#include <stdexcept>

namespace cspk {

int ConeSymbol::rank() const {
  switch (kind) {
    case Kind::Const0: return 0;
    case Kind::Const1: return 1;
    case Kind::Var: return 2 * var;
    case Kind::NegVar: return 2 * var + 1;
  }
  return 0;
}

int ConeSymbol::value(std::uint32_t assignment) const {
  switch (kind) {
    case Kind::Const0: return 0;
    case Kind::Const1: return 1;
    case Kind::Var: return (assignment >> (var - 1)) & 1u;
    case Kind::NegVar: return 1 - ((assignment >> (var - 1)) & 1u);
  }
  return 0;
}

std::string ConeSymbol::to_string() const {
  switch (kind) {
    case Kind::Const0: return "0";
    case Kind::Const1: return "1";
    case Kind::Var: return "x" + std::to_string(var);
    case Kind::NegVar: return "!x" + std::to_string(var);
  }
  return "?";
}

std::string ConeDefinition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) s += ",";
    s += symbols[i].to_string();
  }
  return s + ")";
}

namespace {

ConeSymbol symbol_from_rank(int rank) {
  if (rank == 0) return ConeSymbol::constant(0);
  if (rank == 1) return ConeSymbol::constant(1);
  if (rank % 2 == 0) return ConeSymbol::variable(rank / 2);
  return ConeSymbol::negated(rank / 2);
}

// Biconditional replay over all 2^m assignments; assumes symbols are
// well-formed for the given arities.
bool definition_holds(const BooleanRelation& target, const BooleanRelation& source,
                      const std::vector<ConeSymbol>& symbols) {
  const int m = target.arity();
  const int n = source.arity();
  for (std::uint32_t a = 0; a < (1u << m); ++a) {
    std::uint32_t tidx = 0;
    for (int i = 1; i <= m; ++i) tidx = (tidx << 1) | ((a >> (i - 1)) & 1u);
    std::uint32_t sidx = 0;
    for (int j = 0; j < n; ++j) sidx = (sidx << 1) | static_cast<std::uint32_t>(symbols[j].value(a));
    if (target.contains_index(tidx) != source.contains_index(sidx)) return false;
  }
  return true;
}

bool all_variables_used(int m, const std::vector<ConeSymbol>& symbols) {
  std::uint32_t seen = 0;
  for (const auto& s : symbols)
    if (s.kind == ConeSymbol::Kind::Var || s.kind == ConeSymbol::Kind::NegVar)
      seen |= 1u << (s.var - 1);
  return seen == (1u << m) - 1u;
}

}  // namespace

bool check_cone_definition(const BooleanRelation& target, const BooleanRelation& source,
                           const ConeDefinition& def) {
  if (def.target_arity != target.arity() || def.source_arity != source.arity() ||
      static_cast<int>(def.symbols.size()) != source.arity())
    throw std::invalid_argument("cone definition arity mismatch");
  for (const auto& s : def.symbols)
    if ((s.kind == ConeSymbol::Kind::Var || s.kind == ConeSymbol::Kind::NegVar) &&
        (s.var < 1 || s.var > def.target_arity))
      throw std::invalid_argument("cone definition symbol out of range");
  if (!all_variables_used(target.arity(), def.symbols)) return false;
  return definition_holds(target, source, def.symbols);
}

ConeSearchResult search_cone_definition(const BooleanRelation& target,
                                        const BooleanRelation& source,
                                        const ConeSearchLimits& limits) {
  const int m = target.arity();
  const int n = source.arity();
  if (n > limits.max_source_arity) return {ConeSearchStatus::Capped, std::nullopt};
  if (m > n) return {ConeSearchStatus::NoneExact, std::nullopt};  // arity monotonicity

  const int max_rank = 2 * m + 1;
  std::vector<int> ranks(n, 0);
  std::vector<ConeSymbol> symbols(n);
  for (;;) {
    for (int j = 0; j < n; ++j) symbols[j] = symbol_from_rank(ranks[j]);
    if (all_variables_used(m, symbols) && definition_holds(target, source, symbols)) {
      ConeDefinition def{m, n, symbols};
      return {ConeSearchStatus::Found, std::move(def)};
    }
    int pos = n - 1;
    while (pos >= 0 && ranks[pos] == max_rank) ranks[pos--] = 0;
    if (pos < 0) break;
    ++ranks[pos];
  }
  return {ConeSearchStatus::NoneExact, std::nullopt};
}

ConeDefinition one_unsat_or_definition(const BooleanRelation& r) {
  if (r.size() != r.table_size() - 1)
    throw std::invalid_argument("one_unsat_or_definition requires |R| = 2^k - 1");
  const int k = r.arity();
  Tuple u = index_to_tuple(r.nonmember_indices().front(), k);
  ConeDefinition def{k, k, {}};
  for (int i = 1; i <= k; ++i)
    def.symbols.push_back(u[i - 1] == 0 ? ConeSymbol::variable(i) : ConeSymbol::negated(i));
  return def;
}

ConeDefinition one_or_definition(const BooleanRelation& r) {
  if (r.is_empty() || r.is_full())
    throw std::invalid_argument("one_or_definition requires a nonempty proper relation");
  const int k = r.arity();
  Tuple member = index_to_tuple(r.member_indices().front(), k);
  Tuple non = index_to_tuple(r.nonmember_indices().front(), k);
  ConeDefinition def{1, k, {}};
  for (int i = 0; i < k; ++i) {
    if (member[i] == non[i]) def.symbols.push_back(ConeSymbol::constant(member[i]));
    else if (member[i] == 1) def.symbols.push_back(ConeSymbol::variable(1));
    else def.symbols.push_back(ConeSymbol::negated(1));
  }
  return def;
}

WeightQuadruple shorten_weight_witness(const std::vector<int>& weights, int target_weight,
                                       const std::set<int>& satisfying, int arity) {
  if (weights.size() % 2 == 0 || weights.empty())
    throw std::invalid_argument("weight witness must have odd length");
  auto in_s = [&](int w) { return satisfying.count(w) > 0; };
  {
    int sum = 0;
    for (std::size_t i = 0; i < weights.size(); ++i)
      sum += (i % 2 == 0 ? weights[i] : -weights[i]);
    if (sum != target_weight)
      throw std::invalid_argument("weight witness does not sum to the target");
  }
  if (in_s(target_weight) || target_weight < 0 || target_weight > arity)
    throw std::invalid_argument("target weight must be a non-satisfying weight");

  std::vector<int> seq = weights;
  for (;;) {
    const std::size_t m = seq.size();
    if (m == 3) return {seq[0], seq[1], seq[2], target_weight};

    bool advanced = false;
    for (std::size_t i = 0; i < m && !advanced; i += 2)
      for (std::size_t j = i + 2; j < m && !advanced; j += 2)
        for (std::size_t l = 1; l < m && !advanced; l += 2) {
          int v = seq[i] - seq[l] + seq[j];
          if (v < 0 || v > arity) continue;
          if (!in_s(v)) return {seq[i], seq[l], seq[j], v};
          // v is satisfying: substitute and shorten
          std::vector<int> plus{v}, minus;
          for (std::size_t t = 0; t < m; ++t) {
            if (t == i || t == j || t == l) continue;
            (t % 2 == 0 ? plus : minus).push_back(seq[t]);
          }
          std::vector<int> next;
          for (std::size_t t = 0; t < plus.size(); ++t) {
            next.push_back(plus[t]);
            if (t < minus.size()) next.push_back(minus[t]);
          }
          seq = std::move(next);
          advanced = true;
        }
    if (!advanced) throw std::logic_error("weight witness shortening found no reducible triple");
  }
}

ConeDefinition symmetric_two_or_definition(const BooleanRelation& r) {
  WeightSpectrum ws = weight_spectrum(r);
  if (!ws.is_symmetric)
    throw std::invalid_argument("symmetric_two_or_definition requires a symmetric relation");
  const int k = r.arity();
  const auto& s = ws.satisfying_weights;
  auto in_u = [&](int w) { return w >= 0 && w <= k && s.count(w) == 0; };

  std::optional<WeightQuadruple> quad;
  for (int a : s) {
    for (int b : s) {
      for (int c : s) {
        int d = a - b + c;
        if (in_u(d)) {
          quad = WeightQuadruple{a, b, c, d};
          break;
        }
      }
      if (quad) break;
    }
    if (quad) break;
  }
  if (!quad) {
    BalanceResult bal = decide_balanced(r);
    if (bal.balanced)
      throw std::invalid_argument("symmetric_two_or_definition requires an unbalanced relation");
    std::vector<int> weights;
    for (const auto& t : bal.witness->alternating)
      weights.push_back(static_cast<int>(std::count(t.begin(), t.end(), 1)));
    int tw = static_cast<int>(std::count(bal.witness->target.begin(), bal.witness->target.end(), 1));
    quad = shorten_weight_witness(weights, tw, s, k);
  }

  const auto [a, b, c, d] = *quad;
  ConeDefinition def{2, k, {}};
  auto emit = [&def](ConeSymbol sym, int copies) {
    for (int i = 0; i < copies; ++i) def.symbols.push_back(sym);
  };
  // case order b, a, c, d on the minimal element, matching the three
  // constructions (a and c swap roles in the third)
  if (b <= a && b <= c && b <= d) {
    emit(ConeSymbol::negated(1), a - b);
    emit(ConeSymbol::negated(2), c - b);
    emit(ConeSymbol::constant(1), b);
    emit(ConeSymbol::constant(0), k - d);
  } else if (a <= b && a <= c && a <= d) {
    emit(ConeSymbol::negated(1), d - a);
    emit(ConeSymbol::variable(2), b - a);
    emit(ConeSymbol::constant(1), a);
    emit(ConeSymbol::constant(0), k - c);
  } else if (c <= a && c <= b && c <= d) {
    emit(ConeSymbol::negated(1), d - c);
    emit(ConeSymbol::variable(2), b - c);
    emit(ConeSymbol::constant(1), c);
    emit(ConeSymbol::constant(0), k - a);
  } else {
    emit(ConeSymbol::variable(1), a - d);
    emit(ConeSymbol::variable(2), c - d);
    emit(ConeSymbol::constant(1), d);
    emit(ConeSymbol::constant(0), k - b);
  }
  if (!check_cone_definition(kor(2), r, def))
    throw std::logic_error("symmetric 2-OR construction failed validation for " + r.name());
  return def;
}

OrArityEntry max_or_arity(const BooleanRelation& r, const ConeSearchLimits& limits) {
  OrArityEntry entry;
  entry.relation = r.name();
  const int k = r.arity();

  if (r.is_full() || r.is_empty()) {
    entry.value = 0;
    return entry;
  }
  if (r.size() == r.table_size() - 1) {
    entry.value = k;
    entry.definition = one_unsat_or_definition(r);
    return entry;
  }
  BalanceResult bal = decide_balanced(r);
  if (bal.balanced) {
    // balanced relations preserve alternating operations, which transfer
    // along cone definitions and violate every m-OR with m >= 2
    entry.value = 1;
    entry.definition = one_or_definition(r);
    return entry;
  }
  if (k > limits.max_source_arity) {
    entry.exact = false;
    if (weight_spectrum(r).is_symmetric) {
      entry.value = 2;
      entry.definition = symmetric_two_or_definition(r);
    } else {
      entry.value = 1;
      entry.definition = one_or_definition(r);
    }
    return entry;
  }
  for (int m = k - 1; m >= 2; --m) {
    auto res = search_cone_definition(kor(m), r, limits);
    if (res.found()) {
      entry.value = m;
      entry.definition = res.definition;
      return entry;
    }
  }
  entry.value = 1;
  entry.definition = one_or_definition(r);
  return entry;
}

OrArityReport max_or_arity(const ConstraintLanguage& language, const ConeSearchLimits& limits) {
  OrArityReport report;
  for (const auto& r : language.relations()) {
    report.per_relation.push_back(max_or_arity(r, limits));
    report.language_max = std::max(report.language_max, report.per_relation.back().value);
    report.exact = report.exact && report.per_relation.back().exact;
  }
  return report;
}

ConeDefinition compose_cone_definitions(const ConeDefinition& outer, const ConeDefinition& inner) {
  if (inner.target_arity != outer.source_arity)
    throw std::invalid_argument("compose_cone_definitions: arity mismatch");
  auto negate = [](ConeSymbol s) {
    switch (s.kind) {
      case ConeSymbol::Kind::Const0: return ConeSymbol::constant(1);
      case ConeSymbol::Kind::Const1: return ConeSymbol::constant(0);
      case ConeSymbol::Kind::Var: return ConeSymbol::negated(s.var);
      case ConeSymbol::Kind::NegVar: return ConeSymbol::variable(s.var);
    }
    return s;
  };
  ConeDefinition out{outer.target_arity, inner.source_arity, {}};
  for (const auto& z : inner.symbols) {
    switch (z.kind) {
      case ConeSymbol::Kind::Const0:
      case ConeSymbol::Kind::Const1: out.symbols.push_back(z); break;
      case ConeSymbol::Kind::Var: out.symbols.push_back(outer.symbols[z.var - 1]); break;
      case ConeSymbol::Kind::NegVar: out.symbols.push_back(negate(outer.symbols[z.var - 1])); break;
    }
  }
  return out;
}

}  // namespace cspk
