#include "cspk/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "cspk/config.hpp"

namespace cspk {

namespace {

// Membership tables resolved once per instance; evaluation then works on
// raw assignment bits.
struct CompiledInstance {
  std::vector<const BooleanRelation*> relations;
  std::vector<const std::vector<int>*> vars;

  static CompiledInstance compile(const ConstraintLanguage& language, const CspInstance& inst) {
    inst.validate(language);
    CompiledInstance c;
    for (const auto& constraint : inst.constraints) {
      c.relations.push_back(&language.at(constraint.relation));
      c.vars.push_back(&constraint.vars);
    }
    return c;
  }

  // assignment bit v-1 holds the value of variable v
  bool satisfied(std::uint64_t assignment) const {
    for (std::size_t i = 0; i < relations.size(); ++i) {
      std::uint32_t idx = 0;
      for (int v : *vars[i]) idx = (idx << 1) | ((assignment >> (v - 1)) & 1u);
      if (!relations[i]->contains_index(idx)) return false;
    }
    return true;
  }
};

// Assignments ordered as tuples (x_1,...,x_n): variable 1 most significant.
Tuple assignment_to_tuple(std::uint64_t counter, int n) {
  Tuple t(n);
  for (int v = 1; v <= n; ++v) t[v - 1] = (counter >> (n - v)) & 1u;
  return t;
}

std::uint64_t counter_to_bits(std::uint64_t counter, int n) {
  std::uint64_t bits = 0;
  for (int v = 1; v <= n; ++v)
    if ((counter >> (n - v)) & 1u) bits |= std::uint64_t{1} << (v - 1);
  return bits;
}

}  // namespace

SatResult brute_force_satisfiable(const ConstraintLanguage& language, const CspInstance& instance) {
  const int n = instance.num_vars;
  const std::uint64_t total = n >= 64 ? 0 : (std::uint64_t{1} << n);
  if (n >= 64 || total > Config::get().sat_budget)
    throw BudgetExceeded("satisfiability budget exceeded: 2^" + std::to_string(n) +
                         " assignments");
  CompiledInstance c = CompiledInstance::compile(language, instance);
  for (std::uint64_t counter = 0; counter < total; ++counter) {
    if (c.satisfied(counter_to_bits(counter, n)))
      return {true, assignment_to_tuple(counter, n)};
  }
  return {false, std::nullopt};
}

EquivalenceVerdict check_equivalence(const ConstraintLanguage& language,
                                     const CspInstance& original, const CspInstance& kernel) {
  if (original.num_vars != kernel.num_vars)
    throw std::invalid_argument("check_equivalence: instances must share the variable set");
  const int n = original.num_vars;
  const std::uint64_t total = n >= 64 ? 0 : (std::uint64_t{1} << n);
  if (n >= 64 || total > Config::get().equivalence_budget)
    throw BudgetExceeded("equivalence budget exceeded: 2^" + std::to_string(n) + " assignments");

  CompiledInstance a = CompiledInstance::compile(language, original);
  CompiledInstance b = CompiledInstance::compile(language, kernel);
  EquivalenceVerdict verdict;
  for (std::uint64_t counter = 0; counter < total; ++counter) {
    std::uint64_t bits = counter_to_bits(counter, n);
    ++verdict.assignments_checked;
    if (a.satisfied(bits) != b.satisfied(bits)) {
      verdict.equivalent = false;
      verdict.counterexample = assignment_to_tuple(counter, n);
      return verdict;
    }
  }
  verdict.equivalent = true;
  return verdict;
}

namespace {

// Enumerates multisets (as non-decreasing index sequences) of the given
// size, maintaining the coordinate sums incrementally.
struct MultisetEnum {
  const std::vector<Tuple>& tuples;
  int size;
  std::vector<std::size_t> pick;

  bool first() {
    pick.assign(size, 0);
    return !tuples.empty() || size == 0;
  }

  bool next() {
    int pos = size - 1;
    while (pos >= 0 && pick[pos] + 1 == tuples.size()) --pos;
    if (pos < 0) return false;
    std::size_t v = pick[pos] + 1;
    for (int i = pos; i < size; ++i) pick[i] = v;
    return true;
  }

  std::vector<int> sum(int arity) const {
    std::vector<int> s(arity, 0);
    for (auto i : pick)
      for (int c = 0; c < arity; ++c) s[c] += tuples[i][c];
    return s;
  }
};

}  // namespace

std::optional<AlternatingWitness> bounded_alternating_search(const BooleanRelation& r, int m_max) {
  if (m_max < 1 || m_max % 2 == 0)
    throw std::invalid_argument("bounded_alternating_search: m_max must be odd");
  const auto members = r.member_tuples();
  if (members.empty()) return std::nullopt;
  const int k = r.arity();

  for (int m = 1; m <= m_max; m += 2) {
    const int p = (m + 1) / 2, q = (m - 1) / 2;
    MultisetEnum plus{members, p, {}};
    if (!plus.first()) continue;
    do {
      auto psum = plus.sum(k);
      MultisetEnum minus{members, q, {}};
      if (!minus.first()) continue;
      do {
        auto msum = minus.sum(k);
        Tuple diff(k);
        bool boolean = true;
        for (int c = 0; c < k; ++c) {
          diff[c] = psum[c] - msum[c];
          if (diff[c] != 0 && diff[c] != 1) {
            boolean = false;
            break;
          }
        }
        if (!boolean || r.contains(diff)) continue;
        AlternatingWitness w;
        w.target = diff;
        for (int i = 0; i < p; ++i) {
          w.sequence.push_back(members[plus.pick[i]]);
          if (i < q) w.sequence.push_back(members[minus.pick[i]]);
        }
        return w;
      } while (minus.next());
    } while (plus.next());
  }
  return std::nullopt;
}

}  // namespace cspk
