#include "cspk/relation.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "cspk/config.hpp"

namespace cspk {

std::uint32_t tuple_to_index(const Tuple& t) {
  std::uint32_t idx = 0;
  for (int v : t) {
    if (v != 0 && v != 1) throw std::invalid_argument("tuple entries must be 0/1");
    idx = (idx << 1) | static_cast<std::uint32_t>(v);
  }
  return idx;
}

Tuple index_to_tuple(std::uint32_t index, int arity) {
  Tuple t(arity);
  for (int i = 0; i < arity; ++i) t[i] = (index >> (arity - 1 - i)) & 1u;
  return t;
}

std::string tuple_to_string(const Tuple& t) {
  std::string s;
  s.reserve(t.size());
  for (int v : t) s.push_back(v ? '1' : '0');
  return s;
}

Tuple tuple_from_string(const std::string& s) {
  Tuple t;
  t.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("tuple string must be over 0/1");
    t.push_back(c == '1');
  }
  return t;
}

BooleanRelation::BooleanRelation(std::string name, int arity)
    : name_(std::move(name)), arity_(arity) {
  if (arity < 1 || arity > Config::kHardMaxArity)
    throw std::invalid_argument("relation arity out of range: " + std::to_string(arity));
  members_.assign(std::size_t{1} << arity, false);
}

BooleanRelation BooleanRelation::from_tuples(std::string name, int arity,
                                             const std::vector<Tuple>& tuples) {
  BooleanRelation r(std::move(name), arity);
  for (const auto& t : tuples) {
    if (static_cast<int>(t.size()) != arity)
      throw std::invalid_argument("tuple arity mismatch in relation " + r.name_);
    r.members_[tuple_to_index(t)] = true;
  }
  return r;
}

BooleanRelation BooleanRelation::from_indices(std::string name, int arity,
                                              const std::vector<std::uint32_t>& indices) {
  BooleanRelation r(std::move(name), arity);
  for (auto i : indices) {
    if (i >= r.members_.size()) throw std::invalid_argument("tuple index out of range");
    r.members_[i] = true;
  }
  return r;
}

BooleanRelation BooleanRelation::from_mask(std::string name, int arity,
                                           std::uint64_t members_mask) {
  BooleanRelation r(std::move(name), arity);
  if (arity > 6) throw std::invalid_argument("from_mask supports arity <= 6");
  for (std::uint32_t i = 0; i < r.members_.size(); ++i)
    if (members_mask & (std::uint64_t{1} << i)) r.members_[i] = true;
  return r;
}

bool BooleanRelation::contains(const Tuple& t) const {
  if (static_cast<int>(t.size()) != arity_) throw std::invalid_argument("tuple arity mismatch");
  return members_[tuple_to_index(t)];
}

std::size_t BooleanRelation::size() const {
  return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true));
}

std::vector<std::uint32_t> BooleanRelation::member_indices() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < members_.size(); ++i)
    if (members_[i]) out.push_back(i);
  return out;
}

std::vector<std::uint32_t> BooleanRelation::nonmember_indices() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < members_.size(); ++i)
    if (!members_[i]) out.push_back(i);
  return out;
}

std::vector<Tuple> BooleanRelation::member_tuples() const {
  std::vector<Tuple> out;
  for (auto i : member_indices()) out.push_back(index_to_tuple(i, arity_));
  return out;
}

BooleanRelation BooleanRelation::renamed(std::string name) const {
  BooleanRelation r = *this;
  r.name_ = std::move(name);
  return r;
}

bool BooleanRelation::same_members(const BooleanRelation& other) const {
  return arity_ == other.arity_ && members_ == other.members_;
}

BooleanRelation kor(int k) {
  BooleanRelation r("OR" + std::to_string(k), k);
  for (std::uint32_t i = 1; i < r.table_size(); ++i) r.insert_index(i);
  return r;
}

BooleanRelation full_relation(int k) {
  BooleanRelation r("FULL" + std::to_string(k), k);
  for (std::uint32_t i = 0; i < r.table_size(); ++i) r.insert_index(i);
  return r;
}

BooleanRelation empty_relation(int k) { return BooleanRelation("EMPTY" + std::to_string(k), k); }

ConstraintLanguage::ConstraintLanguage(std::vector<BooleanRelation> relations)
    : relations_(std::move(relations)) {
  if (relations_.empty()) throw std::invalid_argument("constraint language must be nonempty");
  std::set<std::string> names;
  for (const auto& r : relations_)
    if (!names.insert(r.name()).second)
      throw std::invalid_argument("duplicate relation name: " + r.name());
}

const BooleanRelation* ConstraintLanguage::find(const std::string& name) const {
  for (const auto& r : relations_)
    if (r.name() == name) return &r;
  return nullptr;
}

const BooleanRelation& ConstraintLanguage::at(const std::string& name) const {
  const BooleanRelation* r = find(name);
  if (!r) throw std::invalid_argument("undefined relation name: " + name);
  return *r;
}

int ConstraintLanguage::max_arity() const {
  int k = 0;
  for (const auto& r : relations_) k = std::max(k, r.arity());
  return k;
}

int TotalOperation::apply(const std::vector<int>& args) const {
  std::uint32_t idx = 0;
  for (int a : args) idx = (idx << 1) | static_cast<std::uint32_t>(a & 1);
  return table[idx];
}

const std::vector<TotalOperation>& schaefer_operations() {
  auto from_fn = [](std::string name, int arity, auto fn) {
    TotalOperation op{std::move(name), arity, std::vector<bool>(std::size_t{1} << arity)};
    for (std::uint32_t i = 0; i < op.table.size(); ++i) {
      std::vector<int> args(arity);
      for (int j = 0; j < arity; ++j) args[j] = (i >> (arity - 1 - j)) & 1u;
      op.table[i] = fn(args);
    }
    return op;
  };
  static const std::vector<TotalOperation> ops = {
      from_fn("u0", 1, [](const std::vector<int>&) { return 0; }),
      from_fn("u1", 1, [](const std::vector<int>&) { return 1; }),
      from_fn("and", 2, [](const std::vector<int>& a) { return a[0] & a[1]; }),
      from_fn("or", 2, [](const std::vector<int>& a) { return a[0] | a[1]; }),
      from_fn("minor", 3, [](const std::vector<int>& a) { return a[0] ^ a[1] ^ a[2]; }),
      from_fn("major", 3,
              [](const std::vector<int>& a) { return (a[0] + a[1] + a[2] >= 2) ? 1 : 0; }),
  };
  return ops;
}

std::optional<PreservationViolation> find_total_violation(const BooleanRelation& r,
                                                          const TotalOperation& f) {
  const auto members = r.member_indices();
  if (members.empty()) return std::nullopt;
  const int k = r.arity();
  const int fa = f.arity;

  // odometer over member choices, first choice most significant
  std::vector<std::size_t> pick(fa, 0);
  for (;;) {
    Tuple out(k);
    for (int c = 0; c < k; ++c) {
      std::vector<int> args(fa);
      for (int j = 0; j < fa; ++j) args[j] = (members[pick[j]] >> (k - 1 - c)) & 1u;
      out[c] = f.apply(args);
    }
    if (!r.contains(out)) {
      PreservationViolation v;
      for (int j = 0; j < fa; ++j) v.inputs.push_back(index_to_tuple(members[pick[j]], k));
      v.output = out;
      return v;
    }
    int pos = fa - 1;
    while (pos >= 0 && pick[pos] + 1 == members.size()) pick[pos--] = 0;
    if (pos < 0) break;
    ++pick[pos];
  }
  return std::nullopt;
}

bool preserved_by_total(const BooleanRelation& r, const TotalOperation& f) {
  return !find_total_violation(r, f).has_value();
}

SchaeferReport schaefer_report(const ConstraintLanguage& language) {
  SchaeferReport report;
  for (const auto& op : schaefer_operations()) {
    SchaeferEntry entry;
    entry.operation = op.name;
    for (const auto& r : language.relations()) {
      if (auto v = find_total_violation(r, op)) {
        entry.preserves_all = false;
        entry.failing_relation = r.name();
        entry.violation = std::move(v);
        break;
      }
    }
    if (entry.preserves_all) report.tractable = true;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

std::optional<AlternatingViolation> preserved_by_alternating(const BooleanRelation& r, int m) {
  if (m < 1 || m % 2 == 0) throw std::invalid_argument("alternating arity must be odd and >= 1");
  const auto members = r.member_indices();
  if (members.empty()) return std::nullopt;
  const int k = r.arity();

  std::vector<Tuple> tuples;
  tuples.reserve(members.size());
  for (auto i : members) tuples.push_back(index_to_tuple(i, k));

  std::vector<std::size_t> pick(m, 0);
  for (;;) {
    Tuple sum(k, 0);
    for (int j = 0; j < m; ++j) {
      int sign = (j % 2 == 0) ? 1 : -1;
      for (int c = 0; c < k; ++c) sum[c] += sign * tuples[pick[j]][c];
    }
    bool boolean = std::all_of(sum.begin(), sum.end(), [](int v) { return v == 0 || v == 1; });
    if (boolean && !r.contains(sum)) {
      AlternatingViolation v;
      for (int j = 0; j < m; ++j) v.sequence.push_back(tuples[pick[j]]);
      v.sum = sum;
      return v;
    }
    int pos = m - 1;
    while (pos >= 0 && pick[pos] + 1 == tuples.size()) pick[pos--] = 0;
    if (pos < 0) break;
    ++pick[pos];
  }
  return std::nullopt;
}

WeightSpectrum weight_spectrum(const BooleanRelation& r) {
  WeightSpectrum ws;
  ws.arity = r.arity();
  ws.is_symmetric = true;
  for (int w = 0; w <= r.arity(); ++w) {
    bool any = false, all = true;
    for (std::uint32_t i = 0; i < r.table_size(); ++i) {
      if (std::popcount(i) != w) continue;
      if (r.contains_index(i)) any = true;
      else all = false;
    }
    if (any) ws.satisfying_weights.insert(w);
    if (any && !all) ws.is_symmetric = false;
  }
  return ws;
}

}  // namespace cspk
