#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cspk {

// A Boolean tuple; entry 0 holds coordinate 1.
using Tuple = std::vector<int>;

// Convention used everywhere (bit sets, file formats, reports):
// coordinate 1 is the most significant bit of the tuple index.
std::uint32_t tuple_to_index(const Tuple& t);
Tuple index_to_tuple(std::uint32_t index, int arity);
std::string tuple_to_string(const Tuple& t);
Tuple tuple_from_string(const std::string& s);

// Arity-k relation over {0,1} stored as a membership bit set over all
// 2^k tuples.
class BooleanRelation {
 public:
  BooleanRelation(std::string name, int arity);
  static BooleanRelation from_tuples(std::string name, int arity,
                                     const std::vector<Tuple>& tuples);
  static BooleanRelation from_indices(std::string name, int arity,
                                      const std::vector<std::uint32_t>& indices);
  static BooleanRelation from_mask(std::string name, int arity, std::uint64_t members_mask);

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  std::uint32_t table_size() const { return static_cast<std::uint32_t>(members_.size()); }

  bool contains_index(std::uint32_t index) const { return members_[index]; }
  bool contains(const Tuple& t) const;
  void insert_index(std::uint32_t index) { members_[index] = true; }

  std::size_t size() const;  // number of member tuples
  bool is_full() const { return size() == members_.size(); }
  bool is_empty() const { return size() == 0; }

  std::vector<std::uint32_t> member_indices() const;
  std::vector<std::uint32_t> nonmember_indices() const;
  std::vector<Tuple> member_tuples() const;

  BooleanRelation renamed(std::string name) const;
  bool same_members(const BooleanRelation& other) const;

 private:
  std::string name_;
  int arity_;
  std::vector<bool> members_;
};

BooleanRelation kor(int k);  // {0,1}^k minus the all-zero tuple
BooleanRelation full_relation(int k);
BooleanRelation empty_relation(int k);

class ConstraintLanguage {
 public:
  explicit ConstraintLanguage(std::vector<BooleanRelation> relations);

  const std::vector<BooleanRelation>& relations() const { return relations_; }
  const BooleanRelation& at(const std::string& name) const;
  const BooleanRelation* find(const std::string& name) const;
  int max_arity() const;

 private:
  std::vector<BooleanRelation> relations_;
};

// Total Boolean operation given by its truth table; argument 1 is the
// most significant bit of the table index.
struct TotalOperation {
  std::string name;
  int arity;
  std::vector<bool> table;

  int apply(const std::vector<int>& args) const;
};

// u0, u1, and, or, minor, major, in that order.
const std::vector<TotalOperation>& schaefer_operations();

struct PreservationViolation {
  std::vector<Tuple> inputs;  // arity(f) member tuples
  Tuple output;               // outside the relation
};

std::optional<PreservationViolation> find_total_violation(const BooleanRelation& r,
                                                          const TotalOperation& f);
bool preserved_by_total(const BooleanRelation& r, const TotalOperation& f);

struct SchaeferEntry {
  std::string operation;
  bool preserves_all = true;
  std::string failing_relation;  // set when preserves_all is false
  std::optional<PreservationViolation> violation;
};

struct SchaeferReport {
  bool tractable = false;
  std::vector<SchaeferEntry> entries;
};

SchaeferReport schaefer_report(const ConstraintLanguage& language);

struct AlternatingViolation {
  std::vector<Tuple> sequence;  // odd length, members, repetition allowed
  Tuple sum;                    // 0/1 tuple outside the relation
};

// Exhaustive |R|^m sequence enumeration in lexicographic order over the
// sorted member list; first violation returned, nullopt when preserved.
std::optional<AlternatingViolation> preserved_by_alternating(const BooleanRelation& r, int m);

struct WeightSpectrum {
  int arity = 0;
  std::set<int> satisfying_weights;
  bool is_symmetric = false;
};

WeightSpectrum weight_spectrum(const BooleanRelation& r);

}  // namespace cspk
