#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace concord {

using Value = std::int64_t;

/// Variables with finite, strictly ascending integer domains.
class VariableSpace {
 public:
  VariableSpace(std::vector<std::string> names,
                std::vector<std::vector<Value>> domains);

  /// Every variable ranges over lo..hi inclusive.
  static VariableSpace uniform(std::vector<std::string> names, Value lo,
                               Value hi);
  /// {0,1}^n with the given names.
  static VariableSpace binary(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<Value>& domain(std::size_t i) const {
    return domains_.at(i);
  }
  bool contains(std::size_t var, Value v) const;
  /// Index of a variable name, or size() when absent.
  std::size_t index_of(const std::string& name) const;

  /// |V̲|, saturating at UINT64_MAX.
  std::uint64_t alternative_count() const;

  bool operator==(const VariableSpace&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<Value>> domains_;
};

/// One value per variable, positionally aligned with a VariableSpace.
class Alternative {
 public:
  Alternative() = default;
  explicit Alternative(std::vector<Value> values) : values_(std::move(values)) {}
  Alternative(std::initializer_list<Value> values) : values_(values) {}

  std::size_t size() const { return values_.size(); }
  Value operator[](std::size_t i) const { return values_[i]; }
  std::span<const Value> values() const { return values_; }

  /// Throws InputError when the arity or any value does not fit `space`.
  void validate(const VariableSpace& space) const;

  auto operator<=>(const Alternative&) const = default;
  bool operator==(const Alternative&) const = default;

 private:
  std::vector<Value> values_;
};

/// Commutative, associative operator with a total order on its results.
class Combiner {
 public:
  enum class Kind { kSum, kProduct, kMin, kMax, kAnd, kOr, kTable };

  explicit Combiner(Kind kind);
  /// `universe` is listed in ascending order (that listing *is* the total
  /// order); `table[i][j]` is universe[i] ⊕ universe[j] and must itself be a
  /// universe member. Commutativity and associativity are verified.
  static Combiner table(std::vector<Value> universe,
                        std::vector<std::vector<Value>> table);

  Kind kind() const { return kind_; }
  bool is_table() const { return kind_ == Kind::kTable; }
  const std::vector<Value>& universe() const { return universe_; }
  const std::vector<std::vector<Value>>& table_entries() const {
    return table_;
  }

  /// Throws DomainMismatch when `v` is not a legal operand.
  void check_operand(Value v) const;
  bool accepts(Value v) const;

  Value combine(Value a, Value b) const;
  /// -1, 0 or +1 under the combiner's total order.
  int compare(Value a, Value b) const;

  /// True for kinds where x ≥ x' implies x⊕y ≥ x'⊕y on every legal operand.
  bool monotone() const;

  bool operator==(const Combiner&) const = default;

 private:
  std::size_t rank(Value v) const;

  Kind kind_;
  std::vector<Value> universe_;
  std::vector<std::vector<Value>> table_;
};

const char* to_string(Combiner::Kind kind);

enum class Relation : std::uint8_t { kNonStrict, kStrict };

/// α ≥ β or α > β.
struct Statement {
  Alternative left;
  Alternative right;
  Relation relation = Relation::kNonStrict;

  bool strict() const { return relation == Relation::kStrict; }

  auto operator<=>(const Statement&) const = default;
  bool operator==(const Statement&) const = default;
};

inline Statement geq(Alternative a, Alternative b) {
  return {std::move(a), std::move(b), Relation::kNonStrict};
}
inline Statement gt(Alternative a, Alternative b) {
  return {std::move(a), std::move(b), Relation::kStrict};
}

/// (α ≥ β) ↦ (β > α); (α > β) ↦ (β ≥ α).
Statement complement(const Statement& s);

/// Per-variable reduction to {0,1}: (1,0) where α wins, (0,1) where β wins,
/// (0,0) on ties. Lexicographic satisfaction is preserved.
Statement binarize(const Statement& s);
/// Same, with variable comparisons taken under the combiner's order.
Statement binarize(const Statement& s, const Combiner& c);

/// Sets are vectors kept sorted and duplicate-free by `normalize`.
using StatementSet = std::vector<Statement>;

StatementSet normalize(StatementSet set);
/// Syntactic set equality (order and duplicates ignored).
bool same_statements(const StatementSet& a, const StatementSet& b);

enum class Triviality { kTautology, kContradiction, kNonTrivial };
const char* to_string(Triviality t);

enum class ModelClass { kHierarchical, kLexicographic };
const char* to_string(ModelClass m);

struct Stakeholder {
  std::string name;
  StatementSet statements;

  bool operator==(const Stakeholder&) const = default;
};

/// Stakeholder statement sets over one space, combiner and model class.
struct Profile {
  VariableSpace space;
  Combiner combiner;
  ModelClass model_class;
  std::vector<Stakeholder> stakeholders;

  /// Unique names, well-formed statements, every domain value a legal
  /// combiner operand. Triviality is not checked here.
  void validate() const;
  StatementSet union_statements() const;

  bool operator==(const Profile&) const = default;
};

}  // namespace concord
