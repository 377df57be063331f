#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "concord/domain.hpp"

namespace concord {

/// Sorted, duplicate-free variable indices.
using VarSet = std::vector<std::size_t>;

/// (Y₁,…,Y_k): a non-empty sequence of non-empty variable sets. Variables
/// may repeat across levels.
class HierarchicalModel {
 public:
  explicit HierarchicalModel(std::vector<VarSet> levels);

  const std::vector<VarSet>& levels() const { return levels_; }
  std::size_t depth() const { return levels_.size(); }

  /// Levels are built from bitmasks over at most 64 variables.
  static HierarchicalModel from_masks(const std::vector<std::uint64_t>& masks);

  auto operator<=>(const HierarchicalModel&) const = default;
  bool operator==(const HierarchicalModel&) const = default;

 private:
  std::vector<VarSet> levels_;
};

/// (v₁,…,v_k) with no variable repeated; a repeat can only follow a tie on
/// the same variable, so it is dropped on construction.
class LexicographicModel {
 public:
  explicit LexicographicModel(std::vector<std::size_t> order);

  const std::vector<std::size_t>& order() const { return order_; }
  HierarchicalModel as_hierarchical() const;

  auto operator<=>(const LexicographicModel&) const = default;
  bool operator==(const LexicographicModel&) const = default;

 private:
  std::vector<std::size_t> order_;
};

enum class Comparison { kLess = -1, kEquivalent = 0, kGreater = 1 };
const char* to_string(Comparison c);

/// ⊕ over a's values on Y. Y must be non-empty.
Value level_value(const VarSet& y, const Alternative& a, const Combiner& c);

/// First level with unequal combined values decides.
Comparison compare(const HierarchicalModel& pi, const Alternative& a,
                   const Alternative& b, const Combiner& c);
Comparison compare(const LexicographicModel& pi, const Alternative& a,
                   const Alternative& b, const Combiner& c);

bool satisfies(const HierarchicalModel& pi, const Statement& s,
               const Combiner& c);
bool satisfies(const LexicographicModel& pi, const Statement& s,
               const Combiner& c);

template <class Model>
bool satisfies_set(const Model& pi, const StatementSet& phi,
                   const Combiner& c) {
  for (const auto& s : phi)
    if (!satisfies(pi, s, c)) return false;
  return true;
}

/// "({a,b},{c})". Lexicographic models render with singleton braces so one
/// grammar covers both classes.
std::string render(const HierarchicalModel& pi, const VariableSpace& space);
std::string render(const LexicographicModel& pi, const VariableSpace& space);

/// Inverse of render. Throws InputError on malformed text.
HierarchicalModel parse_model(const std::string& text,
                              const VariableSpace& space);

}  // namespace concord
