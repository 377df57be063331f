#pragma once

// Brute-force reference semantics. Slow on purpose: everything here is
// decided by enumerating models and evaluating the satisfaction relation
// directly, never through the reasoner's search.

#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "concord/domain.hpp"
#include "concord/ground.hpp"
#include "concord/models.hpp"

namespace concord::oracle {

using ModelSet = boost::dynamic_bitset<>;

/// All non-empty sequences of distinct variables, produced lazily in
/// depth-first order. |V| ≤ 7.
class LexEnumeration {
 public:
  explicit LexEnumeration(const VariableSpace& space);
  std::optional<LexicographicModel> next();
  /// Σ_{k=1..n} n!/(n−k)!
  static std::uint64_t expected_count(std::size_t n);

 private:
  std::size_t n_;
  std::vector<std::size_t> prefix_;
  std::vector<char> used_;
  bool started_ = false;
  bool done_ = false;
};

/// All sequences of distinct non-empty variable subsets of length 1..depth.
/// |V| ≤ 4, depth ≤ 3.
class HierEnumeration {
 public:
  HierEnumeration(const VariableSpace& space, std::size_t max_depth);
  std::optional<HierarchicalModel> next();
  static std::uint64_t expected_count(std::size_t n, std::size_t depth);

 private:
  std::size_t subsets_;
  std::size_t max_depth_;
  std::vector<std::uint64_t> prefix_;
  bool started_ = false;
  bool done_ = false;
};

LexEnumeration enumerate_lex_models(const VariableSpace& space);
HierEnumeration enumerate_hier_models(const VariableSpace& space,
                                      std::size_t max_depth);

/// Every model of a class, up to identical induced orders. Lexicographic:
/// the full enumeration. Hierarchical: the closure of the all-tied order
/// under "refine by one more level", one state per distinct total preorder
/// on V̲, each carrying a shortest model that induces it. This is exact for
/// hierarchical models of any depth.
class ModelUniverse {
 public:
  static ModelUniverse lexicographic(const VariableSpace& space,
                                     const Combiner& c);
  static ModelUniverse hierarchical(const VariableSpace& space,
                                    const Combiner& c,
                                    std::size_t max_alternatives = 4096,
                                    std::size_t max_states = 200000);
  static ModelUniverse of(const Profile& profile);

  std::size_t size() const { return witnesses_.size(); }
  const HierarchicalModel& witness(std::size_t i) const { return witnesses_[i]; }

  bool satisfies(std::size_t model, const Statement& s) const;
  ModelSet models_of(const Statement& s) const;
  /// All models when `phi` is empty.
  ModelSet models_of(const StatementSet& phi) const;

 private:
  ModelUniverse(const VariableSpace& space, const Combiner& c, ModelClass mc);
  std::size_t alternative_index(const Alternative& a) const;

  VariableSpace space_;
  Combiner combiner_;
  ModelClass class_;
  std::vector<HierarchicalModel> witnesses_;
  std::vector<LexicographicModel> lex_;
  // Hierarchical states: rank of every alternative (higher is preferred).
  std::vector<std::vector<std::uint32_t>> ranks_;
};

bool brute_consistent(const StatementSet& phi, const VariableSpace& space,
                      const Combiner& c, ModelClass model_class);
bool brute_entails(const StatementSet& gamma, const Statement& s,
                   const VariableSpace& space, const Combiner& c,
                   ModelClass model_class);

/// Middle grounds by definition, relative to `language`: the P1–P4 sets
/// whose model sets are ⊆-minimal. Computed through model sets: for each
/// model u, C(u) is the intersection of the model sets of the language
/// statements that satisfy P3 and P4 and hold at u; the grounds are the
/// minimal proper C(u).
MiddleGroundSet brute_mgs(const Profile& profile, const StatementSet& language);

/// Same definition, with P5 checked by quantifying over every subset of the
/// language. |language| ≤ 20.
MiddleGroundSet brute_mgs_subsets(const Profile& profile,
                                  const StatementSet& language);

/// A statement set over `language` satisfying P1–P4 whose models are a
/// proper subset of mod(phi); nullopt when none exists (phi passes P5).
std::optional<StatementSet> p5_counterexample(const Profile& profile,
                                              const StatementSet& phi,
                                              const StatementSet& language);

/// Some sub-multiset of `s` sums to `target` (the empty sum is 0). |s| ≤ 20.
bool subset_sum_brute(const std::vector<std::int64_t>& s, std::int64_t target);

}  // namespace concord::oracle
