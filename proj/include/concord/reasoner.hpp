#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "concord/domain.hpp"
#include "concord/models.hpp"

namespace concord {

/// Size caps and time budget shared by reasoner, midground and CLI.
struct Limits {
  std::size_t max_vars_classify = 20;
  std::size_t max_vars_hier = 14;
  std::size_t max_language = 20000;
  std::uint64_t max_alternative_pairs = 1'000'000;
  std::chrono::milliseconds timeout{0};  // 0: no limit
  bool parallel = true;
};

struct SearchStats {
  std::uint64_t nodes = 0;   // candidate levels / variables examined
  std::uint64_t levels = 0;  // levels appended to the witness
};

struct ConsistencyResult {
  bool consistent = false;
  std::optional<HierarchicalModel> witness;
  SearchStats stats;
};

/// A statement reduced to the signs the reasoner needs. Lexicographic:
/// one sign per variable. Hierarchical: one sign per variable subset,
/// indexed by bitmask (entry 0 unused).
struct CompiledStatement {
  bool strict = false;
  std::vector<std::int8_t> signs;
  /// Lexicographic only: bit v set where the sign at v is +1 / -1.
  std::vector<std::uint64_t> win, lose;

  bool operator==(const CompiledStatement&) const = default;
};

/// Lexicographic compiled form from per-variable signs.
CompiledStatement compiled_lex(std::vector<std::int8_t> signs, bool strict);

/// Consistency, entailment and triviality under one space, combiner and
/// model class.
class Reasoner {
 public:
  Reasoner(VariableSpace space, Combiner combiner, ModelClass model_class,
           Limits limits = {});

  const VariableSpace& space() const { return space_; }
  const Combiner& combiner() const { return combiner_; }
  ModelClass model_class() const { return model_class_; }
  const Limits& limits() const { return limits_; }

  CompiledStatement compile(const Statement& s) const;

  /// Tautology / contradiction / non-trivial for the configured model class.
  Triviality classify(const Statement& s) const;
  /// Read off the compiled signs; hierarchical signs cover every subset, so
  /// this is the generic scan with the folds already done.
  Triviality classify(const CompiledStatement& s) const;

  ConsistencyResult consistent(const StatementSet& phi) const;
  ConsistencyResult consistent(std::span<const CompiledStatement* const> phi) const;
  bool falsifiable(const StatementSet& phi) const;
  bool non_trivial(const StatementSet& phi) const;

  /// Γ ⊨ s iff Γ ∪ {complement(s)} is inconsistent.
  bool entails(const StatementSet& gamma, const Statement& s) const;
  bool entails(std::span<const CompiledStatement* const> gamma,
               const CompiledStatement& s) const;
  bool entails_all(const StatementSet& gamma, const StatementSet& phi) const;
  bool equivalent(const StatementSet& a, const StatementSet& b) const;

  /// {a, b} consistent; the lexicographic case has a closed form.
  bool pair_consistent(const CompiledStatement& a,
                       const CompiledStatement& b) const;

  CompiledStatement complement(const CompiledStatement& s) const;

 private:
  ConsistencyResult consistent_lex(std::span<const CompiledStatement* const> phi) const;
  ConsistencyResult consistent_hier(std::span<const CompiledStatement* const> phi) const;

  VariableSpace space_;
  Combiner combiner_;
  ModelClass model_class_;
  Limits limits_;
};

// Free-function surface.

/// All-subset characterisation under hierarchical models (singletons only
/// for lexicographic). Uses the dominance fast path for monotone combiners.
Triviality classify(const Statement& s, const VariableSpace& space,
                    const Combiner& c,
                    ModelClass model_class = ModelClass::kHierarchical,
                    std::size_t max_vars = 20);
/// The 2^|V|−1 subset scan, no shortcuts. Throws CapacityError past max_vars.
Triviality classify_generic(const Statement& s, const VariableSpace& space,
                            const Combiner& c,
                            ModelClass model_class = ModelClass::kHierarchical,
                            std::size_t max_vars = 20);
/// Per-variable dominance; nullopt when the combiner is not monotone.
std::optional<Triviality> classify_fast(const Statement& s, const Combiner& c,
                                        ModelClass model_class = ModelClass::kHierarchical);

ConsistencyResult is_consistent_lex(const StatementSet& phi,
                                    const VariableSpace& space,
                                    const Combiner& c);
ConsistencyResult is_consistent_hier(const StatementSet& phi,
                                     const VariableSpace& space,
                                     const Combiner& c, Limits limits = {});
bool entails(const StatementSet& gamma, const Statement& s,
             const VariableSpace& space, const Combiner& c,
             ModelClass model_class, Limits limits = {});
bool equivalent(const StatementSet& a, const StatementSet& b,
                const VariableSpace& space, const Combiner& c,
                ModelClass model_class, Limits limits = {});

}  // namespace concord
