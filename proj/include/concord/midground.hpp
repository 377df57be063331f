#pragma once

#include <cstdint>
#include <optional>

#include "concord/domain.hpp"
#include "concord/ground.hpp"
#include "concord/reasoner.hpp"

namespace concord {

/// Throws InputError naming the first stakeholder whose set is
/// inconsistent or unfalsifiable.
void require_non_trivial(const Profile& profile, const Reasoner& r);

/// P1–P4 through the reasoner. P5 only when `check_p5`, decided on the
/// oracle's model universe against `language` (default: the binary language
/// for lexicographic profiles, the full language otherwise); reported
/// not-checked when the universe or the language is too large.
PostulateReport check_postulates(const StatementSet& phi, const Profile& profile,
                                 bool check_p5, const Limits& limits = {},
                                 const StatementSet* language = nullptr);

/// {1_v ≥ 0_v} ∪ {1_v > 0} for every variable v, over {0,1}^|V|.
StatementSet lex_candidates(const VariableSpace& space);

/// Maps a {0,1} statement into `space`: per variable, 0 and 1 become the
/// lowest and second-lowest domain values under the combiner's order.
/// Lexicographic satisfaction depends only on per-variable signs, so it is
/// preserved.
Statement lift_binary(const Statement& s, const VariableSpace& space,
                      const Combiner& c);

struct ExistenceResult {
  bool exists = false;
  bool union_consistent = false;
  /// The union when it is consistent, else one passing candidate.
  StatementSet witness;
  /// Every candidate satisfying P3 and P4 (empty when the union is consistent).
  StatementSet passing;
  std::uint64_t pair_checks = 0;
  std::uint64_t entailment_checks = 0;
};

/// Existence under lexicographic models: scan the 2·|V| candidates.
ExistenceResult exists_mg_lex(const Profile& profile, const Limits& limits = {});

/// Every non-trivial statement of the full language over `space`. With
/// `reduced`, only the non-trivial non-strict statements plus the strict
/// statements whose non-strict version is trivial.
StatementSet hier_candidates(const VariableSpace& space, const Combiner& c,
                             const Limits& limits = {}, bool reduced = false);

/// Existence under hierarchical models: scan hier_candidates. The witness
/// is the first passing strict statement when there is one.
ExistenceResult exists_mg_hier(const Profile& profile, const Limits& limits = {});

enum class LanguageKind { kFull, kBinary, kCandidates };
const char* to_string(LanguageKind k);

/// All statements α ≥ β and α > β with α ≠ β. Throws CapacityError past
/// limits.max_language.
StatementSet full_language(const VariableSpace& space, const Limits& limits = {});
/// full_language over {0,1}^|V|, lifted into the profile's space.
StatementSet binary_language(const VariableSpace& space, const Combiner& c,
                             const Limits& limits = {});
StatementSet build_language(const Profile& profile, LanguageKind kind,
                            const Limits& limits = {});

struct ConstructStats {
  std::size_t language = 0;
  std::size_t psi1 = 0, psi3 = 0, psi4 = 0, pool = 0;
  std::size_t classes = 0;
  std::uint64_t nodes = 0;
};

/// Cardinality-maximal consistent subsets of the statements of `language`
/// that are non-trivial, pairwise consistent with every stakeholder
/// statement and entailed by some stakeholder; equivalent results merged.
MiddleGroundSet construct_mgs(const Profile& profile, const StatementSet& language,
                              const Limits& limits = {},
                              ConstructStats* stats = nullptr);
MiddleGroundSet construct_mgs(const Profile& profile, LanguageKind kind,
                              const Limits& limits = {},
                              ConstructStats* stats = nullptr);

}  // namespace concord
