#include "concord/reasoner.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "concord/errors.hpp"
#include "concord/kernels.hpp"

namespace concord {

namespace {

struct SignFlags {
  bool any_lt = false;
  bool any_eq = false;
  bool any_gt = false;
};

Triviality triviality_from(const SignFlags& f, bool strict) {
  if (!strict) {
    if (!f.any_lt) return Triviality::kTautology;
    if (!f.any_gt && !f.any_eq) return Triviality::kContradiction;
  } else {
    if (!f.any_lt && !f.any_eq) return Triviality::kTautology;
    if (!f.any_gt) return Triviality::kContradiction;
  }
  return Triviality::kNonTrivial;
}

void note(SignFlags& f, int sign) {
  f.any_lt |= sign < 0;
  f.any_eq |= sign == 0;
  f.any_gt |= sign > 0;
}

void check_arity(const Statement& s, const VariableSpace& space) {
  if (s.left.size() != space.size() || s.right.size() != space.size())
    throw InputError("statement arity does not match the variable space");
}

/// ⊕-folds of `a` over every non-empty subset, indexed by mask.
std::vector<Value> subset_folds(const Alternative& a, const Combiner& c) {
  const std::size_t m = a.size();
  std::vector<Value> f(std::size_t{1} << m, 0);
  for (std::size_t v = 0; v < m; ++v) c.check_operand(a[v]);
  for (std::uint64_t mask = 1; mask < f.size(); ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    const std::uint64_t rest = mask & (mask - 1);
    f[mask] = rest == 0 ? a[low] : c.combine(f[rest], a[low]);
  }
  return f;
}

}  // namespace

Triviality classify_generic(const Statement& s, const VariableSpace& space,
                            const Combiner& c, ModelClass model_class,
                            std::size_t max_vars) {
  check_arity(s, space);
  SignFlags flags;
  if (model_class == ModelClass::kLexicographic) {
    for (std::size_t v = 0; v < space.size(); ++v) {
      c.check_operand(s.left[v]);
      c.check_operand(s.right[v]);
      note(flags, c.compare(s.left[v], s.right[v]));
    }
    return triviality_from(flags, s.strict());
  }
  if (space.size() > max_vars) {
    std::ostringstream os;
    os << "classify: " << space.size() << " variables exceed the cap of "
       << max_vars << " for the all-subset scan";
    throw CapacityError(os.str());
  }
  auto lf = subset_folds(s.left, c);
  auto rf = subset_folds(s.right, c);
  for (std::size_t mask = 1; mask < lf.size(); ++mask) {
    note(flags, c.compare(lf[mask], rf[mask]));
    if (flags.any_lt && flags.any_gt && flags.any_eq) break;
  }
  return triviality_from(flags, s.strict());
}

std::optional<Triviality> classify_fast(const Statement& s, const Combiner& c,
                                        ModelClass model_class) {
  if (model_class == ModelClass::kHierarchical && !c.monotone())
    return std::nullopt;
  // Monotone combiners: per-variable dominance decides every subset.
  SignFlags flags;
  for (std::size_t v = 0; v < s.left.size(); ++v) {
    c.check_operand(s.left[v]);
    c.check_operand(s.right[v]);
    note(flags, c.compare(s.left[v], s.right[v]));
  }
  return triviality_from(flags, s.strict());
}

Triviality classify(const Statement& s, const VariableSpace& space,
                    const Combiner& c, ModelClass model_class,
                    std::size_t max_vars) {
  check_arity(s, space);
  if (auto fast = classify_fast(s, c, model_class)) return *fast;
  return classify_generic(s, space, c, model_class, max_vars);
}

// ---------------------------------------------------------------------------

Reasoner::Reasoner(VariableSpace space, Combiner combiner,
                   ModelClass model_class, Limits limits)
    : space_(std::move(space)),
      combiner_(std::move(combiner)),
      model_class_(model_class),
      limits_(limits) {}

CompiledStatement Reasoner::compile(const Statement& s) const {
  check_arity(s, space_);
  CompiledStatement out;
  out.strict = s.strict();
  const std::size_t m = space_.size();
  if (model_class_ == ModelClass::kLexicographic) {
    std::vector<std::int8_t> signs(m);
    for (std::size_t v = 0; v < m; ++v) {
      combiner_.check_operand(s.left[v]);
      combiner_.check_operand(s.right[v]);
      signs[v] = static_cast<std::int8_t>(combiner_.compare(s.left[v], s.right[v]));
    }
    return compiled_lex(std::move(signs), s.strict());
  }
  if (m > limits_.max_vars_hier) {
    std::ostringstream os;
    os << "hierarchical reasoning: " << m << " variables exceed the cap of "
       << limits_.max_vars_hier;
    throw CapacityError(os.str());
  }
  auto lf = subset_folds(s.left, combiner_);
  auto rf = subset_folds(s.right, combiner_);
  out.signs.assign(lf.size(), 0);
  for (std::size_t mask = 1; mask < lf.size(); ++mask)
    out.signs[mask] = static_cast<std::int8_t>(combiner_.compare(lf[mask], rf[mask]));
  return out;
}

CompiledStatement compiled_lex(std::vector<std::int8_t> signs, bool strict) {
  CompiledStatement out;
  out.strict = strict;
  const std::size_t words = (signs.size() + 63) / 64;
  out.win.assign(words, 0);
  out.lose.assign(words, 0);
  for (std::size_t v = 0; v < signs.size(); ++v) {
    if (signs[v] > 0) out.win[v / 64] |= std::uint64_t{1} << (v % 64);
    if (signs[v] < 0) out.lose[v / 64] |= std::uint64_t{1} << (v % 64);
  }
  out.signs = std::move(signs);
  return out;
}

CompiledStatement Reasoner::complement(const CompiledStatement& s) const {
  CompiledStatement out;
  out.win = s.lose;
  out.lose = s.win;
  out.strict = !s.strict;
  out.signs.resize(s.signs.size());
  for (std::size_t i = 0; i < s.signs.size(); ++i)
    out.signs[i] = static_cast<std::int8_t>(-s.signs[i]);
  return out;
}

Triviality Reasoner::classify(const Statement& s) const {
  return concord::classify(s, space_, combiner_, model_class_,
                           limits_.max_vars_classify);
}

Triviality Reasoner::classify(const CompiledStatement& s) const {
  SignFlags flags;
  const std::size_t first = model_class_ == ModelClass::kLexicographic ? 0 : 1;
  for (std::size_t i = first; i < s.signs.size(); ++i) note(flags, s.signs[i]);
  return triviality_from(flags, s.strict);
}

ConsistencyResult Reasoner::consistent(const StatementSet& phi) const {
  std::vector<CompiledStatement> compiled;
  compiled.reserve(phi.size());
  for (const auto& s : phi) compiled.push_back(compile(s));
  std::vector<const CompiledStatement*> refs;
  for (const auto& c : compiled) refs.push_back(&c);
  return consistent(refs);
}

ConsistencyResult Reasoner::consistent(
    std::span<const CompiledStatement* const> phi) const {
  return model_class_ == ModelClass::kLexicographic ? consistent_lex(phi)
                                                    : consistent_hier(phi);
}

// Greedy construction. A variable is eligible when no active statement loses
// on it; taking an eligible variable that wins some active statement never
// hurts, because removing statements only enlarges the eligible set. So the
// greedy fails exactly when no lexicographic model exists.
ConsistencyResult Reasoner::consistent_lex(
    std::span<const CompiledStatement* const> phi) const {
  const std::size_t m = space_.size();
  const std::size_t words = (m + 63) / 64;
  const std::size_t n = phi.size();
  ConsistencyResult res;
  std::vector<char> active(n, 1);
  std::vector<std::uint64_t> winning(words), losing(words);
  std::size_t strict_left = 0;
  for (std::size_t i = 0; i < n; ++i) strict_left += phi[i]->strict;
  std::vector<std::size_t> order;
  while (strict_left > 0 || order.empty()) {
    std::fill(winning.begin(), winning.end(), 0);
    std::fill(losing.begin(), losing.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t w = 0; w < words; ++w) {
        winning[w] |= phi[i]->win[w];
        losing[w] |= phi[i]->lose[w];
      }
    }
    // Lowest variable that some active statement wins and none loses.
    std::size_t pick = m;
    for (std::size_t w = 0; w < words && pick == m; ++w)
      if (const std::uint64_t e = winning[w] & ~losing[w])
        pick = w * 64 + static_cast<std::size_t>(std::countr_zero(e));
    res.stats.nodes += pick == m ? m : pick + 1;
    if (pick == m) break;
    order.push_back(pick);
    ++res.stats.levels;
    const std::uint64_t bit = std::uint64_t{1} << (pick % 64);
    for (std::size_t i = 0; i < n; ++i)
      if (active[i] && (phi[i]->win[pick / 64] & bit)) {
        active[i] = 0;
        strict_left -= phi[i]->strict;
      }
  }
  if (strict_left > 0) return res;
  if (order.empty()) {
    // Nothing left to decide; any variable no statement loses on will do.
    for (std::size_t v = 0; v < m; ++v)
      if (!(losing[v / 64] >> (v % 64) & 1)) {
        order.push_back(v);
        ++res.stats.levels;
        break;
      }
    if (order.empty()) return res;
  }
  res.consistent = true;
  res.witness = LexicographicModel(order).as_hierarchical();
  return res;
}

// Level-by-level construction over canonical subsets. Admissible levels only
// grow as statements get decided, so the first admissible deciding level in
// canonical order can always be taken: the search never has to backtrack and
// depth is bounded by |Φ|.
ConsistencyResult Reasoner::consistent_hier(
    std::span<const CompiledStatement* const> phi) const {
  const std::size_t m = space_.size();
  if (m > limits_.max_vars_hier) {
    std::ostringstream os;
    os << "hierarchical reasoning: " << m << " variables exceed the cap of "
       << limits_.max_vars_hier;
    throw CapacityError(os.str());
  }
  const auto& order = kernels::canonical_masks(m);
  kernels::Deadline deadline(limits_.timeout);
  ConsistencyResult res;
  std::vector<const CompiledStatement*> undecided(phi.begin(), phi.end());
  std::size_t strict_left = 0;
  for (auto* s : undecided) strict_left += s->strict;
  std::vector<std::uint64_t> levels;
  std::vector<kernels::SignRow> rows;
  while (strict_left > 0 || levels.empty()) {
    rows.clear();
    for (auto* s : undecided) rows.push_back(s->signs.data());
    bool timed_out = false;
    const bool deciding = strict_left > 0;
    const bool go_parallel = limits_.parallel && order.size() >= 4096;
    std::size_t pos =
        go_parallel
            ? kernels::level_scan_parallel(rows, order, deciding, deadline, timed_out)
            : kernels::level_scan_serial(rows, order, deciding, deadline, timed_out);
    if (timed_out) throw Indeterminate("hierarchical consistency: timeout");
    res.stats.nodes += pos == kernels::npos ? order.size() : pos + 1;
    if (pos == kernels::npos) return res;
    const std::uint32_t mask = order[pos];
    levels.push_back(mask);
    ++res.stats.levels;
    std::erase_if(undecided, [&](const CompiledStatement* s) {
      if (s->signs[mask] <= 0) return false;
      strict_left -= s->strict;
      return true;
    });
  }
  res.consistent = true;
  res.witness = HierarchicalModel::from_masks(levels);
  return res;
}

bool Reasoner::pair_consistent(const CompiledStatement& a,
                               const CompiledStatement& b) const {
  if (model_class_ == ModelClass::kHierarchical) {
    const CompiledStatement* refs[] = {&a, &b};
    return consistent_hier(refs).consistent;
  }
  // Closed form of the greedy on two statements.
  const std::size_t m = space_.size();
  bool wins_a = false, wins_b = false, a_wins_anywhere = false, b_wins_anywhere = false;
  std::size_t blocked = 0;
  for (std::size_t w = 0; w < a.win.size(); ++w) {
    const std::uint64_t open = ~(a.lose[w] | b.lose[w]);
    blocked += static_cast<std::size_t>(std::popcount(a.lose[w] | b.lose[w]));
    wins_a |= (a.win[w] & open) != 0;
    wins_b |= (b.win[w] & open) != 0;
    a_wins_anywhere |= a.win[w] != 0;
    b_wins_anywhere |= b.win[w] != 0;
  }
  const bool eligible = blocked < m;
  if (wins_a && wins_b) return true;
  if (wins_a) return !b.strict || b_wins_anywhere;
  if (wins_b) return !a.strict || a_wins_anywhere;
  return eligible && !a.strict && !b.strict;
}

bool Reasoner::falsifiable(const StatementSet& phi) const {
  for (const auto& s : phi)
    if (classify(s) != Triviality::kTautology) return true;
  return false;
}

bool Reasoner::non_trivial(const StatementSet& phi) const {
  return falsifiable(phi) && consistent(phi).consistent;
}

bool Reasoner::entails(const StatementSet& gamma, const Statement& s) const {
  StatementSet with = gamma;
  with.push_back(concord::complement(s));
  return !consistent(with).consistent;
}

bool Reasoner::entails(std::span<const CompiledStatement* const> gamma,
                       const CompiledStatement& s) const {
  CompiledStatement neg = complement(s);
  std::vector<const CompiledStatement*> refs(gamma.begin(), gamma.end());
  refs.push_back(&neg);
  return !consistent(refs).consistent;
}

bool Reasoner::entails_all(const StatementSet& gamma,
                           const StatementSet& phi) const {
  std::vector<CompiledStatement> compiled;
  for (const auto& s : gamma) compiled.push_back(compile(s));
  std::vector<const CompiledStatement*> refs;
  for (const auto& c : compiled) refs.push_back(&c);
  for (const auto& s : phi)
    if (!entails(refs, compile(s))) return false;
  return true;
}

bool Reasoner::equivalent(const StatementSet& a, const StatementSet& b) const {
  return entails_all(a, b) && entails_all(b, a);
}

// ---------------------------------------------------------------------------

ConsistencyResult is_consistent_lex(const StatementSet& phi,
                                    const VariableSpace& space,
                                    const Combiner& c) {
  return Reasoner(space, c, ModelClass::kLexicographic).consistent(phi);
}

ConsistencyResult is_consistent_hier(const StatementSet& phi,
                                     const VariableSpace& space,
                                     const Combiner& c, Limits limits) {
  return Reasoner(space, c, ModelClass::kHierarchical, limits).consistent(phi);
}

bool entails(const StatementSet& gamma, const Statement& s,
             const VariableSpace& space, const Combiner& c,
             ModelClass model_class, Limits limits) {
  return Reasoner(space, c, model_class, limits).entails(gamma, s);
}

bool equivalent(const StatementSet& a, const StatementSet& b,
                const VariableSpace& space, const Combiner& c,
                ModelClass model_class, Limits limits) {
  return Reasoner(space, c, model_class, limits).equivalent(a, b);
}

}  // namespace concord
