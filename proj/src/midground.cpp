#include "concord/midground.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "concord/errors.hpp"
#include "concord/kernels.hpp"
#include "concord/oracle.hpp"

namespace concord {

namespace {

using CompiledRefs = std::vector<const CompiledStatement*>;

struct CompiledProfile {
  std::vector<std::vector<CompiledStatement>> per_stakeholder;
  std::vector<CompiledRefs> refs;  // per stakeholder
  CompiledRefs flat;
};

CompiledProfile compile_profile(const Profile& profile, const Reasoner& r) {
  CompiledProfile cp;
  cp.per_stakeholder.reserve(profile.stakeholders.size());
  for (const auto& sh : profile.stakeholders) {
    auto& out = cp.per_stakeholder.emplace_back();
    for (const auto& s : sh.statements) out.push_back(r.compile(s));
  }
  for (const auto& group : cp.per_stakeholder) {
    auto& refs = cp.refs.emplace_back();
    for (const auto& c : group) {
      refs.push_back(&c);
      cp.flat.push_back(&c);
    }
  }
  return cp;
}

std::vector<char> run_filter(const Limits& limits, std::size_t n,
                             const std::function<bool(std::size_t)>& pred) {
  return limits.parallel ? kernels::filter_parallel(n, pred)
                         : kernels::filter_serial(n, pred);
}

std::vector<Alternative> all_alternatives(const VariableSpace& space,
                                          std::uint64_t cap) {
  const std::uint64_t n = space.alternative_count();
  if (n > cap) {
    std::ostringstream os;
    os << "language: " << n << " alternatives exceed the cap of " << cap;
    throw CapacityError(os.str());
  }
  const std::size_t m = space.size();
  std::vector<Alternative> out;
  out.reserve(n);
  std::vector<std::size_t> pos(m, 0);
  for (std::uint64_t k = 0; k < n; ++k) {
    std::vector<Value> vals(m);
    for (std::size_t v = 0; v < m; ++v) vals[v] = space.domain(v)[pos[v]];
    out.emplace_back(std::move(vals));
    for (std::size_t v = m; v-- > 0;) {
      if (++pos[v] < space.domain(v).size()) break;
      pos[v] = 0;
    }
  }
  return out;
}

std::uint64_t pair_cap(const Limits& limits) {
  // |V̲|² ≤ max_alternative_pairs
  std::uint64_t cap = 1;
  while ((cap + 1) * (cap + 1) <= limits.max_alternative_pairs) ++cap;
  return cap;
}

struct SignsLess {
  bool operator()(const CompiledStatement& a, const CompiledStatement& b) const {
    if (a.strict != b.strict) return a.strict < b.strict;
    return a.signs < b.signs;
  }
};

}  // namespace

namespace {

// Validates the profile, compiles it once and checks every stakeholder set
// on the compiled form.
CompiledProfile checked_profile(const Profile& profile, const Reasoner& r) {
  profile.validate();
  if (profile.stakeholders.empty())
    throw InputError("profile has no stakeholders");
  auto cp = compile_profile(profile, r);
  for (std::size_t k = 0; k < profile.stakeholders.size(); ++k) {
    const auto& sh = profile.stakeholders[k];
    if (sh.statements.empty())
      throw InputError("stakeholder '" + sh.name + "' has no statements");
    bool falsifiable = false;
    for (const auto* c : cp.refs[k]) falsifiable |= r.classify(*c) != Triviality::kTautology;
    if (!falsifiable)
      throw InputError("stakeholder '" + sh.name + "' holds only tautologies");
    if (!r.consistent(cp.refs[k]).consistent)
      throw InputError("stakeholder '" + sh.name + "' is inconsistent");
  }
  return cp;
}

}  // namespace

void require_non_trivial(const Profile& profile, const Reasoner& r) {
  (void)checked_profile(profile, r);
}

// ---------------------------------------------------------------------------

PostulateReport check_postulates(const StatementSet& phi, const Profile& profile,
                                 bool check_p5, const Limits& limits,
                                 const StatementSet* language) {
  Reasoner r(profile.space, profile.combiner, profile.model_class, limits);
  const auto cp = checked_profile(profile, r);
  for (const auto& s : phi) {
    s.left.validate(profile.space);
    s.right.validate(profile.space);
  }
  PostulateReport rep;

  const bool phi_consistent = r.consistent(phi).consistent;
  if (phi_consistent && r.falsifiable(phi)) {
    rep.p1.verdict = Verdict::kPass;
  } else {
    rep.p1.verdict = Verdict::kFail;
    rep.p1.offending = phi;
  }

  const StatementSet uni = profile.union_statements();
  const bool union_consistent = r.consistent(cp.flat).consistent;
  if (!union_consistent || r.equivalent(phi, uni)) {
    rep.p2.verdict = Verdict::kPass;
  } else {
    rep.p2.verdict = Verdict::kFail;
    rep.p2.offending = phi;
  }

  rep.p3.verdict = Verdict::kPass;
  rep.p4.verdict = Verdict::kPass;
  for (const auto& s : phi) {
    const auto c = r.compile(s);
    bool p3 = std::all_of(cp.flat.begin(), cp.flat.end(),
                          [&](const CompiledStatement* x) { return r.pair_consistent(c, *x); });
    bool p4 = std::any_of(cp.refs.begin(), cp.refs.end(),
                          [&](const CompiledRefs& g) { return r.entails(g, c); });
    if (!p3) {
      rep.p3.verdict = Verdict::kFail;
      rep.p3.offending.push_back(s);
    }
    if (!p4) {
      rep.p4.verdict = Verdict::kFail;
      rep.p4.offending.push_back(s);
    }
  }

  if (check_p5) {
    try {
      StatementSet lang;
      if (language) {
        lang = *language;
      } else if (profile.model_class == ModelClass::kLexicographic) {
        lang = binary_language(profile.space, profile.combiner, limits);
      } else {
        lang = full_language(profile.space, limits);
      }
      if (lang.size() > limits.max_language)
        throw CapacityError("P5: language too large");
      if (auto witness = oracle::p5_counterexample(profile, phi, lang)) {
        rep.p5.verdict = Verdict::kFail;
        rep.p5.offending = normalize(std::move(*witness));
      } else {
        rep.p5.verdict = Verdict::kPass;
      }
    } catch (const CapacityError&) {
      rep.p5.verdict = Verdict::kNotChecked;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

StatementSet lex_candidates(const VariableSpace& space) {
  const std::size_t m = space.size();
  StatementSet out;
  out.reserve(2 * m);
  for (std::size_t v = 0; v < m; ++v) {
    std::vector<Value> zero_v(m, 0), one_v(m, 1), zero(m, 0);
    zero_v[v] = 1;
    one_v[v] = 0;
    out.push_back(geq(Alternative(one_v), Alternative(zero_v)));
    out.push_back(gt(Alternative(one_v), Alternative(zero)));
  }
  return out;
}

Statement lift_binary(const Statement& s, const VariableSpace& space,
                      const Combiner& c) {
  const std::size_t m = space.size();
  if (s.left.size() != m || s.right.size() != m)
    throw InputError("lift_binary: arity does not match the space");
  std::vector<Value> l(m), r(m);
  for (std::size_t v = 0; v < m; ++v) {
    auto d = space.domain(v);
    std::sort(d.begin(), d.end(), [&](Value a, Value b) { return c.compare(a, b) < 0; });
    auto pick = [&](Value bit) {
      if (bit != 0 && bit != 1) throw InputError("lift_binary: value outside {0,1}");
      return d[static_cast<std::size_t>(bit)];
    };
    l[v] = pick(s.left[v]);
    r[v] = pick(s.right[v]);
  }
  return {Alternative(std::move(l)), Alternative(std::move(r)), s.relation};
}

ExistenceResult exists_mg_lex(const Profile& profile, const Limits& limits) {
  if (profile.model_class != ModelClass::kLexicographic)
    throw InputError("exists_mg_lex requires lexicographic models");
  Reasoner r(profile.space, profile.combiner, ModelClass::kLexicographic, limits);
  const auto cp = checked_profile(profile, r);
  ExistenceResult res;
  if (r.consistent(cp.flat).consistent) {
    res.exists = res.union_consistent = true;
    res.witness = profile.union_statements();
    return res;
  }
  // Candidates compiled straight from their per-variable signs.
  const std::size_t m = profile.space.size();
  const StatementSet cands = lex_candidates(profile.space);
  for (std::size_t k = 0; k < cands.size(); ++k) {
    const std::size_t v = k / 2;
    std::vector<std::int8_t> signs(m, 1);
    signs[v] = k % 2 == 1 ? 0 : -1;
    const CompiledStatement c = compiled_lex(std::move(signs), k % 2 == 1);
    bool p3 = true;
    for (const auto* s : cp.flat) {
      ++res.pair_checks;
      p3 &= r.pair_consistent(c, *s);
    }
    bool p4 = false;
    for (const auto& g : cp.refs) {
      ++res.entailment_checks;
      p4 |= r.entails(g, c);
    }
    if (p3 && p4)
      res.passing.push_back(lift_binary(cands[k], profile.space, profile.combiner));
  }
  res.exists = !res.passing.empty();
  if (res.exists) res.witness = {res.passing.front()};
  return res;
}

StatementSet hier_candidates(const VariableSpace& space, const Combiner& c,
                             const Limits& limits, bool reduced) {
  const auto alts = all_alternatives(space, pair_cap(limits));
  Reasoner r(space, c, ModelClass::kHierarchical, limits);
  StatementSet out;
  for (const auto& a : alts)
    for (const auto& b : alts) {
      if (a == b) continue;
      const auto weak = geq(a, b);
      const auto strong = gt(a, b);
      const bool weak_nt = r.classify(weak) == Triviality::kNonTrivial;
      const bool strong_nt = r.classify(strong) == Triviality::kNonTrivial;
      if (weak_nt) out.push_back(weak);
      if (strong_nt && (!reduced || !weak_nt)) out.push_back(strong);
    }
  return normalize(std::move(out));
}

ExistenceResult exists_mg_hier(const Profile& profile, const Limits& limits) {
  if (profile.model_class != ModelClass::kHierarchical)
    throw InputError("exists_mg_hier requires hierarchical models");
  Reasoner r(profile.space, profile.combiner, ModelClass::kHierarchical, limits);
  const auto cp = checked_profile(profile, r);
  ExistenceResult res;
  if (r.consistent(cp.flat).consistent) {
    res.exists = res.union_consistent = true;
    res.witness = profile.union_statements();
    return res;
  }
  const StatementSet cands = hier_candidates(profile.space, profile.combiner, limits);
  std::vector<CompiledStatement> compiled(cands.size());
  run_filter(limits, cands.size(), [&](std::size_t i) {
    compiled[i] = r.compile(cands[i]);
    return true;
  });
  const auto flags = run_filter(limits, cands.size(), [&](std::size_t i) {
    for (const auto* s : cp.flat)
      if (!r.pair_consistent(compiled[i], *s)) return false;
    for (const auto& g : cp.refs)
      if (r.entails(g, compiled[i])) return true;
    return false;
  });
  res.pair_checks = cands.size() * cp.flat.size();
  res.entailment_checks = cands.size() * cp.refs.size();
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (flags[i]) res.passing.push_back(cands[i]);
  res.exists = !res.passing.empty();
  if (res.exists) {
    // A strict witness says more than its non-strict version.
    auto it = std::find_if(res.passing.begin(), res.passing.end(),
                           [](const Statement& s) { return s.strict(); });
    res.witness = {it != res.passing.end() ? *it : res.passing.front()};
  }
  return res;
}

// ---------------------------------------------------------------------------

const char* to_string(LanguageKind k) {
  switch (k) {
    case LanguageKind::kFull:
      return "full";
    case LanguageKind::kBinary:
      return "binary";
    case LanguageKind::kCandidates:
      return "candidates";
  }
  return "?";
}

StatementSet full_language(const VariableSpace& space, const Limits& limits) {
  const auto alts = all_alternatives(space, pair_cap(limits));
  const std::uint64_t n = alts.size();
  if (2 * n * (n - 1) > limits.max_language) {
    std::ostringstream os;
    os << "full language: " << 2 * n * (n - 1) << " statements exceed the cap of "
       << limits.max_language;
    throw CapacityError(os.str());
  }
  StatementSet out;
  out.reserve(2 * n * (n - 1));
  for (const auto& a : alts)
    for (const auto& b : alts) {
      if (a == b) continue;
      out.push_back(geq(a, b));
      out.push_back(gt(a, b));
    }
  return normalize(std::move(out));
}

StatementSet binary_language(const VariableSpace& space, const Combiner& c,
                             const Limits& limits) {
  std::vector<std::string> names = space.names();
  auto bin = full_language(VariableSpace::binary(names), limits);
  for (auto& s : bin) s = lift_binary(s, space, c);
  return normalize(std::move(bin));
}

StatementSet build_language(const Profile& profile, LanguageKind kind,
                            const Limits& limits) {
  const bool lex = profile.model_class == ModelClass::kLexicographic;
  switch (kind) {
    case LanguageKind::kFull:
      return full_language(profile.space, limits);
    case LanguageKind::kBinary:
      if (!lex) throw InputError("the binary language needs lexicographic models");
      return binary_language(profile.space, profile.combiner, limits);
    case LanguageKind::kCandidates:
      if (lex) {
        StatementSet out;
        for (const auto& s : lex_candidates(profile.space))
          out.push_back(lift_binary(s, profile.space, profile.combiner));
        return normalize(std::move(out));
      }
      return hier_candidates(profile.space, profile.combiner, limits);
  }
  return {};
}

namespace {

// All maximum-weight jointly consistent sets of statement classes.
class MaxConsistent {
 public:
  MaxConsistent(const Reasoner& r, const std::vector<const CompiledStatement*>& reps,
                const std::vector<std::size_t>& weight, const std::vector<char>& compat)
      : r_(r), reps_(reps), weight_(weight), compat_(compat), n_(reps.size()) {}

  std::vector<std::vector<std::size_t>> run(const std::vector<std::size_t>& order) {
    std::vector<std::size_t> cur;
    CompiledRefs refs;
    expand(cur, refs, 0, order);
    return best_sets_;
  }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void expand(std::vector<std::size_t>& cur, CompiledRefs& refs, std::size_t w,
              const std::vector<std::size_t>& cand) {
    ++nodes_;
    if (cand.empty()) {
      if (w > best_) {
        best_ = w;
        best_sets_.clear();
      }
      if (w == best_) best_sets_.push_back(cur);
      return;
    }
    std::size_t rest = 0;
    for (auto c : cand) rest += weight_[c];
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (w + rest < best_) return;
      const std::size_t c = cand[i];
      cur.push_back(c);
      refs.push_back(reps_[c]);
      std::vector<std::size_t> next;
      for (std::size_t j = i + 1; j < cand.size(); ++j) {
        const std::size_t d = cand[j];
        if (!compat_[c * n_ + d]) continue;
        refs.push_back(reps_[d]);
        if (r_.consistent(refs).consistent) next.push_back(d);
        refs.pop_back();
      }
      expand(cur, refs, w + weight_[c], next);
      cur.pop_back();
      refs.pop_back();
      rest -= weight_[c];
    }
  }

  const Reasoner& r_;
  const std::vector<const CompiledStatement*>& reps_;
  const std::vector<std::size_t>& weight_;
  const std::vector<char>& compat_;
  std::size_t n_;
  std::size_t best_ = 0;
  std::vector<std::vector<std::size_t>> best_sets_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

MiddleGroundSet construct_mgs(const Profile& profile, const StatementSet& language,
                              const Limits& limits, ConstructStats* stats) {
  Reasoner r(profile.space, profile.combiner, profile.model_class, limits);
  const auto cp = checked_profile(profile, r);
  ConstructStats st;
  MiddleGroundSet out;
  if (r.consistent(cp.flat).consistent) {
    out.grounds.push_back(normalize(profile.union_statements()));
    if (stats) *stats = st;
    return out;
  }

  const StatementSet lang = normalize(language);
  if (lang.size() > limits.max_language) {
    std::ostringstream os;
    os << "construct: language of " << lang.size() << " statements exceeds the cap of "
       << limits.max_language;
    throw CapacityError(os.str());
  }
  st.language = lang.size();
  for (const auto& s : lang) {
    s.left.validate(profile.space);
    s.right.validate(profile.space);
  }
  std::vector<CompiledStatement> compiled(lang.size());
  run_filter(limits, lang.size(), [&](std::size_t i) {
    compiled[i] = r.compile(lang[i]);
    return true;
  });

  const auto psi1 = run_filter(limits, lang.size(), [&](std::size_t i) {
    return r.classify(compiled[i]) == Triviality::kNonTrivial;
  });
  const auto psi3 = run_filter(limits, lang.size(), [&](std::size_t i) {
    if (!psi1[i]) return false;
    for (const auto* s : cp.flat)
      if (!r.pair_consistent(compiled[i], *s)) return false;
    return true;
  });
  const auto psi4 = run_filter(limits, lang.size(), [&](std::size_t i) {
    if (!psi3[i]) return false;
    for (const auto& g : cp.refs)
      if (r.entails(g, compiled[i])) return true;
    return false;
  });

  // Statements with identical signs are satisfied by exactly the same models;
  // each class counts with its size.
  std::map<CompiledStatement, std::vector<std::size_t>, SignsLess> classes;
  for (std::size_t i = 0; i < lang.size(); ++i) {
    st.psi1 += psi1[i] != 0;
    st.psi3 += psi3[i] != 0;
    st.psi4 += psi4[i] != 0;
    if (psi4[i]) classes[compiled[i]].push_back(i);
  }
  st.pool = st.psi4;
  st.classes = classes.size();

  std::vector<const CompiledStatement*> reps;
  std::vector<std::size_t> weight;
  std::vector<const std::vector<std::size_t>*> members;
  for (const auto& [key, idx] : classes) {
    reps.push_back(&key);
    weight.push_back(idx.size());
    members.push_back(&idx);
  }
  const std::size_t k = reps.size();
  auto pred = [&](std::size_t i, std::size_t j) { return r.pair_consistent(*reps[i], *reps[j]); };
  const auto compat = limits.parallel ? kernels::pair_matrix_parallel(k, pred)
                                      : kernels::pair_matrix_serial(k, pred);

  std::vector<std::size_t> degree(k, 0), order(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) degree[i] += i != j && compat[i * k + j];
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });

  MaxConsistent search(r, reps, weight, compat);
  auto best = k == 0 ? std::vector<std::vector<std::size_t>>{} : search.run(order);
  st.nodes = search.nodes();

  for (const auto& sel : best) {
    StatementSet g;
    for (auto c : sel)
      for (auto i : *members[c]) g.push_back(lang[i]);
    g = normalize(std::move(g));
    bool dup = std::any_of(out.grounds.begin(), out.grounds.end(),
                           [&](const StatementSet& h) { return r.equivalent(g, h); });
    if (!dup) out.grounds.push_back(std::move(g));
  }
  std::sort(out.grounds.begin(), out.grounds.end());
  if (stats) *stats = st;
  return out;
}

MiddleGroundSet construct_mgs(const Profile& profile, LanguageKind kind,
                              const Limits& limits, ConstructStats* stats) {
  auto out = construct_mgs(profile, build_language(profile, kind, limits), limits, stats);
  const bool lex = profile.model_class == ModelClass::kLexicographic;
  out.exhaustive = kind == LanguageKind::kFull || (lex && kind == LanguageKind::kBinary);
  return out;
}

}  // namespace concord
