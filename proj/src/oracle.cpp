#include "concord/oracle.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "concord/errors.hpp"

namespace concord::oracle {

// ---------------------------------------------------------------------------
// Lexicographic enumeration

LexEnumeration::LexEnumeration(const VariableSpace& space)
    : n_(space.size()), used_(space.size(), 0) {
  if (n_ > 7) throw CapacityError("lexicographic enumeration: at most 7 variables");
}

std::optional<LexicographicModel> LexEnumeration::next() {
  if (done_) return std::nullopt;
  auto push = [&](std::size_t v) {
    prefix_.push_back(v);
    used_[v] = 1;
    return LexicographicModel(prefix_);
  };
  if (!started_) {
    started_ = true;
    return push(0);
  }
  if (prefix_.size() < n_)
    for (std::size_t v = 0; v < n_; ++v)
      if (!used_[v]) return push(v);
  while (!prefix_.empty()) {
    const std::size_t v = prefix_.back();
    prefix_.pop_back();
    used_[v] = 0;
    for (std::size_t w = v + 1; w < n_; ++w)
      if (!used_[w]) return push(w);
  }
  done_ = true;
  return std::nullopt;
}

std::uint64_t LexEnumeration::expected_count(std::size_t n) {
  std::uint64_t total = 0, term = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    term *= n - k + 1;
    total += term;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Hierarchical enumeration (syntactic, depth-bounded)

HierEnumeration::HierEnumeration(const VariableSpace& space,
                                 std::size_t max_depth)
    : subsets_((std::size_t{1} << space.size()) - 1), max_depth_(max_depth) {
  if (space.size() > 4) throw CapacityError("hierarchical enumeration: at most 4 variables");
  if (max_depth == 0 || max_depth > 3)
    throw CapacityError("hierarchical enumeration: depth must be 1..3");
}

std::optional<HierarchicalModel> HierEnumeration::next() {
  if (done_) return std::nullopt;
  auto used = [&](std::uint64_t mask) {
    return std::find(prefix_.begin(), prefix_.end(), mask) != prefix_.end();
  };
  auto emit = [&] { return HierarchicalModel::from_masks(prefix_); };
  if (!started_) {
    started_ = true;
    prefix_.push_back(1);
    return emit();
  }
  if (prefix_.size() < max_depth_)
    for (std::uint64_t m = 1; m <= subsets_; ++m)
      if (!used(m)) {
        prefix_.push_back(m);
        return emit();
      }
  while (!prefix_.empty()) {
    const std::uint64_t m = prefix_.back();
    prefix_.pop_back();
    for (std::uint64_t w = m + 1; w <= subsets_; ++w)
      if (!used(w)) {
        prefix_.push_back(w);
        return emit();
      }
  }
  done_ = true;
  return std::nullopt;
}

std::uint64_t HierEnumeration::expected_count(std::size_t n, std::size_t depth) {
  const std::uint64_t s = (std::uint64_t{1} << n) - 1;
  std::uint64_t total = 0, term = 1;
  for (std::size_t k = 1; k <= depth && k <= s; ++k) {
    term *= s - k + 1;
    total += term;
  }
  return total;
}

LexEnumeration enumerate_lex_models(const VariableSpace& space) {
  return LexEnumeration(space);
}

HierEnumeration enumerate_hier_models(const VariableSpace& space,
                                      std::size_t max_depth) {
  return HierEnumeration(space, max_depth);
}

// ---------------------------------------------------------------------------
// Model universes

ModelUniverse::ModelUniverse(const VariableSpace& space, const Combiner& c,
                             ModelClass mc)
    : space_(space), combiner_(c), class_(mc) {}

ModelUniverse ModelUniverse::lexicographic(const VariableSpace& space,
                                           const Combiner& c) {
  ModelUniverse u(space, c, ModelClass::kLexicographic);
  auto e = enumerate_lex_models(space);
  while (auto m = e.next()) {
    u.witnesses_.push_back(m->as_hierarchical());
    u.lex_.push_back(std::move(*m));
  }
  return u;
}

ModelUniverse ModelUniverse::hierarchical(const VariableSpace& space,
                                          const Combiner& c,
                                          std::size_t max_alternatives,
                                          std::size_t max_states) {
  ModelUniverse u(space, c, ModelClass::kHierarchical);
  const std::size_t m = space.size();
  if (m > 16) throw CapacityError("hierarchical universe: at most 16 variables");
  const std::uint64_t n_alt = space.alternative_count();
  if (n_alt > max_alternatives) {
    std::ostringstream os;
    os << "hierarchical universe: " << n_alt << " alternatives exceed "
       << max_alternatives;
    throw CapacityError(os.str());
  }

  // Alternatives in mixed-radix order (last variable fastest).
  std::vector<Alternative> alts;
  alts.reserve(n_alt);
  std::vector<std::size_t> pos(m, 0);
  for (std::uint64_t k = 0; k < n_alt; ++k) {
    std::vector<Value> vals(m);
    for (std::size_t v = 0; v < m; ++v) vals[v] = space.domain(v)[pos[v]];
    alts.emplace_back(std::move(vals));
    for (std::size_t v = m; v-- > 0;) {
      if (++pos[v] < space.domain(v).size()) break;
      pos[v] = 0;
    }
  }

  // Rank of each alternative's combined value, per level.
  const std::size_t n_masks = (std::size_t{1} << m) - 1;
  std::vector<std::vector<std::uint32_t>> level_rank(n_masks + 1);
  std::vector<std::uint32_t> level_width(n_masks + 1, 1);
  for (std::size_t mask = 1; mask <= n_masks; ++mask) {
    VarSet y;
    for (std::size_t v = 0; v < m; ++v)
      if (mask >> v & 1u) y.push_back(v);
    std::vector<Value> vals(alts.size());
    for (std::size_t a = 0; a < alts.size(); ++a) vals[a] = level_value(y, alts[a], c);
    std::vector<Value> distinct = vals;
    std::sort(distinct.begin(), distinct.end(),
              [&](Value x, Value z) { return c.compare(x, z) < 0; });
    distinct.erase(std::unique(distinct.begin(), distinct.end(),
                               [&](Value x, Value z) { return c.compare(x, z) == 0; }),
                   distinct.end());
    auto& lr = level_rank[mask];
    lr.resize(alts.size());
    for (std::size_t a = 0; a < alts.size(); ++a) {
      auto it = std::lower_bound(distinct.begin(), distinct.end(), vals[a],
                                 [&](Value x, Value z) { return c.compare(x, z) < 0; });
      lr[a] = static_cast<std::uint32_t>(it - distinct.begin());
    }
    level_width[mask] = static_cast<std::uint32_t>(distinct.size());
  }

  using State = std::vector<std::uint32_t>;
  auto refine = [&](const State& s, std::size_t mask) {
    std::vector<std::uint64_t> keys(s.size());
    for (std::size_t a = 0; a < s.size(); ++a)
      keys[a] = std::uint64_t{s[a]} * level_width[mask] + level_rank[mask][a];
    std::vector<std::uint64_t> distinct = keys;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    State out(s.size());
    for (std::size_t a = 0; a < s.size(); ++a)
      out[a] = static_cast<std::uint32_t>(
          std::lower_bound(distinct.begin(), distinct.end(), keys[a]) - distinct.begin());
    return out;
  };

  std::map<State, std::size_t> seen;
  std::vector<std::vector<std::uint64_t>> paths;
  const State root(alts.size(), 0);
  std::vector<std::pair<State, std::vector<std::uint64_t>>> frontier{{root, {}}};
  while (!frontier.empty()) {
    std::vector<std::pair<State, std::vector<std::uint64_t>>> next;
    for (const auto& [state, path] : frontier) {
      for (std::size_t mask = 1; mask <= n_masks; ++mask) {
        State child = refine(state, mask);
        if (seen.count(child)) continue;
        if (seen.size() >= max_states)
          throw CapacityError("hierarchical universe: too many distinct orders");
        seen.emplace(child, u.ranks_.size());
        auto child_path = path;
        child_path.push_back(mask);
        u.ranks_.push_back(child);
        u.witnesses_.push_back(HierarchicalModel::from_masks(child_path));
        next.emplace_back(std::move(child), std::move(child_path));
      }
    }
    frontier = std::move(next);
  }
  return u;
}

ModelUniverse ModelUniverse::of(const Profile& profile) {
  return profile.model_class == ModelClass::kLexicographic
             ? lexicographic(profile.space, profile.combiner)
             : hierarchical(profile.space, profile.combiner);
}

std::size_t ModelUniverse::alternative_index(const Alternative& a) const {
  if (a.size() != space_.size())
    throw InputError("oracle: alternative arity does not match the space");
  std::size_t idx = 0;
  for (std::size_t v = 0; v < space_.size(); ++v) {
    const auto& d = space_.domain(v);
    auto it = std::lower_bound(d.begin(), d.end(), a[v]);
    if (it == d.end() || *it != a[v])
      throw InputError("oracle: alternative outside the variable space");
    idx = idx * d.size() + static_cast<std::size_t>(it - d.begin());
  }
  return idx;
}

bool ModelUniverse::satisfies(std::size_t model, const Statement& s) const {
  if (class_ == ModelClass::kLexicographic)
    return concord::satisfies(lex_[model], s, combiner_);
  const auto& r = ranks_[model];
  const auto l = r[alternative_index(s.left)];
  const auto rr = r[alternative_index(s.right)];
  return s.strict() ? l > rr : l >= rr;
}

ModelSet ModelUniverse::models_of(const Statement& s) const {
  ModelSet out(size());
  for (std::size_t i = 0; i < size(); ++i)
    if (satisfies(i, s)) out.set(i);
  return out;
}

ModelSet ModelUniverse::models_of(const StatementSet& phi) const {
  ModelSet out(size());
  out.set();
  for (const auto& s : phi) out &= models_of(s);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

ModelUniverse universe_for(const VariableSpace& space, const Combiner& c,
                           ModelClass mc) {
  return mc == ModelClass::kLexicographic ? ModelUniverse::lexicographic(space, c)
                                          : ModelUniverse::hierarchical(space, c);
}

struct Screened {
  StatementSet statements;     // language statements passing P3 and P4
  std::vector<ModelSet> mods;  // their model sets
  std::vector<ModelSet> stakeholder_mods;
  ModelSet union_mod;
};

Screened screen(const ModelUniverse& u, const Profile& profile,
                const StatementSet& language, bool keep_tautologies) {
  Screened out;
  std::vector<ModelSet> stmt_mods;
  for (const auto& sh : profile.stakeholders) {
    ModelSet m = u.models_of(sh.statements);
    if (m.none() || m.all())
      throw InputError("stakeholder '" + sh.name + "' has a trivial statement set");
    out.stakeholder_mods.push_back(m);
    for (const auto& s : sh.statements) stmt_mods.push_back(u.models_of(s));
  }
  out.union_mod = ModelSet(u.size());
  out.union_mod.set();
  for (const auto& m : out.stakeholder_mods) out.union_mod &= m;
  for (const auto& psi : normalize(language)) {
    ModelSet m = u.models_of(psi);
    if (!keep_tautologies && m.all()) continue;
    bool p3 = std::all_of(stmt_mods.begin(), stmt_mods.end(),
                          [&](const ModelSet& x) { return (m & x).any(); });
    bool p4 = std::any_of(out.stakeholder_mods.begin(), out.stakeholder_mods.end(),
                          [&](const ModelSet& x) { return x.is_subset_of(m); });
    if (p3 && p4) {
      out.statements.push_back(psi);
      out.mods.push_back(std::move(m));
    }
  }
  return out;
}

void sort_grounds(std::vector<StatementSet>& grounds) {
  for (auto& g : grounds) g = normalize(std::move(g));
  std::sort(grounds.begin(), grounds.end());
}

}  // namespace

bool brute_consistent(const StatementSet& phi, const VariableSpace& space,
                      const Combiner& c, ModelClass model_class) {
  return universe_for(space, c, model_class).models_of(phi).any();
}

bool brute_entails(const StatementSet& gamma, const Statement& s,
                   const VariableSpace& space, const Combiner& c,
                   ModelClass model_class) {
  auto u = universe_for(space, c, model_class);
  return u.models_of(gamma).is_subset_of(u.models_of(s));
}

MiddleGroundSet brute_mgs(const Profile& profile, const StatementSet& language) {
  const auto u = ModelUniverse::of(profile);
  const Screened sc = screen(u, profile, language, false);
  MiddleGroundSet out;
  if (sc.union_mod.any()) {
    out.grounds.push_back(profile.union_statements());
    return out;
  }
  std::map<ModelSet, StatementSet> classes;
  for (std::size_t model = 0; model < u.size(); ++model) {
    ModelSet c(u.size());
    c.set();
    StatementSet members;
    for (std::size_t i = 0; i < sc.statements.size(); ++i)
      if (sc.mods[i].test(model)) {
        c &= sc.mods[i];
        members.push_back(sc.statements[i]);
      }
    if (members.empty()) continue;
    classes.emplace(std::move(c), std::move(members));
  }
  for (const auto& [mod, members] : classes) {
    bool minimal = true;
    for (const auto& [other, _] : classes)
      if (other.is_proper_subset_of(mod)) {
        minimal = false;
        break;
      }
    if (minimal) out.grounds.push_back(members);
  }
  sort_grounds(out.grounds);
  return out;
}

MiddleGroundSet brute_mgs_subsets(const Profile& profile,
                                  const StatementSet& language) {
  const auto lang = normalize(language);
  if (lang.size() > 20)
    throw CapacityError("brute_mgs_subsets: language larger than 20 statements");
  const auto u = ModelUniverse::of(profile);
  // Keep tautologies: the definition quantifies over every subset.
  const Screened sc = screen(u, profile, lang, true);
  const bool union_consistent = sc.union_mod.any();
  const std::size_t n = sc.statements.size();
  std::map<ModelSet, std::uint32_t> by_mod;  // model set -> union of masks
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    ModelSet mod(u.size());
    mod.set();
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) mod &= sc.mods[i];
    if (mod.none() || mod.all()) continue;                  // P1
    if (union_consistent && mod != sc.union_mod) continue;  // P2
    by_mod[mod] |= mask;                                    // P3, P4 screened
  }
  MiddleGroundSet out;
  for (const auto& [mod, mask] : by_mod) {
    bool minimal = std::none_of(by_mod.begin(), by_mod.end(), [&](const auto& kv) {
      return kv.first.is_proper_subset_of(mod);
    });
    if (!minimal) continue;
    StatementSet g;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i & 1u) && !sc.mods[i].all()) g.push_back(sc.statements[i]);
    out.grounds.push_back(std::move(g));
  }
  sort_grounds(out.grounds);
  return out;
}

std::optional<StatementSet> p5_counterexample(const Profile& profile,
                                              const StatementSet& phi,
                                              const StatementSet& language) {
  const auto u = ModelUniverse::of(profile);
  const Screened sc = screen(u, profile, language, false);
  const ModelSet target = u.models_of(phi);
  if (sc.union_mod.any()) {
    if (sc.union_mod.is_proper_subset_of(target)) return profile.union_statements();
    return std::nullopt;
  }
  for (std::size_t model = 0; model < u.size(); ++model) {
    ModelSet c(u.size());
    c.set();
    StatementSet members;
    for (std::size_t i = 0; i < sc.statements.size(); ++i)
      if (sc.mods[i].test(model)) {
        c &= sc.mods[i];
        members.push_back(sc.statements[i]);
      }
    if (!members.empty() && c.is_proper_subset_of(target)) return members;
  }
  return std::nullopt;
}

bool subset_sum_brute(const std::vector<std::int64_t>& s, std::int64_t target) {
  if (s.size() > 20) throw CapacityError("subset_sum_brute: at most 20 integers");
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << s.size()); ++mask) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (mask >> i & 1u) sum += s[i];
    if (sum == target) return true;
  }
  return false;
}

}  // namespace concord::oracle
