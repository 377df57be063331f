#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "concord/dsl.hpp"
#include "concord/errors.hpp"
#include "concord/gadgets.hpp"
#include "concord/midground.hpp"
#include "concord/oracle.hpp"
#include "support.hpp"

using namespace concord;
using concord::testing::pick;
using concord::testing::Rng;

namespace {

const Combiner kSum(Combiner::Kind::kSum);
const Alternative kGamma{1, 0, 1, 0}, kDelta{0, 1, 0, 1};

bool contains(const StatementSet& set, const Statement& s) {
  return std::find(set.begin(), set.end(), s) != set.end();
}

// Two or three stakeholders with non-trivial random sets, or nullopt.
std::optional<Profile> random_profile(Rng& rng, const VariableSpace& space, const Combiner& c,
                                      ModelClass mc, std::size_t max_stmts) {
  Profile p{space, c, mc, {}};
  const std::size_t n = pick(rng, 1, 3);
  for (std::size_t k = 0; k < n; ++k)
    p.stakeholders.push_back({"S" + std::to_string(k + 1),
                              concord::testing::random_set(rng, space, pick(rng, 1, max_stmts))});
  try {
    require_non_trivial(p, Reasoner(space, c, mc));
  } catch (const InputError&) {
    return std::nullopt;
  }
  return p;
}

StatementSet engineered_lex_profile_union() {
  return {geq({0, 0}, {1, 0}), geq({0, 0}, {0, 1})};
}

Profile engineered_lex_profile() {
  Profile p{VariableSpace::binary({"x", "y"}), kSum, ModelClass::kLexicographic, {}};
  p.stakeholders.push_back({"S1", {geq({0, 0}, {1, 0})}});
  p.stakeholders.push_back({"S2", {geq({0, 0}, {0, 1})}});
  return p;
}

}  // namespace

TEST_CASE("stakeholder sets must be non-trivial") {
  Profile p = nonexistence_fixture();
  p.stakeholders[1].statements = {geq({1, 1}, {0, 0})};  // tautology
  CHECK_THROWS_AS(exists_mg_hier(p), InputError);
  p.stakeholders[1].statements = {gt({0, 0}, {1, 1})};  // contradiction
  CHECK_THROWS_AS(construct_mgs(p, LanguageKind::kCandidates), InputError);
  CHECK_THROWS_AS(check_postulates({}, p, false), InputError);
}

TEST_CASE("postulates on the non-uniqueness fixture") {
  const Profile nu = nonuniqueness_fixture();
  const auto one = check_postulates({gt(kGamma, kDelta)}, nu, false);
  CHECK(one.p1.verdict == Verdict::kPass);
  CHECK(one.p2.verdict == Verdict::kPass);
  CHECK(one.p3.verdict == Verdict::kPass);
  CHECK(one.p4.verdict == Verdict::kPass);
  CHECK(one.p5.verdict == Verdict::kNotChecked);

  const auto both = check_postulates({gt(kGamma, kDelta), gt(kDelta, kGamma)}, nu, false);
  CHECK(both.p1.verdict == Verdict::kFail);

  // A stakeholder's own statement is incompatible with the other side.
  const auto own = check_postulates({gt({1, 0, 0, 0}, {0, 1, 0, 0})}, nu, true);
  CHECK(own.p3.verdict == Verdict::kFail);
  CHECK(own.p3.offending.size() == 1);
  CHECK(own.p4.verdict == Verdict::kPass);

  // Not entailed by either stakeholder.
  const auto loose = check_postulates({gt({1, 0, 0, 0}, {0, 0, 0, 1})}, nu, false);
  CHECK(loose.p4.verdict == Verdict::kFail);

  // {γ > δ} alone is not maximal: the grounds built on it entail more.
  const auto p5 = check_postulates({gt(kGamma, kDelta)}, nu, true);
  CHECK(p5.p5.verdict == Verdict::kFail);
  CHECK_FALSE(p5.p5.offending.empty());
}

TEST_CASE("consistent union passes every postulate") {
  Rng rng(31);
  int done = 0;
  while (done < 30) {
    const auto space = VariableSpace::uniform(concord::testing::var_names(pick(rng, 1, 3)), 0, 2);
    const auto mc = done % 2 ? ModelClass::kLexicographic : ModelClass::kHierarchical;
    auto p = random_profile(rng, space, kSum, mc, 2);
    if (!p || !Reasoner(space, kSum, mc).consistent(p->union_statements()).consistent) continue;
    const auto rep = check_postulates(p->union_statements(), *p, true);
    CHECK(rep.passes());
    CHECK(rep.p5.verdict == Verdict::kPass);
    const auto mg = construct_mgs(*p, mc == ModelClass::kLexicographic ? LanguageKind::kBinary
                                                                       : LanguageKind::kFull);
    REQUIRE(mg.grounds.size() == 1);
    CHECK(mg.grounds[0] == p->union_statements());
    ++done;
  }
}

TEST_CASE("lexicographic candidates") {
  const auto space = VariableSpace::binary({"x", "y", "z"});
  const auto c = lex_candidates(space);
  CHECK(c.size() == 6);
  CHECK(c[0] == geq({0, 1, 1}, {1, 0, 0}));
  CHECK(c[1] == gt({0, 1, 1}, {0, 0, 0}));
  for (const auto& s : c)
    CHECK(classify(s, space, kSum, ModelClass::kLexicographic) == Triviality::kNonTrivial);
}

TEST_CASE("lexicographic existence") {
  SUBCASE("consistent union") {
    Profile p{VariableSpace::binary({"x", "y"}), kSum, ModelClass::kLexicographic, {}};
    p.stakeholders.push_back({"S1", {gt({1, 0}, {0, 1})}});
    p.stakeholders.push_back({"S2", {gt({1, 1}, {0, 1})}});
    const auto res = exists_mg_lex(p);
    CHECK(res.exists);
    CHECK(res.union_consistent);
    CHECK(res.witness == p.union_statements());
  }
  SUBCASE("engineered profile without middle ground") {
    const Profile p = engineered_lex_profile();
    const auto res = exists_mg_lex(p);
    CHECK_FALSE(res.exists);
    CHECK(res.pair_checks == 2 * 2 * 2);
    CHECK(res.entailment_checks == 2 * 2 * 2);
    CHECK(oracle::brute_mgs(p, binary_language(p.space, kSum)).empty());
    CHECK(construct_mgs(p, LanguageKind::kBinary).empty());
  }
  SUBCASE("one stakeholder") {
    Profile p{VariableSpace::uniform({"a", "b", "c"}, 0, 3), kSum, ModelClass::kLexicographic, {}};
    p.stakeholders.push_back({"S", {gt({1, 2, 0}, {3, 1, 0}), geq({0, 0, 3}, {0, 0, 1})}});
    CHECK(exists_mg_lex(p).exists);
  }
  SUBCASE("opposed stakeholders") {
    Profile p{VariableSpace::uniform({"adult", "child", "dog"}, 0, 5), kSum,
              ModelClass::kLexicographic, moral_machine_fixture().stakeholders};
    const auto res = exists_mg_lex(p);
    CHECK_FALSE(res.union_consistent);
    CHECK(res.exists);
    for (const auto& s : res.passing) {
      const auto rep = check_postulates({s}, p, false);
      CHECK(rep.p3.verdict == Verdict::kPass);
      CHECK(rep.p4.verdict == Verdict::kPass);
    }
  }
}

TEST_CASE("hierarchical candidates") {
  const Profile ne = nonexistence_fixture();
  const Alternative a{1, 0}, b{0, 1}, g{1, 1}, d{0, 0};
  // The 12 non-trivial statements; α ≤ β is written β ≥ α.
  const StatementSet expected = normalize({gt(g, a), geq(a, g), gt(g, b), geq(b, g), gt(a, b),
                                           geq(a, b), gt(b, a), geq(b, a), gt(a, d), geq(d, a),
                                           gt(b, d), geq(d, b)});
  CHECK(hier_candidates(ne.space, ne.combiner) == expected);
  const auto reduced = hier_candidates(ne.space, ne.combiner, {}, true);
  CHECK(reduced.size() == 10);
  for (const auto& s : reduced) CHECK(contains(expected, s));

  // One binary variable: every one of the 8 statements is trivial.
  const auto one = VariableSpace::binary({"x"});
  for (Value l : {0, 1})
    for (Value r : {0, 1})
      for (auto rel : {Relation::kStrict, Relation::kNonStrict})
        CHECK(classify(Statement{Alternative{l}, Alternative{r}, rel}, one, kSum) !=
              Triviality::kNonTrivial);
  CHECK(hier_candidates(one, kSum).empty());

  Limits tight;
  tight.max_alternative_pairs = 100;
  CHECK_THROWS_AS(hier_candidates(VariableSpace::uniform({"a", "b"}, 0, 9), kSum, tight),
                  CapacityError);
}

TEST_CASE("hierarchical existence") {
  CHECK_FALSE(exists_mg_hier(nonexistence_fixture()).exists);

  const auto nu = exists_mg_hier(nonuniqueness_fixture());
  REQUIRE(nu.exists);
  CHECK(contains(nu.passing, gt(kGamma, kDelta)));
  CHECK(contains(nu.passing, gt(kDelta, kGamma)));
  REQUIRE(nu.witness.size() == 1);
  CHECK(nu.witness[0].strict());

  Profile p = nonexistence_fixture();
  p.stakeholders[1].statements = {geq({1, 0}, {0, 0})};
  p.stakeholders[1].statements = {geq({1, 0}, {0, 1})};
  const auto res = exists_mg_hier(p);
  CHECK(res.exists);
  CHECK(res.union_consistent);
}

TEST_CASE("strict candidates carry their non-strict versions") {
  Rng rng(37);
  int done = 0;
  while (done < 40) {
    const auto space = VariableSpace::uniform(concord::testing::var_names(pick(rng, 2, 3)), 0, 1);
    auto p = random_profile(rng, space, kSum, ModelClass::kHierarchical, 2);
    if (!p) continue;
    const auto res = exists_mg_hier(*p);
    if (res.union_consistent) continue;
    for (const auto& s : res.passing) {
      if (!s.strict()) continue;
      const Statement weak = geq(s.left, s.right);
      if (classify(weak, space, kSum) == Triviality::kNonTrivial) CHECK(contains(res.passing, weak));
    }
    ++done;
  }
}

TEST_CASE("construct on the fixtures") {
  const Profile nu = nonuniqueness_fixture();
  const auto mg = construct_mgs(nu, LanguageKind::kCandidates);
  CHECK(mg.grounds.size() >= 2);
  bool with_gd = false, with_dg = false;
  Reasoner r(nu.space, nu.combiner, nu.model_class);
  for (const auto& g : mg.grounds) {
    const bool gd = contains(g, gt(kGamma, kDelta)), dg = contains(g, gt(kDelta, kGamma));
    CHECK_FALSE((gd && dg));
    with_gd |= gd;
    with_dg |= dg;
    CHECK(check_postulates(g, nu, false).passes_p1_to_p4());
  }
  CHECK(with_gd);
  CHECK(with_dg);
  for (std::size_t i = 0; i < mg.grounds.size(); ++i)
    for (std::size_t j = i + 1; j < mg.grounds.size(); ++j) {
      auto both = mg.grounds[i];
      both.insert(both.end(), mg.grounds[j].begin(), mg.grounds[j].end());
      CHECK_FALSE(r.consistent(both).consistent);
    }

  CHECK(construct_mgs(nonexistence_fixture(), LanguageKind::kCandidates).empty());
  CHECK(construct_mgs(nonexistence_fixture(), LanguageKind::kFull).empty());
  CHECK(construct_mgs(nonexistence_fixture(), LanguageKind::kFull).exhaustive);
  CHECK_THROWS_AS(construct_mgs(nonexistence_fixture(), LanguageKind::kBinary), InputError);
}

TEST_CASE("parallel and serial construction agree") {
  const Profile nu = nonuniqueness_fixture();
  Limits serial;
  serial.parallel = false;
  ConstructStats a, b;
  const auto x = construct_mgs(nu, LanguageKind::kCandidates, {}, &a);
  const auto y = construct_mgs(nu, LanguageKind::kCandidates, serial, &b);
  CHECK(x.grounds == y.grounds);
  CHECK(a.psi4 == b.psi4);
  CHECK(a.nodes == b.nodes);
}

TEST_CASE("language caps") {
  Limits small;
  small.max_language = 100;
  const Profile mm = moral_machine_fixture();
  CHECK_THROWS_AS(full_language(mm.space, small), CapacityError);
  CHECK_THROWS_AS(construct_mgs(mm, LanguageKind::kFull, small), CapacityError);
  CHECK(full_language(VariableSpace::binary({"x", "y"})).size() == 24);
  CHECK(binary_language(VariableSpace::uniform({"x", "y"}, 3, 5), kSum).front().left ==
        Alternative{3, 3});
}

TEST_CASE("grounds are sound and maximal") {
  Rng rng(41);
  int done = 0;
  while (done < 40) {
    const bool lex = done % 2;
    const auto mc = lex ? ModelClass::kLexicographic : ModelClass::kHierarchical;
    const auto space = VariableSpace::uniform(concord::testing::var_names(pick(rng, 2, 3)), 0, 1);
    auto p = random_profile(rng, space, kSum, mc, 2);
    if (!p) continue;
    Reasoner r(space, kSum, mc);
    if (r.consistent(p->union_statements()).consistent) continue;
    const auto lang = build_language(*p, lex ? LanguageKind::kBinary : LanguageKind::kFull);
    const auto mg = construct_mgs(*p, lang);
    const auto u = oracle::ModelUniverse::of(*p);
    std::set<oracle::ModelSet> brute;
    for (const auto& g : oracle::brute_mgs(*p, lang).grounds) brute.insert(u.models_of(g));
    for (const auto& g : mg.grounds) {
      CHECK(check_postulates(g, *p, false).passes_p1_to_p4());
      // Every constructed ground is a middle ground of the scanned language.
      CHECK(brute.count(u.models_of(g)) == 1);
    }
    if (lex) CHECK(exists_mg_lex(*p).exists == !mg.empty());
    ++done;
  }
}
