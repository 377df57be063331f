#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "concord/errors.hpp"
#include "concord/gadgets.hpp"
#include "concord/models.hpp"
#include "concord/oracle.hpp"
#include "support.hpp"

using namespace concord;
using concord::testing::Levels;

namespace {

const Combiner kSum(Combiner::Kind::kSum);
const Alternative kAlpha{1, 4, 0}, kBeta{2, 3, 3}, kGamma{1, 3, 5};
enum { kAdult, kChild, kDog };

std::vector<Alternative> all_alternatives(const VariableSpace& s) {
  std::vector<Alternative> out{Alternative(std::vector<Value>{})};
  for (std::size_t v = 0; v < s.size(); ++v) {
    std::vector<Alternative> next;
    for (const auto& a : out)
      for (Value x : s.domain(v)) {
        std::vector<Value> vals(a.values().begin(), a.values().end());
        vals.push_back(x);
        next.emplace_back(std::move(vals));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("model construction") {
  CHECK_THROWS_AS(HierarchicalModel({}), InputError);
  CHECK_THROWS_AS(HierarchicalModel(Levels{{}}), InputError);
  CHECK_THROWS_AS(LexicographicModel({}), InputError);
  const HierarchicalModel rep({{0, 1}, {1}, {0, 1}});
  CHECK(rep.depth() == 3);
  CHECK(LexicographicModel({2, 0, 2, 1, 0}).order() == std::vector<std::size_t>{2, 0, 1});
  CHECK(HierarchicalModel::from_masks({3, 4}) == HierarchicalModel({{0, 1}, {2}}));
}

TEST_CASE("level values") {
  CHECK(level_value({kAdult, kChild}, kAlpha, kSum) == 5);
  CHECK(level_value({kDog}, kGamma, kSum) == 5);
  const Combiner land(Combiner::Kind::kAnd);
  CHECK(level_value({0, 1}, Alternative{1, 1}, land) == 1);
  CHECK(level_value({0, 1}, Alternative{0, 0}, land) == 0);
  CHECK_THROWS_AS(level_value({0}, Alternative{7, 0}, tie_combiner()), DomainMismatch);
}

TEST_CASE("compare") {
  const HierarchicalModel humans_then_children({{kAdult, kChild}, {kChild}});
  CHECK(compare(humans_then_children, kAlpha, kGamma, kSum) == Comparison::kGreater);
  CHECK(compare(humans_then_children, kAlpha, kBeta, kSum) == Comparison::kGreater);
  CHECK(compare(humans_then_children, kAlpha, kAlpha, kSum) == Comparison::kEquivalent);
  const HierarchicalModel humans_then_dogs({{kAdult, kChild}, {kDog}});
  CHECK(compare(humans_then_dogs, kBeta, kAlpha, kSum) == Comparison::kGreater);
  CHECK(compare(humans_then_dogs, kAlpha, kBeta, kSum) == Comparison::kLess);
  CHECK(compare(LexicographicModel({kDog, kAdult}), kBeta, kAlpha, kSum) ==
        Comparison::kGreater);
}

TEST_CASE("satisfaction") {
  const HierarchicalModel dog(Levels{{kDog}});
  CHECK(satisfies(dog, gt(kBeta, kAlpha), kSum));
  CHECK_FALSE(satisfies(dog, gt(kAlpha, kGamma), kSum));
  CHECK(satisfies(dog, geq(kAlpha, kAlpha), kSum));
  CHECK_FALSE(satisfies(dog, gt(kAlpha, kAlpha), kSum));

  const Profile ne = nonexistence_fixture();
  const StatementSet phi1 = ne.stakeholders[0].statements;
  CHECK(satisfies_set(HierarchicalModel(Levels{{0}}), phi1, ne.combiner));
  CHECK_FALSE(satisfies_set(HierarchicalModel(Levels{{1}}), phi1, ne.combiner));
  CHECK(satisfies_set(HierarchicalModel(Levels{{1}}), StatementSet{}, ne.combiner));
}

TEST_CASE("induced order is a total preorder") {
  for (std::size_t m = 1; m <= 3; ++m)
    for (Value hi : {1, 2}) {
      const auto space = VariableSpace::uniform(concord::testing::var_names(m), 0, hi);
      const auto alts = all_alternatives(space);
      auto e = oracle::enumerate_hier_models(space, std::min<std::size_t>(2, (1u << m) - 1));
      while (auto pi = e.next())
        for (const auto& a : alts)
          for (const auto& b : alts) {
            const auto ab = compare(*pi, a, b, kSum);
            CHECK(static_cast<int>(ab) == -static_cast<int>(compare(*pi, b, a, kSum)));
            for (const auto& c : alts) {
              const auto bc = compare(*pi, b, c, kSum);
              if (ab != Comparison::kLess && bc != Comparison::kLess)
                CHECK(compare(*pi, a, c, kSum) != Comparison::kLess);
            }
          }
    }
}

TEST_CASE("prefix decisiveness and no-op levels") {
  concord::testing::Rng rng(3);
  const auto space = VariableSpace::uniform(concord::testing::var_names(3), 0, 2);
  auto e = oracle::enumerate_hier_models(space, 2);
  std::vector<HierarchicalModel> models;
  while (auto pi = e.next()) models.push_back(*pi);
  for (int trial = 0; trial < 300; ++trial) {
    const auto& pi = models[concord::testing::pick(rng, 0, models.size() - 1)];
    const auto a = concord::testing::random_alternative(rng, space);
    const auto b = concord::testing::random_alternative(rng, space);
    const auto base = compare(pi, a, b, kSum);
    auto levels = pi.levels();
    levels.push_back({concord::testing::pick(rng, 0, 2)});
    const auto extended = compare(HierarchicalModel(levels), a, b, kSum);
    if (base != Comparison::kEquivalent) CHECK(extended == base);

    // Drop a level at which every statement ties.
    const auto phi = concord::testing::random_set(rng, space, 3);
    const auto& lv = pi.levels();
    for (std::size_t k = 0; k < lv.size() && lv.size() > 1; ++k) {
      bool all_tied = true;
      for (const auto& s : phi)
        all_tied &= level_value(lv[k], s.left, kSum) == level_value(lv[k], s.right, kSum);
      if (!all_tied) continue;
      auto shorter = lv;
      shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(k));
      CHECK(satisfies_set(pi, phi, kSum) == satisfies_set(HierarchicalModel(shorter), phi, kSum));
    }
  }
}

TEST_CASE("render and parse models") {
  const auto space = VariableSpace::uniform({"adult", "child", "dog"}, 0, 5);
  const HierarchicalModel pi({{kAdult, kChild}, {kChild}});
  CHECK(render(pi, space) == "({adult,child},{child})");
  CHECK(render(LexicographicModel({kDog, kAdult}), space) == "({dog},{adult})");
  CHECK(parse_model("({adult,child},{child})", space) == pi);
  CHECK(parse_model(" ( {child , adult} , {child} ) ", space) == pi);
  CHECK_THROWS_AS(parse_model("({cat})", space), InputError);
  CHECK_THROWS_AS(parse_model("()", space), InputError);
  CHECK_THROWS_AS(parse_model("({adult}", space), InputError);
}
