#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "concord/errors.hpp"
#include "concord/gadgets.hpp"
#include "concord/midground.hpp"
#include "concord/oracle.hpp"
#include "concord/reasoner.hpp"
#include "support.hpp"

using namespace concord;
using concord::testing::pick;
using concord::testing::Rng;

namespace {

bool gadget_consistent(const Profile& p) {
  return is_consistent_hier(p.union_statements(), p.space, p.combiner).consistent;
}

}  // namespace

TEST_CASE("gadget shape") {
  const Profile g = subset_sum_gadget({3, 5, 7}, 8);
  CHECK(g.space.size() == 4);
  CHECK(g.space.names() == std::vector<std::string>{"v3", "v5", "v7", "vT"});
  CHECK(g.space.domain(3).back() == 8);
  REQUIRE(g.stakeholders.size() == 1);
  CHECK(g.stakeholders[0].statements.size() == 3);
  CHECK(g.model_class == ModelClass::kHierarchical);

  const Profile rep = subset_sum_gadget({2, 2}, 4);
  CHECK(rep.space.names() == std::vector<std::string>{"v2", "v2_2", "vT"});

  CHECK_THROWS_AS(subset_sum_gadget({}, 3), InputError);
  CHECK_THROWS_AS(subset_sum_gadget({0, 2}, 3), InputError);
  CHECK_THROWS_AS(subset_sum_gadget({2}, 0), InputError);
}

TEST_CASE("gadget examples") {
  CHECK(gadget_consistent(subset_sum_gadget({3, 5, 7}, 8)));
  CHECK_FALSE(gadget_consistent(subset_sum_gadget({2, 4}, 5)));
  CHECK(gadget_consistent(subset_sum_gadget({4}, 4)));
  CHECK_FALSE(gadget_consistent(subset_sum_gadget({4}, 3)));
}

TEST_CASE("gadget consistency matches subset sum") {
  Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::int64_t> s(pick(rng, 1, 8));
    for (auto& a : s) a = static_cast<std::int64_t>(pick(rng, 1, 9));
    const auto t = static_cast<std::int64_t>(pick(rng, 1, 25));
    const Profile g = subset_sum_gadget(s, t);
    CHECK(g.space.size() == s.size() + 1);
    CHECK(gadget_consistent(g) == oracle::subset_sum_brute(s, t));
  }
}

TEST_CASE("fixtures are well formed") {
  for (const Profile& p : {nonuniqueness_fixture(), nonexistence_fixture(), moral_machine_fixture()}) {
    CHECK_NOTHROW(p.validate());
    Reasoner r(p.space, p.combiner, p.model_class);
    CHECK_NOTHROW(require_non_trivial(p, r));
    CHECK_FALSE(r.consistent(p.union_statements()).consistent);
  }
}
