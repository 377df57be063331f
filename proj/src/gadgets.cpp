#include "concord/gadgets.hpp"

#include <map>
#include <string>

#include "concord/errors.hpp"

namespace concord {

Profile subset_sum_gadget(const std::vector<std::int64_t>& s, std::int64_t target) {
  if (s.empty()) throw InputError("subset-sum gadget: empty multiset");
  if (target < 1) throw InputError("subset-sum gadget: target must be positive");
  std::vector<std::string> names;
  std::vector<std::vector<Value>> domains;
  std::map<std::int64_t, int> seen;
  auto range = [](std::int64_t hi) {
    std::vector<Value> d;
    for (std::int64_t v = 0; v <= hi; ++v) d.push_back(v);
    return d;
  };
  for (auto a : s) {
    if (a < 1) throw InputError("subset-sum gadget: values must be positive");
    const int k = ++seen[a];
    names.push_back("v" + std::to_string(a) + (k > 1 ? "_" + std::to_string(k) : ""));
    domains.push_back(range(a));
  }
  names.push_back("vT");
  domains.push_back(range(target));

  const std::size_t m = names.size();
  std::vector<Value> at(m, 0), bt(m, 0), as(m, 0), bs(m, 0);
  at[m - 1] = 1;
  for (std::size_t i = 0; i + 1 < m; ++i) as[i] = s[i];
  bs[m - 1] = target;
  Profile p{VariableSpace(std::move(names), std::move(domains)),
            Combiner(Combiner::Kind::kSum), ModelClass::kHierarchical, {}};
  p.stakeholders.push_back(
      {"S", {gt(Alternative(at), Alternative(bt)), geq(Alternative(as), Alternative(bs)),
             geq(Alternative(bs), Alternative(as))}});
  p.validate();
  return p;
}

Combiner tie_combiner() {
  return Combiner::table({0, 1, 2}, {{2, 2, 2}, {2, 2, 2}, {2, 2, 2}});
}

Profile nonuniqueness_fixture() {
  const Alternative a{1, 0, 0, 0}, b{0, 1, 0, 0}, a2{0, 0, 1, 0}, b2{0, 0, 0, 1};
  Profile p{VariableSpace::binary({"x", "y", "z", "w"}), tie_combiner(),
            ModelClass::kHierarchical, {}};
  p.stakeholders.push_back({"S1", {gt(a, b), gt(a2, b2)}});
  p.stakeholders.push_back({"S2", {gt(b, a), gt(b2, a2)}});
  return p;
}

Profile nonexistence_fixture() {
  const Alternative a{1, 0}, b{0, 1}, g{1, 1};
  Profile p{VariableSpace::binary({"x", "y"}), Combiner(Combiner::Kind::kAnd),
            ModelClass::kHierarchical, {}};
  p.stakeholders.push_back({"S1", {geq(a, g)}});
  p.stakeholders.push_back({"S2", {geq(b, g)}});
  return p;
}

Profile moral_machine_fixture() {
  const Alternative a{1, 4, 0}, b{2, 3, 3};
  Profile p{VariableSpace::uniform({"adult", "child", "dog"}, 0, 5),
            Combiner(Combiner::Kind::kSum), ModelClass::kHierarchical, {}};
  p.stakeholders.push_back({"S1", {gt(a, b)}});
  p.stakeholders.push_back({"S2", {gt(b, a)}});
  return p;
}

}  // namespace concord
