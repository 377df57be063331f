#pragma once

// Random instance generators shared by the test binaries.

#include <random>
#include <string>
#include <vector>

#include "concord/domain.hpp"

namespace concord::testing {

using Rng = std::mt19937_64;
using Levels = std::vector<std::vector<std::size_t>>;

inline std::vector<std::string> var_names(std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

inline Alternative random_alternative(Rng& rng, const VariableSpace& space) {
  std::vector<Value> vals;
  for (std::size_t v = 0; v < space.size(); ++v) {
    const auto& d = space.domain(v);
    vals.push_back(d[std::uniform_int_distribution<std::size_t>(0, d.size() - 1)(rng)]);
  }
  return Alternative(std::move(vals));
}

inline Statement random_statement(Rng& rng, const VariableSpace& space) {
  Statement s{random_alternative(rng, space), random_alternative(rng, space),
              std::bernoulli_distribution(0.5)(rng) ? Relation::kStrict
                                                    : Relation::kNonStrict};
  return s;
}

inline StatementSet random_set(Rng& rng, const VariableSpace& space, std::size_t n) {
  StatementSet out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_statement(rng, space));
  return out;
}

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace concord::testing
