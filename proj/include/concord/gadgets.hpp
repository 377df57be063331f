#pragma once

#include <cstdint>
#include <vector>

#include "concord/domain.hpp"

namespace concord {

/// Hierarchical profile that is consistent iff some sub-multiset of `s`
/// sums to `target`. Variables v<a> (v<a>_<k> for the k-th occurrence, k >= 2)
/// with domain 0..a, plus vT with domain 0..target; sum combiner; one
/// stakeholder holding
///   α_T > β_T,  α_Σ ≥ β_Σ,  β_Σ ≥ α_Σ
/// where α_T marks vT, β_T is all zero, α_Σ holds each a, β_Σ holds T on vT.
Profile subset_sum_gadget(const std::vector<std::int64_t>& s, std::int64_t target);

/// x,y,z,w binary; every fold of two or more values ties.
/// S1 = {α > β, α' > β'}, S2 = {β > α, β' > α'}.
Profile nonuniqueness_fixture();

/// x,y binary under `and`. S1 = {α ≥ γ}, S2 = {β ≥ γ} with α=(1,0),
/// β=(0,1), γ=(1,1).
Profile nonexistence_fixture();

/// adult, child, dog in 0..5 under sum; S1 holds (1,4,0) > (2,3,3) and S2
/// the reverse.
Profile moral_machine_fixture();

/// Combiner on {0,1,2} mapping every pair to 2, so singleton levels keep
/// their 0/1 values and any larger level ties.
Combiner tie_combiner();

}  // namespace concord
