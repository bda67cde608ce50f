#pragma once

#include <optional>
#include <vector>

#include "torfac/lattice.hpp"

namespace torfac::detail {

// Exact phase-one simplex with Bland's rule: returns some x >= 0 with
// A x = b, or nullopt if none exists. A is given by rows.
std::optional<RatVec> find_nonnegative_solution(const std::vector<RatVec>& a, const RatVec& b);

}  // namespace torfac::detail
