#pragma once

#include <optional>
#include <vector>

#include "core/rational.hpp"

namespace nsb {

// Finds x >= 0 with A x = b, all arithmetic exact. Returns nullopt iff the
// system is infeasible. Phase-one simplex over the artificial-variable
// tableau with Bland's rule, so cycling is impossible; redundant rows are
// fine. Sized for the small systems here (tens of rows/columns).
std::optional<std::vector<Rat>> solve_feasible(const std::vector<std::vector<Rat>>& A,
                                               const std::vector<Rat>& b);

}  // namespace nsb
