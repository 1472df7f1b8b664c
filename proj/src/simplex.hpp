#pragma once

// Exact feasibility test for mixed strict/non-strict integer-coefficient rows.
// Internal to the polyhedra kernel.

#include "fourier_motzkin.hpp"

namespace cha::detail {

// Is there a rational point satisfying every row? Strict rows are handled by
// an infinitesimal offset on their bounds.
bool feasible(Dim dimension, const std::vector<Row>& rows);
bool feasible(Dim dimension, const std::vector<const Row*>& rows);

}  // namespace cha::detail
