#pragma once

#include "mbm/arith.hpp"

#include <optional>

namespace mbm::lp {

/// Exact strict feasibility of a homogeneous system: returns u with
/// rows[i] . u > 0 for every i, or nullopt when no such u exists.
/// Decided by a dense rational simplex (Bland's rule) maximizing the
/// common slack over the box |u_j| <= 1.
std::optional<RationalVector> strict_solution(const RatMatrix& rows, std::size_t dim);

}  // namespace mbm::lp
