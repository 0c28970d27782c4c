#pragma once

#include <vector>

namespace synthmot::metrics {

/// Cost magnitude treated as "pair not allowed". Any sum of real costs stays
/// far below a single forbidden entry, so minimizing total cost first
/// maximizes the number of allowed matches.
inline constexpr double kForbidden = 1e9;

/// Minimum-cost one-to-one assignment on a rows x cols cost matrix
/// (row-major). Returns the assigned column per row, -1 for rows left over
/// when rows > cols. Potentials method, O(n^2 m).
std::vector<int> solve_assignment(const std::vector<double>& cost, int rows, int cols);

}  // namespace synthmot::metrics
