#pragma once

#include <optional>
#include <vector>

namespace probkin::detail {

// Dense two-phase simplex for small problems of the form
//   maximize c·y  subject to  A y = b,  y ≥ 0.
// Returns nullopt when the system is infeasible. The caller guarantees the
// problem is bounded (every use here includes the row Σ y = 1).
// Bland's rule is used throughout, so there is no cycling.
std::optional<double> lp_maximize(const std::vector<std::vector<double>>& a,
                                  const std::vector<double>& b,
                                  const std::vector<double>& c);

}  // namespace probkin::detail
