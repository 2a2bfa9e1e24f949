#pragma once

#include "polycomm/linalg_exact.hpp"
#include "polycomm/rational.hpp"

namespace polycomm {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rat value;
    VecQ x;
};

// maximize c.x subject to A x (rel) b and x >= 0, where rel[i] is -1 for <=,
// 0 for =, +1 for >=. Exact two-phase tableau simplex with Bland's rule, so
// the run is deterministic and always terminates.
LpResult lp_maximize(const MatQ& A, const std::vector<int>& rel, const VecQ& b, const VecQ& c);

}  // namespace polycomm
