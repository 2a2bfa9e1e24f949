#pragma once

#include <optional>
#include <vector>

#include "polycomm/rational.hpp"

namespace polycomm {

// Row-major dense rational matrix, sized by its rows.
using MatQ = std::vector<VecQ>;

int rank_q(MatQ m);

// Reduced row echelon form in place; returns the pivot column of each
// surviving row (rows are compacted, zero rows dropped).
std::vector<int> rref_q(MatQ& m);

// Basis of {x : m x = 0}; each basis vector has a unit in one free column.
MatQ kernel_basis(const MatQ& m, int cols);

// One solution of m x = rhs, or nullopt when inconsistent.
std::optional<VecQ> solve_particular(const MatQ& m, const VecQ& rhs);

}  // namespace polycomm
