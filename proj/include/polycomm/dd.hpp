#pragma once

#include "polycomm/linalg_exact.hpp"
#include "polycomm/rational.hpp"

namespace polycomm {

// Minimal generating description of the cone {x : row · x >= 0 for all rows}:
// the cone equals span(lineality) + nonnegative combinations of rays, and the
// rays are exactly its extreme rays modulo the lineality space.
struct ConeDescription {
    MatQ lineality;
    MatQ rays;
};

// Incremental double-description conversion. Rows are inserted in the order
// given (callers sort for determinism); each ray is kept as a primitive
// integer vector. Adjacency of rays is decided by the algebraic rank of the
// constraints tight at both, with cheap combinatorial prefilters.
ConeDescription cone_rays(const MatQ& rows, int dim);

}  // namespace polycomm
