#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polycomm/linalg_exact.hpp"
#include "polycomm/rational.hpp"

namespace polycomm {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Infeasible : GeometryError {
    using GeometryError::GeometryError;
};
struct Unbounded : GeometryError {
    using GeometryError::GeometryError;
};
struct DimensionMismatch : GeometryError {
    using GeometryError::GeometryError;
};
struct InvalidSymmetry : GeometryError {
    using GeometryError::GeometryError;
};

// a · x <= b rows plus c · x = d rows over Q^dim.
struct HPolyhedron {
    int dim = 0;
    MatQ ineq_lhs;   // a rows
    VecQ ineq_rhs;   // b
    MatQ eq_lhs;     // c rows
    VecQ eq_rhs;     // d

    void add_ineq(VecQ a, Rat b);
    void add_eq(VecQ c, Rat d);
};

struct VPolytope {
    int dim = 0;
    MatQ vertices;  // lex-sorted, pairwise distinct
};

// Integer facet row: coeffs · x <= bound, reduced modulo the affine hull and
// scaled to coprime integers. Equalities reuse the same container with the
// reading coeffs · x = bound.
struct CanonicalFacet {
    VecQ coeffs;
    Rat bound;

    bool operator==(const CanonicalFacet& o) const { return coeffs == o.coeffs && bound == o.bound; }
};

bool facet_lex_less(const CanonicalFacet& a, const CanonicalFacet& b);

std::string facet_key(const CanonicalFacet& f);

struct FacetSystem {
    std::vector<CanonicalFacet> equalities;  // affine hull, sign-fixed
    std::vector<CanonicalFacet> facets;      // lex-sorted
};

// Permutation of coordinate indices; w[perm[i]] = v[i].
struct CoordinatePermutation {
    std::vector<int> perm;

    VecQ apply(const VecQ& v) const;
    CoordinatePermutation inverse() const;
    // Registration check: the permutation must map the vertex set onto itself.
    void validate(const VPolytope& v) const;
};

VPolytope h_to_v(const HPolyhedron& h);

FacetSystem v_to_facets(const VPolytope& v);

// Reduces (coeffs, bound) modulo the span of the equality rows (pivot
// coordinates eliminated in index order) and scales to coprime integers.
// Inequalities keep their orientation; pass sign_fix=true for equalities.
CanonicalFacet canonicalize_row(VecQ coeffs, Rat bound, const std::vector<CanonicalFacet>& equalities,
                                bool sign_fix = false);

struct FacetCheck {
    bool valid = false;
    int tight_count = 0;
    int tight_rank = 0;  // number of affinely independent tight vertices
    bool is_facet = false;
};

// Independent oracle: valid iff every vertex satisfies f; f is a facet iff it
// is valid and tight on affdim(P) affinely independent vertices.
FacetCheck validate_facet(const VPolytope& v, const CanonicalFacet& f);

int affine_dimension(const VPolytope& v);

struct FacetOrbit {
    CanonicalFacet representative;  // lexicographically least member
    int orbit_size = 0;
    std::vector<int> member_indices;  // indices into the input facet list
};

// Partitions facets into orbits of the group generated by the permutations.
// Facets are compared modulo the affine hull, so the equality system of the
// polytope must be supplied when there is one.
std::vector<FacetOrbit> orbit_classify(const std::vector<CanonicalFacet>& facets,
                                       const std::vector<CoordinatePermutation>& generators,
                                       const std::vector<CanonicalFacet>& equalities = {},
                                       const VPolytope* validate_against = nullptr);

// JSON interchange ({"dim", "inequalities", "equalities"} / {"vertices"}),
// entries as exact "p/q" strings.
std::string h_to_json(const HPolyhedron& h);
HPolyhedron h_from_json(const std::string& text);
std::string v_to_json(const VPolytope& v);
VPolytope v_from_json(const std::string& text);

}  // namespace polycomm
