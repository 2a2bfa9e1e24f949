#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "polycomm/linalg_exact.hpp"
#include "polycomm/polytope.hpp"
#include "polycomm/scenario.hpp"

using namespace polycomm;

namespace {

HPolyhedron unit_square() {
    HPolyhedron h;
    h.dim = 2;
    h.add_ineq({Rat(-1), Rat(0)}, Rat(0));
    h.add_ineq({Rat(1), Rat(0)}, Rat(1));
    h.add_ineq({Rat(0), Rat(-1)}, Rat(0));
    h.add_ineq({Rat(0), Rat(1)}, Rat(1));
    return h;
}

// Independent vertex oracle: solve every square subsystem of tight rows and
// keep the feasible basic solutions.
MatQ oracle_vertices(const HPolyhedron& h) {
    MatQ rows = h.eq_lhs;
    VecQ rhs = h.eq_rhs;
    for (std::size_t i = 0; i < h.ineq_lhs.size(); ++i) {
        rows.push_back(h.ineq_lhs[i]);
        rhs.push_back(h.ineq_rhs[i]);
    }
    int n = h.dim, m = static_cast<int>(rows.size());
    std::set<VecQ, VecQLess> found;
    std::vector<int> pick(n);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == n) {
            MatQ sys;
            VecQ sysb;
            for (int k : pick) {
                sys.push_back(rows[k]);
                sysb.push_back(rhs[k]);
            }
            if (rank_q(sys) < n) return;
            auto x = solve_particular(sys, sysb);
            if (!x) return;
            for (std::size_t i = 0; i < h.eq_lhs.size(); ++i)
                if (dot(h.eq_lhs[i], *x) != h.eq_rhs[i]) return;
            for (std::size_t i = 0; i < h.ineq_lhs.size(); ++i)
                if (dot(h.ineq_lhs[i], *x) > h.ineq_rhs[i]) return;
            found.insert(*x);
            return;
        }
        for (int k = start; k < m; ++k) {
            pick[depth] = k;
            rec(k + 1, depth + 1);
        }
    };
    rec(0, 0);
    return MatQ(found.begin(), found.end());
}

bool contains_vertex(const VPolytope& v, const VecQ& x) {
    return std::find(v.vertices.begin(), v.vertices.end(), x) != v.vertices.end();
}

}  // namespace

TEST_CASE("h_to_v on the unit square") {
    VPolytope v = h_to_v(unit_square());
    REQUIRE(v.vertices.size() == 4);
    CHECK(contains_vertex(v, {Rat(0), Rat(0)}));
    CHECK(contains_vertex(v, {Rat(0), Rat(1)}));
    CHECK(contains_vertex(v, {Rat(1), Rat(0)}));
    CHECK(contains_vertex(v, {Rat(1), Rat(1)}));
}

TEST_CASE("h_to_v on the standard 2-simplex") {
    HPolyhedron h;
    h.dim = 3;
    for (int i = 0; i < 3; ++i) {
        VecQ row(3, Rat(0));
        row[i] = -1;
        h.add_ineq(std::move(row), Rat(0));
    }
    h.add_eq({Rat(1), Rat(1), Rat(1)}, Rat(1));
    VPolytope v = h_to_v(h);
    REQUIRE(v.vertices.size() == 3);
    CHECK(contains_vertex(v, {Rat(1), Rat(0), Rat(0)}));
    CHECK(contains_vertex(v, {Rat(0), Rat(1), Rat(0)}));
    CHECK(contains_vertex(v, {Rat(0), Rat(0), Rat(1)}));
}

TEST_CASE("h_to_v error reporting") {
    HPolyhedron empty;
    empty.dim = 1;
    empty.add_ineq({Rat(1)}, Rat(-1));
    empty.add_ineq({Rat(-1)}, Rat(-1));
    CHECK_THROWS_AS(h_to_v(empty), Infeasible);

    HPolyhedron ray;
    ray.dim = 2;
    ray.add_ineq({Rat(-1), Rat(0)}, Rat(0));
    ray.add_ineq({Rat(0), Rat(-1)}, Rat(0));
    CHECK_THROWS_AS(h_to_v(ray), Unbounded);
}

TEST_CASE("h_to_v degenerate inputs") {
    HPolyhedron point;
    point.dim = 2;
    point.add_eq({Rat(1), Rat(0)}, Rat(3));
    point.add_eq({Rat(0), Rat(1)}, Rat(-1));
    VPolytope v = h_to_v(point);
    REQUIRE(v.vertices.size() == 1);
    CHECK(v.vertices[0] == VecQ{Rat(3), Rat(-1)});
}

TEST_CASE("encoding polytope vertices match the basis-subset oracle") {
    ScenarioSpec spec = make_uniform_scenario({2, 2}, 2, ConstraintKind::Distinguishability);
    HPolyhedron h = build_encoding_polytope(spec, 0);
    VPolytope v = h_to_v(h);
    MatQ oracle = oracle_vertices(h);
    REQUIRE(v.vertices.size() == oracle.size());
    for (const VecQ& x : oracle) CHECK(contains_vertex(v, x));
    // Variable order (p(1|1), p(1|2), p(2|1), p(2|2), D): the two distinct
    // deterministic encodings sit at D = 1, the constant ones at D = 1/2.
    CHECK(contains_vertex(v, {Rat(1), Rat(0), Rat(0), Rat(1), Rat(1)}));
    CHECK(contains_vertex(v, {Rat(1), Rat(1), Rat(0), Rat(0), Rat(1, 2)}));
    CHECK(v.vertices.size() == 6);
}

TEST_CASE("v_to_facets on the square") {
    VPolytope v;
    v.dim = 2;
    v.vertices = {{Rat(0), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}};
    FacetSystem fs = v_to_facets(v);
    CHECK(fs.equalities.empty());
    REQUIRE(fs.facets.size() == 4);
    for (const auto& f : fs.facets) {
        auto check = validate_facet(v, f);
        CHECK(check.valid);
        CHECK(check.is_facet);
        CHECK(check.tight_count == 2);
        CHECK(check.tight_rank == 2);
    }
}

TEST_CASE("validate_facet distinguishes supporting planes from facets") {
    VPolytope v;
    v.dim = 2;
    v.vertices = {{Rat(0), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}};
    auto facet = validate_facet(v, CanonicalFacet{{Rat(1), Rat(0)}, Rat(1)});
    CHECK(facet.is_facet);
    auto corner = validate_facet(v, CanonicalFacet{{Rat(1), Rat(1)}, Rat(2)});
    CHECK(corner.valid);
    CHECK(corner.tight_count == 1);
    CHECK(corner.tight_rank == 1);
    CHECK(!corner.is_facet);
    auto invalid = validate_facet(v, CanonicalFacet{{Rat(1), Rat(0)}, Rat(1, 2)});
    CHECK(!invalid.valid);
    CHECK_THROWS_AS(validate_facet(v, CanonicalFacet{{Rat(1)}, Rat(1)}), DimensionMismatch);
}

TEST_CASE("round trip: h -> v -> facets describes the same set") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        // Random inequalities a.x <= b around a bounding box.
        HPolyhedron h;
        h.dim = 3;
        for (int i = 0; i < 3; ++i) {
            VecQ lo(3, Rat(0)), hi(3, Rat(0));
            lo[i] = -1;
            hi[i] = 1;
            h.add_ineq(std::move(lo), Rat(1));
            h.add_ineq(std::move(hi), Rat(1));
        }
        for (int k = 0; k < 4; ++k) {
            VecQ a(3);
            for (int i = 0; i < 3; ++i) a[i] = frac(static_cast<int>(rng() % 7) - 3, 1 + rng() % 3);
            h.add_ineq(std::move(a), frac(1 + rng() % 4, 1 + rng() % 2));
        }
        VPolytope v = h_to_v(h);
        FacetSystem fs = v_to_facets(v);
        for (const auto& f : fs.facets) {
            auto chk = validate_facet(v, f);
            CHECK(chk.is_facet);
        }
        // Membership agreement on random rational points.
        for (int s = 0; s < 40; ++s) {
            VecQ x(3);
            for (int i = 0; i < 3; ++i) x[i] = frac(static_cast<int>(rng() % 9) - 4, 1 + rng() % 4);
            bool in_h = true;
            for (std::size_t i = 0; i < h.ineq_lhs.size(); ++i)
                if (dot(h.ineq_lhs[i], x) > h.ineq_rhs[i]) in_h = false;
            bool in_f = true;
            for (const auto& eq : fs.equalities)
                if (dot(eq.coeffs, x) != eq.bound) in_f = false;
            for (const auto& f : fs.facets)
                if (dot(f.coeffs, x) > f.bound) in_f = false;
            CHECK(in_h == in_f);
        }
    }
}

TEST_CASE("outputs are invariant under positive rescaling of the input rows") {
    std::mt19937 rng(11);
    HPolyhedron h = unit_square();
    h.add_ineq({Rat(1), Rat(1)}, Rat(3, 2));
    VPolytope v1 = h_to_v(h);
    HPolyhedron scaled = h;
    for (std::size_t i = 0; i < scaled.ineq_lhs.size(); ++i) {
        Rat s = frac(1 + rng() % 9, 1 + rng() % 9);
        for (Rat& x : scaled.ineq_lhs[i]) x *= s;
        scaled.ineq_rhs[i] *= s;
    }
    VPolytope v2 = h_to_v(scaled);
    CHECK(v1.vertices == v2.vertices);
    auto f1 = v_to_facets(v1), f2 = v_to_facets(v2);
    CHECK(f1.facets == f2.facets);
}

TEST_CASE("orbit classification of the square under rotation") {
    VPolytope v;
    v.dim = 2;
    v.vertices = {{Rat(-1), Rat(-1)}, {Rat(-1), Rat(1)}, {Rat(1), Rat(-1)}, {Rat(1), Rat(1)}};
    FacetSystem fs = v_to_facets(v);
    REQUIRE(fs.facets.size() == 4);
    // 90 degree rotation of the centered square: (x, y) -> (y, -x) is not a
    // coordinate permutation, but (x, y) -> (y, x) and sign patterns are; the
    // swap alone already fuses the four facets into two orbits, the swap plus
    // both point reflections into one.
    CoordinatePermutation swap{{1, 0}};
    auto orbits = orbit_classify(fs.facets, {swap}, fs.equalities, &v);
    CHECK(orbits.size() == 2);

    // A genuine automorphism group acting transitively: the square relabeled
    // as probabilities over two binary coordinates has the relabeling maps.
    VPolytope cube;
    cube.dim = 2;
    cube.vertices = {{Rat(0), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}};
    auto fs2 = v_to_facets(cube);
    auto orbs = orbit_classify(fs2.facets, {swap}, fs2.equalities, &cube);
    CHECK(orbs.size() == 2);
    for (const auto& o : orbs) CHECK(o.orbit_size == 2);
}

TEST_CASE("orbit sizes divide the group order and sum to the facet count") {
    ScenarioSpec spec = make_uniform_scenario({2, 2}, 2, ConstraintKind::Distinguishability);
    auto ext = extended_vertices(spec);
    auto gens = standard_generators(spec);
    VPolytope vp = ext.as_vpolytope();
    FacetSystem fs = v_to_facets(vp);
    auto orbits = orbit_classify(fs.facets, gens, fs.equalities, &vp);
    int total = 0;
    for (const auto& o : orbits) total += o.orbit_size;
    CHECK(total == static_cast<int>(fs.facets.size()));
    // group = S2 x S2 x S2 x (sender swap) -> order 16
    for (const auto& o : orbits) CHECK(16 % o.orbit_size == 0);
}

TEST_CASE("invalid symmetry is rejected") {
    VPolytope v;
    v.dim = 2;
    v.vertices = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(2)}};
    CoordinatePermutation swap{{1, 0}};
    CHECK_THROWS_AS(swap.validate(v), InvalidSymmetry);
}

TEST_CASE("polytope json round trip") {
    HPolyhedron h = unit_square();
    HPolyhedron h2 = h_from_json(h_to_json(h));
    CHECK(h2.dim == 2);
    CHECK(h2.ineq_lhs == h.ineq_lhs);
    VPolytope v = h_to_v(h);
    VPolytope v2 = v_from_json(v_to_json(v));
    CHECK(v2.vertices == v.vertices);
}
