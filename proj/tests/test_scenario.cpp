#include <doctest.h>

#include <random>

#include "polycomm/scenario.hpp"

using namespace polycomm;

namespace {

FigureOfMerit fom_from_pairs(const BehaviorIndex& idx,
                             const std::vector<std::pair<std::string, Rat>>& pairs) {
    FigureOfMerit f;
    f.coeffs.assign(idx.n_behavior(), Rat(0));
    for (const auto& [key, val] : pairs) f.coeffs[idx.coord_from_key(key)] = val;
    return f;
}

// Best single extended vertex with pointwise-feasible resources.
Rat best_vertex_value(const ExtendedVertexSet& ext, const FigureOfMerit& fom, const VecQ& res) {
    bool any = false;
    Rat best(0);
    for (const auto& v : ext.vertices) {
        bool ok = true;
        for (std::size_t i = 0; i < res.size(); ++i)
            if (v.resources[i] > res[i]) ok = false;
        if (!ok) continue;
        Rat val = dot(fom.coeffs, v.behavior);
        if (!any || val > best) {
            best = val;
            any = true;
        }
    }
    REQUIRE(any);
    return best;
}

}  // namespace

TEST_CASE("encoding polytope rows for the binary uniform sender") {
    ScenarioSpec spec = make_uniform_scenario({2, 2}, 2, ConstraintKind::Distinguishability);
    HPolyhedron h = build_encoding_polytope(spec, 0);
    CHECK(h.dim == 5);
    CHECK(h.eq_lhs.size() == 2);           // per-x normalization
    CHECK(h.ineq_lhs.size() == 4 + 2 + 4); // positivity, box, selectors
    // One selector row: q p(1|1) + q p(2|2) <= D, i.e. (1/2)p11 + (1/2)p22 - D <= 0.
    bool found = false;
    for (std::size_t i = 0; i < h.ineq_lhs.size(); ++i) {
        if (h.ineq_lhs[i] == VecQ{Rat(1, 2), Rat(0), Rat(0), Rat(1, 2), Rat(-1)} && h.ineq_rhs[i] == 0)
            found = true;
    }
    CHECK(found);
}

TEST_CASE("selector linearization equals the max/min over selector sums") {
    std::mt19937 rng(3);
    ScenarioSpec spec = make_uniform_scenario({3, 2}, 2, ConstraintKind::Distinguishability);
    for (int trial = 0; trial < 30; ++trial) {
        int n_m = spec.senders[0].messages(), n_x = spec.senders[0].n_x;
        MatQ p(n_m, VecQ(n_x));
        for (int x = 0; x < n_x; ++x) {
            Rat left(1);
            for (int m = 0; m < n_m; ++m) {
                Rat v = m + 1 == n_m ? left : Rat(left * frac(rng() % 4, 4));
                v.canonicalize();
                p[m][x] = v;
                left -= v;
            }
        }
        // direct sum of per-message maxima
        Rat direct(0);
        for (int m = 0; m < n_m; ++m) {
            Rat best = spec.senders[0].prior[0] * p[m][0];
            for (int x = 1; x < n_x; ++x) best = std::max(best, Rat(spec.senders[0].prior[x] * p[m][x]));
            direct += best;
        }
        // max over selector assignments
        Rat best_sel(0);
        std::vector<int> sel(n_m, 0);
        bool more = true;
        while (more) {
            Rat s(0);
            for (int m = 0; m < n_m; ++m) s += spec.senders[0].prior[sel[m]] * p[m][sel[m]];
            best_sel = std::max(best_sel, s);
            more = false;
            for (int i = n_m - 1; i >= 0; --i) {
                if (++sel[i] < n_x) {
                    more = true;
                    break;
                }
                sel[i] = 0;
            }
        }
        CHECK(direct == best_sel);
    }
}

TEST_CASE("constant encoding has resource 1/n_x") {
    ScenarioSpec spec = make_uniform_scenario({3, 2}, 2, ConstraintKind::Distinguishability);
    int n_m = spec.senders[0].messages();
    MatQ p(n_m, VecQ(3, Rat(1, n_m)));
    CHECK(tight_resource(spec, 0, p) == Rat(1, 3));
}

TEST_CASE("decoder counting") {
    CHECK(decoder_count(make_uniform_scenario({2, 2}, 4, ConstraintKind::Distinguishability)) == 256);
    CHECK(decoder_count(make_uniform_scenario({2}, 2, ConstraintKind::Distinguishability)) == 4);
    CHECK(decoder_count(make_uniform_scenario({2, 2}, 3, ConstraintKind::Distinguishability)) == 81);
    auto decs = enumerate_decoders(make_uniform_scenario({2}, 2, ConstraintKind::Distinguishability));
    REQUIRE(decs.size() == 4);
    CHECK(decs[0] == std::vector<std::uint8_t>{0, 0});
    CHECK(decs[3] == std::vector<std::uint8_t>{1, 1});
}

TEST_CASE("decoder cap raises SizeOverflow") {
    ScenarioSpec spec = make_uniform_scenario({3, 3}, 9, ConstraintKind::AntiDistinguishability);
    CHECK_THROWS_AS(enumerate_decoders(spec), SizeOverflow);
}

TEST_CASE("(2,2,2) extended polytope reproduces the facet accounting") {
    ScenarioSpec spec = make_uniform_scenario({2, 2}, 2, ConstraintKind::Distinguishability);
    auto ext = extended_vertices(spec);
    auto table = facet_table(ext, standard_generators(spec));
    CHECK(table.facet_count() == 18);
    CHECK(table.trivial_count() == 10);
    CHECK(table.nontrivial_class_count() == 1);
    for (const auto& cls : table.classes)
        if (!cls.trivial) CHECK(cls.orbit_size == 8);

    // All-deterministic distinct encodings + a copying decoder give a 0/1
    // behavior with resources 1.
    bool unit_vertex = false;
    for (const auto& v : ext.vertices) {
        if (v.resources != VecQ{Rat(1), Rat(1)}) continue;
        bool zero_one = true;
        for (const Rat& x : v.behavior)
            if (x != 0 && x != 1) zero_one = false;
        if (zero_one) unit_vertex = true;
    }
    CHECK(unit_vertex);
}

TEST_CASE("binary-input collapse: distinguishability and anti hulls coincide") {
    ScenarioSpec d = make_uniform_scenario({2, 2}, 2, ConstraintKind::Distinguishability);
    ScenarioSpec a = make_uniform_scenario({2, 2}, 2, ConstraintKind::AntiDistinguishability);
    auto vd = extended_vertices(d).as_vpolytope();
    auto va = extended_vertices(a).as_vpolytope();
    CHECK(vd.vertices == va.vertices);
}

TEST_CASE("(2,2,2) classical values on the paper facet") {
    ScenarioSpec spec = make_uniform_scenario({2, 2}, 2, ConstraintKind::Distinguishability);
    auto ext = extended_vertices(spec);
    FigureOfMerit fom = fom_from_pairs(ext.index, {{"1|2,1", Rat(1)}, {"1|2,2", Rat(-1)}});
    CHECK(classical_value(ext, fom, {Rat(1), Rat(1)}) == Rat(1));
    CHECK(classical_value(ext, fom, {Rat(1), Rat(1, 2)}) == Rat(0));
    CHECK(classical_value(ext, fom, {Rat(1), Rat(3, 4)}) == Rat(1, 2));
    CHECK_THROWS_AS(classical_value(ext, fom, {Rat(1), Rat(1, 4)}), InfeasibleResources);

    SUBCASE("monotone in every resource coordinate") {
        std::mt19937 rng(5);
        for (int t = 0; t < 10; ++t) {
            Rat r1 = frac(2 + static_cast<int>(rng() % 3), 4), r2 = frac(2 + static_cast<int>(rng() % 3), 4);
            Rat lo = classical_value(ext, fom, {r1, r2});
            Rat hi = classical_value(ext, fom, {std::min(Rat(1), Rat(r1 + Rat(1, 8))), r2});
            CHECK(lo <= hi);
        }
    }

    SUBCASE("slice consistency against the vertex oracle") {
        for (const Rat& r2 : {Rat(1, 2), Rat(5, 8), Rat(1)}) {
            Rat lp = classical_value(ext, fom, {Rat(1), r2});
            Rat brute = best_vertex_value(ext, fom, {Rat(1), r2});
            CHECK(lp >= brute);
            CHECK(lp == Rat(2) * r2 - 1);  // the facet bound is exact here
        }
    }
}

TEST_CASE("classical_total on the 2D2-1 facet") {
    ScenarioSpec spec = make_uniform_scenario({2, 2}, 2, ConstraintKind::Distinguishability);
    auto ext = extended_vertices(spec);
    FigureOfMerit fom = fom_from_pairs(ext.index, {{"1|2,1", Rat(1)}, {"1|2,2", Rat(-1)}});
    auto res = classical_total(ext, fom, Rat(1));
    // Bound 2 D2 - 1 forces D2 = 1; D1 is free and sits at its floor 1/2.
    CHECK(res.product == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(rat_double(res.resources[1]) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(classical_total(ext, fom, Rat(2)), Unachievable);

    // Below the no-communication value the floors win.
    auto low = classical_total(ext, fom, Rat(-1));
    CHECK(low.product == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("operational relaxation basics") {
    ScenarioSpec spec = make_uniform_scenario({2, 2}, 2, ConstraintKind::Distinguishability);
    BehaviorIndex idx(spec);
    FigureOfMerit single = fom_from_pairs(idx, {{"1|1,1", Rat(1)}});
    CHECK(operational_relaxation(spec, single, {Rat(1), Rat(1)}) == Rat(1));
    FigureOfMerit facet = fom_from_pairs(idx, {{"1|2,1", Rat(1)}, {"1|2,2", Rat(-1)}});
    CHECK(operational_relaxation(spec, facet, {Rat(1), Rat(1)}) == Rat(1));
    // The relaxation upper-bounds the classical value everywhere.
    auto ext = extended_vertices(spec);
    for (const Rat& r2 : {Rat(1, 2), Rat(3, 4)}) {
        CHECK(operational_relaxation(spec, facet, {Rat(1), r2}) >=
              classical_value(ext, facet, {Rat(1), r2}));
    }
}

TEST_CASE("scenario json round trip") {
    ScenarioSpec spec = make_uniform_scenario({3, 2}, 2, ConstraintKind::AntiDistinguishability);
    ScenarioSpec back = scenario_from_json(scenario_to_json(spec));
    CHECK(back.n_z == 2);
    CHECK(back.kind == ConstraintKind::AntiDistinguishability);
    CHECK(back.senders[0].n_x == 3);
    CHECK(back.senders[0].messages() == 4);
    CHECK(back.senders[0].prior == VecQ{Rat(1, 3), Rat(1, 3), Rat(1, 3)});
}

TEST_CASE("fom json round trip") {
    ScenarioSpec spec = make_uniform_scenario({2, 2}, 2, ConstraintKind::Distinguishability);
    BehaviorIndex idx(spec);
    FigureOfMerit fom = fom_from_pairs(idx, {{"1|2,1", Rat(1)}, {"1|2,2", Rat(-1)}});
    FigureOfMerit back = fom_from_json(fom_to_json(fom, idx), idx);
    CHECK(back.coeffs == fom.coeffs);
}
