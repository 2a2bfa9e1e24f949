#include <doctest.h>

#include <random>

#include "polycomm/distributed.hpp"
#include "polycomm/quantum.hpp"

using namespace polycomm;

namespace {

Eigen::VectorXcd ket(std::initializer_list<std::complex<double>> entries) {
    Eigen::VectorXcd v(static_cast<int>(entries.size()));
    int i = 0;
    for (auto& e : entries) v(i++) = e;
    v.normalize();
    return v;
}

CMat proj(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

FigureOfMerit fom_from_pairs(const BehaviorIndex& idx,
                             const std::vector<std::pair<std::string, Rat>>& pairs) {
    FigureOfMerit f;
    f.coeffs.assign(idx.n_behavior(), Rat(0));
    for (const auto& [key, val] : pairs) f.coeffs[idx.coord_from_key(key)] = val;
    return f;
}

FigureOfMerit i6_fom(const BehaviorIndex& idx) {
    return fom_from_pairs(idx, {{"1|1,2", Rat(1)},
                                {"1|2,2", Rat(-1)},
                                {"2|1,1", Rat(-1)},
                                {"2|2,1", Rat(1)},
                                {"2|1,2", Rat(1)},
                                {"2|2,2", Rat(-1)},
                                {"3|2,1", Rat(1)},
                                {"3|2,2", Rat(-1)}});
}

Strategy i6_strategy() {
    Strategy st;
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
    auto zero = ket({1, 0});
    auto plus = ket({1 / s2, 1 / s2});
    st.states = {{proj(zero), proj(plus)}, {proj(zero), proj(plus)}};
    auto p1 = ket({1 / s2, 0.5, -0.5, 0.0});
    auto p2 = ket({0.0, 1 / s3, 1 / s3, -1 / s3});
    auto p3 = ket({1 / s2, -0.5, 0.5, 0.0});
    CMat m4 = CMat::Identity(4, 4) - proj(p1) - proj(p2) - proj(p3);
    st.povm = {proj(p1), proj(p2), proj(p3), m4};
    return st;
}

}  // namespace

TEST_CASE("helstrom closed form") {
    auto zero = ket({1, 0});
    auto one = ket({0, 1});
    CHECK(helstrom_antidist_two(zero, one) == doctest::Approx(1.0));
    CHECK(helstrom_antidist_two(zero, zero) == doctest::Approx(0.5));
    auto pair = pbr_state_pair(M_PI / 4);
    CHECK(helstrom_antidist_two(pair[0], pair[1]) ==
          doctest::Approx(0.5 * (1 + std::sin(M_PI / 4))).epsilon(1e-12));
}

TEST_CASE("discrimination SDP basics") {
    auto zero = ket({1, 0});
    auto one = ket({0, 1});
    auto plus = ket({1, 1});
    auto r = distinguishability({proj(zero), proj(one)}, {0.5, 0.5});
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
    auto same = distinguishability({proj(plus), proj(plus), proj(plus)},
                                   {1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(same.value == doctest::Approx(1.0 / 3).epsilon(1e-7));
    auto hel = distinguishability({proj(zero), proj(plus)}, {0.5, 0.5});
    CHECK(hel.value == doctest::Approx(0.5 * (1 + 1 / std::sqrt(2.0))).epsilon(1e-8));
    CHECK(hel.rel_gap <= 1e-8);
}

TEST_CASE("exclusion SDP basics and duality") {
    auto zero = ket({1, 0});
    auto one = ket({0, 1});
    auto ortho = antidistinguishability({proj(zero), proj(one)}, {0.5, 0.5});
    CHECK(ortho.value == doctest::Approx(1.0).epsilon(1e-8));

    // Pairwise exclusion equals the closed form.
    std::mt19937_64 rng(5);
    for (int t = 0; t < 6; ++t) {
        auto a = haar_state(rng, 2), b = haar_state(rng, 2);
        auto r = antidistinguishability({proj(a), proj(b)}, {0.5, 0.5});
        CHECK(std::abs(r.value - helstrom_antidist_two(a, b)) <= 1e-8);
        CHECK(std::abs(r.primal_obj - r.dual_obj) <= 1e-8);
    }
}

TEST_CASE("three-state example exclusion value") {
    auto states = three_state_example();
    std::vector<CMat> dms;
    for (const auto& s : states) dms.push_back(proj(s));
    auto r = antidistinguishability(dms, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(r.value == doctest::Approx(0.9798).epsilon(5e-4));
}

TEST_CASE("state and POVM validation") {
    CMat bad = CMat::Identity(2, 2);  // trace 2
    CHECK_THROWS_AS(check_density_matrix(bad), InvalidState);
    CMat rho = 0.5 * CMat::Identity(2, 2);
    CHECK_NOTHROW(check_density_matrix(rho));
    std::vector<CMat> povm{CMat::Identity(2, 2), CMat::Identity(2, 2)};
    CHECK_THROWS_AS(check_povm(povm), InvalidPOVM);
}

TEST_CASE("explicit qubit strategy for the fourth-outcome inequality") {
    ScenarioSpec spec = make_uniform_scenario({2, 2}, 4, ConstraintKind::AntiDistinguishability);
    BehaviorIndex idx(spec);
    QuantumScenario qs = make_quantum_scenario(spec, i6_fom(idx));
    auto r = verify_strategy(qs, i6_strategy());
    CHECK(r.value == doctest::Approx(1.46).epsilon(0.01 / 1.46));
    CHECK(r.audited_resources[0] == doctest::Approx(0.8535533906).epsilon(1e-6));
    CHECK(r.audited_resources[1] == doctest::Approx(0.8535533906).epsilon(1e-6));
    // trivial POVM: the +1 and -1 coefficients on z=1 cancel
    Strategy trivial = i6_strategy();
    trivial.povm = {CMat::Identity(4, 4), CMat::Zero(4, 4), CMat::Zero(4, 4), CMat::Zero(4, 4)};
    auto t = verify_strategy(qs, trivial);
    CHECK(t.value == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("seesaw on the binary scenario stays at the classical value") {
    ScenarioSpec spec = make_uniform_scenario({2, 2}, 2, ConstraintKind::Distinguishability);
    auto ext = extended_vertices(spec);
    FigureOfMerit fom = fom_from_pairs(ext.index, {{"1|2,1", Rat(1)}, {"1|2,2", Rat(-1)}});
    QuantumScenario qs = make_quantum_scenario(spec, fom);

    SeeSawOptions opt;
    opt.dim = 2;
    opt.restarts = 6;
    opt.seed = 7;
    VecQ res{Rat(1), Rat(3, 4)};
    const ExtendedVertex* best = best_feasible_vertex(ext, fom, res);
    REQUIRE(best);
    std::vector<Strategy> inits{classical_embedding_strategy(spec, ext, *best, 2)};
    SeeSawResult r = seesaw(qs, {1.0, 0.75}, opt, inits);

    double classical = rat_double(classical_value(ext, fom, res));
    CHECK(classical == doctest::Approx(0.5));
    CHECK(r.value >= classical - 1e-6);               // classical containment
    CHECK(r.value <= classical + 1e-5);               // no violation in this scenario
    for (std::size_t i = 1; i < r.trace.size(); ++i)  // monotone sweeps
        CHECK(r.trace[i] >= r.trace[i - 1] - 1e-9);
    CHECK(r.audited_resources[0] <= 1.0 + 1e-6);      // feasibility audit
    CHECK(r.audited_resources[1] <= 0.75 + 1e-6);
    Rat upper = operational_relaxation(spec, fom, res);
    CHECK(r.value <= rat_double(upper) + 1e-6);       // lower-bound soundness
}

TEST_CASE("minimal total resource on the binary scenario") {
    ScenarioSpec spec = make_uniform_scenario({2, 2}, 2, ConstraintKind::Distinguishability);
    auto ext = extended_vertices(spec);
    FigureOfMerit fom = fom_from_pairs(ext.index, {{"1|2,1", Rat(1)}, {"1|2,2", Rat(-1)}});
    QuantumScenario qs = make_quantum_scenario(spec, fom);

    auto cl = classical_total(ext, fom, Rat(1, 2));
    CHECK(cl.product == doctest::Approx(0.375).epsilon(1e-6));  // D1 floor 1/2, D2 = 3/4

    SeeSawOptions opt;
    opt.dim = 2;
    opt.restarts = 4;
    opt.seed = 11;
    VecQ full{Rat(1), Rat(1)};
    const ExtendedVertex* best = best_feasible_vertex(ext, fom, full);
    std::vector<Strategy> inits{classical_embedding_strategy(spec, ext, *best, 2)};
    auto q = min_total_resource(qs, 0.5, opt, false, inits);
    CHECK(std::abs(q.achieved_value - 0.5) <= 2e-5);
    // no quantum advantage in this scenario
    CHECK(q.product >= cl.product - 1e-3);
    CHECK(q.product <= cl.product + 2e-2);
    for (std::size_t i = 0; i < q.per_sender.size(); ++i)
        CHECK(q.audited_resources[i] <= q.per_sender[i] + 1e-6);
}

TEST_CASE("strategy json round trip") {
    Strategy st = i6_strategy();
    std::vector<double> declared{0.85, 0.85};
    std::vector<double> back_declared;
    Strategy back = strategy_from_json(strategy_to_json(st, declared), &back_declared);
    CHECK(back_declared == declared);
    REQUIRE(back.states.size() == 2);
    CHECK((back.states[0][1] - st.states[0][1]).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((back.povm[2] - st.povm[2]).cwiseAbs().maxCoeff() <= 1e-12);
}
