#include <doctest.h>

#include <random>

#include "polycomm/distributed.hpp"

using namespace polycomm;

TEST_CASE("classical bound formula") {
    DistributedTask task{2, 2, {}};
    CHECK(classical_bound(task, {Rat(1), Rat(3, 4)}) == Rat(1));
    CHECK(classical_bound(task, {Rat(1, 2), Rat(1, 2)}) == Rat(3, 4));
    CHECK_THROWS_AS(classical_bound(task, {Rat(1, 4), Rat(1, 2)}), OutOfRange);
    CHECK(classical_bound(2, {0.5, 0.5}) == doctest::Approx(0.75));
}

TEST_CASE("brute force at the resource floor and ceiling") {
    DistributedTask task{2, 2, {}};
    CHECK(brute_force_distributed(task, {Rat(1, 2), Rat(1, 2)}) == Rat(3, 4));
    CHECK(brute_force_distributed(task, {Rat(1), Rat(1)}) == Rat(1));
    CHECK(brute_force_distributed(task, {Rat(1), Rat(3, 4)}) == Rat(1));
}

TEST_CASE("closed-form decoding matches explicit decoder enumeration") {
    DistributedTask task{2, 2, {}};
    std::mt19937 rng(23);
    for (int t = 0; t < 12; ++t) {
        VecQ a{Rat(1, 2) + frac(static_cast<int>(rng() % 9), 16),
               Rat(1, 2) + frac(static_cast<int>(rng() % 9), 16)};
        Rat fast = brute_force_distributed(task, a);
        Rat slow = brute_force_distributed_decoders(task, a);
        CHECK(fast == slow);
    }
}

TEST_CASE("theorem-1 soundness on random resources, exact arithmetic") {
    DistributedTask task{2, 2, {}};
    std::mt19937 rng(29);
    for (int t = 0; t < 25; ++t) {
        VecQ a{Rat(1, 2) + frac(static_cast<int>(rng() % 17), 32),
               Rat(1, 2) + frac(static_cast<int>(rng() % 17), 32)};
        CHECK(brute_force_distributed(task, a) <= classical_bound(task, a));
    }
}

TEST_CASE("theta range") {
    CHECK(pbr_theta_min(2) == doctest::Approx(M_PI / 4).epsilon(1e-14));
    double prev = pbr_theta_min(2);
    for (int N = 3; N <= 12; ++N) {
        double cur = pbr_theta_min(N);
        CHECK(cur < prev);
        CHECK(cur > 0);
        prev = cur;
    }
    CHECK(pbr_theta_min(1) == doctest::Approx(M_PI / 2));
    CHECK_THROWS_AS(pbr_theta_range(1), OutOfRange);  // degenerate, empty range
}

TEST_CASE("ratio formulas") {
    CHECK(pbr_ratio(M_PI / 2 - 1e-9, 5) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(pbr_ratio(M_PI / 4, 2) == doctest::Approx(1.3725830020).epsilon(1e-9));
    CHECK(pbr_optimal_ratio(2) == doctest::Approx(24 - 16 * std::sqrt(2.0)).epsilon(1e-12));
    for (int N = 2; N <= 8; ++N)
        CHECK(pbr_ratio(pbr_theta_min(N), N) == doctest::Approx(pbr_optimal_ratio(N)).epsilon(1e-12));
    CHECK_THROWS_AS(pbr_ratio(M_PI / 8, 2), ThetaOutOfRange);
    // asymptote: the ratio normalized by 2^N approaches 1 from below
    double n20 = pbr_optimal_ratio(20) / std::pow(2.0, 20);
    CHECK(n20 >= 0.8);
    CHECK(n20 <= 1.0);
}

TEST_CASE("perfect exclusion certificates flip at the boundary") {
    CHECK(certify_perfect_exclusion(M_PI / 4, 2).excluded);
    CHECK(!certify_perfect_exclusion(M_PI / 8, 2).excluded);
    CHECK(certify_perfect_exclusion(M_PI / 3, 3).excluded);
    CHECK(!certify_perfect_exclusion(pbr_theta_min(3) - 1e-3, 3).excluded);
    CHECK(certify_perfect_exclusion(pbr_theta_min(3) + 1e-3, 3).excluded);
    // helstrom consistency of the certified pair
    double theta = pbr_theta_min(2) + 0.05;
    auto pair = pbr_state_pair(theta);
    CHECK(helstrom_antidist_two(pair[0], pair[1]) ==
          doctest::Approx(0.5 * (1 + std::sin(theta))).epsilon(1e-12));
}

TEST_CASE("sufficient conditions on the three-state example") {
    auto st = three_state_example();
    auto r = sufficient_condition(st, 2);
    CHECK(r.cond1);
    CHECK(r.cond2);
    CHECK(r.gram.beta == doctest::Approx(3.489).epsilon(1e-3));
    CHECK(r.gram.alpha == doctest::Approx(2.040).epsilon(1e-3));
}

TEST_CASE("sufficient conditions on degenerate families") {
    // orthonormal triple: beta = 0, no advantage route
    std::vector<Eigen::VectorXcd> ortho;
    for (int i = 0; i < 3; ++i) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(3);
        v(i) = 1;
        ortho.push_back(v);
    }
    auto r = sufficient_condition(ortho, 2);
    CHECK(!r.cond1);
    CHECK(r.gram.beta == doctest::Approx(0.0));
    // identical states: alpha = beta = n(n-1)
    std::vector<Eigen::VectorXcd> same(3, ortho[0]);
    auto s = sufficient_condition(same, 2);
    CHECK(s.gram.alpha == doctest::Approx(6.0));
    CHECK(s.gram.beta == doctest::Approx(6.0));
    CHECK(s.cond1);
    CHECK(!s.cond2);  // 6 > 9/sqrt(2) - 3
    Eigen::VectorXcd non_unit = 2 * ortho[0];
    CHECK_THROWS_AS(sufficient_condition({non_unit, ortho[1]}, 2), InvalidState);
}

TEST_CASE("product Gram identity for random ensembles") {
    std::mt19937_64 rng(31);
    for (int N = 2; N <= 3; ++N)
        for (int n = 2; n <= 4; ++n) {
            std::vector<Eigen::VectorXcd> states;
            for (int i = 0; i < n; ++i) states.push_back(haar_state(rng, 2));
            double alpha = 0;
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l)
                    if (j != l) alpha += std::norm(states[j].dot(states[l]));
            double direct = product_gram_frobenius_sq(states, N);
            CHECK(direct == doctest::Approx(std::pow(n + alpha, N)).epsilon(1e-9));
        }
}

TEST_CASE("distributed seesaw recovers the binary-input optimum") {
    // For two binary senders at full success the optimal common exclusion
    // bound is the pair value at the smallest admissible angle.
    DistributedTask task{2, 2, {}};
    SeeSawOptions opt;
    opt.dim = 2;
    opt.restarts = 12;
    opt.seed = 3;
    double a_q = min_common_antidist(task, 1.0, opt, 2e-4);
    double expect = 0.5 * (1 + std::sin(pbr_theta_min(2)));
    CHECK(a_q == doctest::Approx(expect).epsilon(5e-3));
    double ratio = std::pow(1.0 / a_q, 2);
    CHECK(ratio == doctest::Approx(pbr_optimal_ratio(2)).epsilon(2e-2));
}
