#include <doctest.h>

#include "polycomm/simplex.hpp"

using namespace polycomm;

TEST_CASE("basic maximization") {
    // max x + y s.t. x + 2y <= 4, 3x + y <= 6
    MatQ A{{Rat(1), Rat(2)}, {Rat(3), Rat(1)}};
    auto r = lp_maximize(A, {-1, -1}, {Rat(4), Rat(6)}, {Rat(1), Rat(1)});
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == Rat(14, 5));
    CHECK(r.x == VecQ{Rat(8, 5), Rat(6, 5)});
}

TEST_CASE("equalities and >= rows") {
    // max x1 s.t. x1 + x2 = 1, x1 >= 1/3 as a row
    MatQ A{{Rat(1), Rat(1)}, {Rat(1), Rat(0)}};
    auto r = lp_maximize(A, {0, 1}, {Rat(1), Rat(1, 3)}, {Rat(1), Rat(0)});
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == Rat(1));
}

TEST_CASE("infeasible") {
    MatQ A{{Rat(1)}, {Rat(1)}};
    auto r = lp_maximize(A, {-1, 1}, {Rat(1), Rat(2)}, {Rat(0)});
    CHECK(r.status == LpStatus::Infeasible);
}

TEST_CASE("unbounded") {
    MatQ A{{Rat(-1), Rat(0)}};
    auto r = lp_maximize(A, {-1}, {Rat(0)}, {Rat(1), Rat(0)});
    CHECK(r.status == LpStatus::Unbounded);
}

TEST_CASE("negative rhs normalization") {
    // max -x s.t. -x <= -2  (so x >= 2)
    MatQ A{{Rat(-1)}};
    auto r = lp_maximize(A, {-1}, {Rat(-2)}, {Rat(-1)});
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == Rat(-2));
}

TEST_CASE("degenerate ties terminate") {
    MatQ A{{Rat(1), Rat(1)}, {Rat(1), Rat(1)}, {Rat(1), Rat(0)}};
    auto r = lp_maximize(A, {-1, -1, -1}, {Rat(1), Rat(1), Rat(1)}, {Rat(1), Rat(1)});
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == Rat(1));
}
