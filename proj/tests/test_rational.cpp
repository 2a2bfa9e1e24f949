#include <doctest.h>

#include "polycomm/rational.hpp"

using namespace polycomm;

TEST_CASE("parsing and canonical form") {
    CHECK(parse_rat("3/6") == Rat(1, 2));
    CHECK(parse_rat("-4/8") == Rat(-1, 2));
    CHECK(parse_rat("7") == Rat(7));
    CHECK(parse_rat("0.85") == Rat(17, 20));
    CHECK(parse_rat("-0.125") == Rat(-1, 8));
    CHECK(parse_rat(" 1 / 3 ") == Rat(1, 3));
    CHECK_THROWS(parse_rat("1/0"));
    CHECK_THROWS(parse_rat("abc"));
    CHECK(rat_str(frac(-3, 9)) == "-1/3");
    CHECK(rat_str(frac(4, 2)) == "2");
}

TEST_CASE("gcd invariant survives arithmetic") {
    Rat a = parse_rat("6/4");
    CHECK(a.get_num() == 3);
    CHECK(a.get_den() == 2);
    Rat b = a * Rat(2, 3);
    b.canonicalize();
    CHECK(b == 1);
}

TEST_CASE("primitive scaling") {
    VecQ v{Rat(1, 2), Rat(-3, 4), Rat(0)};
    Rat tail(5, 4);
    make_primitive_joint(v, tail);
    CHECK(v == VecQ{Rat(2), Rat(-3), Rat(0)});
    CHECK(tail == Rat(5));
}

TEST_CASE("lexicographic order") {
    CHECK(lex_less({Rat(0), Rat(1)}, {Rat(1), Rat(0)}));
    CHECK(!lex_less({Rat(1)}, {Rat(1)}));
}
