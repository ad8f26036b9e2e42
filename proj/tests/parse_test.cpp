#include "support.hpp"

#include <doctest.h>

using namespace rt;

TEST_CASE("paper expressions parse to the right functions") {
    Tower t;
    RatFunc a = parse_expression("(z^4+8*z^3+8*z-8)/(8*(z-1))", t);
    CHECK(a.degree() == 4);
    CHECK(a.eval(pt(0)) == pt(1));
    RatFunc b = parse_expression("-2*z^2/(z^4+1)", t);
    CHECK(b == quasiA().iterate(2, 4096));
}

TEST_CASE("radicals extend the tower while parsing") {
    Tower t;
    RatFunc c = parse_expression("i*sqrt(2)*z + sqrt(8)", t);
    CHECK(t.has_imaginary());
    CHECK(t.radicands().size() == 1);
    // sqrt(8) folded into 2 sqrt(2)
    CHECK(c.num().coeff(0) ==
          TowerElement(Rat(2), t) * *adjoin_sqrt(t, 2, 6).value);
}

TEST_CASE("syntax errors carry offsets") {
    Tower t;
    try {
        parse_expression("z^2 +", t);
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.position == 5);
    }
    Tower t2;
    CHECK_THROWS_AS(parse_expression("z^2 + $", t2), SyntaxError);
    CHECK_THROWS_AS(parse_expression("w + 1", t2), UnknownSymbol);
}

TEST_CASE("negative exponents and unary minus") {
    CHECK(rf("z^-2") == rf("1/z^2"));
    CHECK(rf("-z^2") == -rf("z^2"));
    CHECK(rf("2^(-1)") == rf("1/2"));
    CHECK(rf("- - z") == rf("z"));
    CHECK(rf("3 + -1") == rf("2"));
}

TEST_CASE("parse after print is the identity on canonical forms") {
    std::vector<RatFunc> fs = {example21(), fixtureB(), quasiA(),       x27(),
                               d12fixture(), kott3(),   rf("z^8"),      rf("(z+63)/(z-1)"),
                               rf("i*z"),    rf("(z+i)/(z-i)")};
    fs.push_back(conjugate_rf(example21(),
                              MoebiusMap::from_ratfunc(rf("(2*i*sqrt(2)*z+2*i*sqrt(2))/(-z+1)"))));
    for (const RatFunc& f : fs) {
        Tower t = f.tower();
        RatFunc again = parse_expression(f.str(), t);
        CHECK(again == f);
    }
}

TEST_CASE("points parse including infinity") {
    Tower t;
    CHECK(parse_point("inf", t) == inf());
    CHECK(parse_point("-8", t) == pt(-8));
    CHECK(parse_point("1/2", t) == pt(1, 2));
    CHECK_THROWS_AS(parse_point("z+1", t), Error);
}
