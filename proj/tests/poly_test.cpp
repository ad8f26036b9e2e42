#include "support.hpp"

#include <doctest.h>

using namespace rt;

namespace {
Poly zpoly(std::vector<long> coeffs_low_first) {
    std::vector<TowerElement> cs;
    for (long c : coeffs_low_first) cs.emplace_back(Rat(c), Tower());
    return Poly::from_coeffs(cs);
}
} // namespace

TEST_CASE("gcd(z^2-1, z^2+2z+1) = z+1") {
    Poly g = Poly::gcd(zpoly({-1, 0, 1}), zpoly({1, 2, 1}));
    CHECK(g == zpoly({1, 1}));
}

TEST_CASE("derivative of the Example 2.1 numerator") {
    // term-by-term differentiation of z^4+8z^3+8z-8
    Poly p = zpoly({-8, 8, 0, 8, 1});
    CHECK(p.derivative() == zpoly({8, 0, 24, 4}));
}

TEST_CASE("compose(z^2, z+1) = z^2+2z+1") {
    CHECK(zpoly({0, 0, 1}).compose(zpoly({1, 1})) == zpoly({1, 2, 1}));
}

TEST_CASE("squarefree decomposition") {
    // (z-1)^2 (z+2)^3 z
    Poly p = zpoly({-1, 1}).pow(2) * zpoly({2, 1}).pow(3) * zpoly({0, 1});
    auto parts = Poly::squarefree_decomposition(p);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0].first == zpoly({0, 1}));
    CHECK(parts[0].second == 1);
    CHECK(parts[1].first == zpoly({-1, 1}));
    CHECK(parts[1].second == 2);
    CHECK(parts[2].first == zpoly({2, 1}));
    CHECK(parts[2].second == 3);
    CHECK(p.squarefree_part() == (zpoly({0, 1}) * zpoly({-1, 1}) * zpoly({2, 1})).monic());
}

TEST_CASE("resultants") {
    CHECK(Poly::resultant(zpoly({-1, 0, 1}), zpoly({-4, 0, 1})) == TowerElement(Rat(9)));
    CHECK(Poly::resultant(zpoly({-1, 0, 1}), zpoly({1, 2, 1})).is_zero());
}

TEST_CASE("divmod round-trips") {
    Rng rng(3);
    Tower t;
    for (int it = 0; it < 100; ++it) {
        Poly a = random_poly(rng, t, int(rng.range(0, 6)));
        Poly b = random_poly(rng, t, int(rng.range(0, 4)));
        if (b.is_zero()) continue;
        auto [q, r] = Poly::divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
    }
}

TEST_CASE("eval matches compose with a constant") {
    Poly p = zpoly({1, -3, 0, 2});
    TowerElement x(Rat(7, 3), Tower());
    CHECK(p.eval(x) == p.compose(Poly(x)).coeff(0));
}

TEST_CASE("reversed swaps coefficients") {
    Poly p = zpoly({1, 2, 3});
    CHECK(p.reversed(2) == zpoly({3, 2, 1}));
    CHECK(p.reversed(3) == zpoly({0, 3, 2, 1}));
}

TEST_CASE("bipoly resultant eliminates the main variable") {
    // Res_d(c - d, d^2 - 2) = c^2 - 2
    Tower t;
    Poly c = Poly::variable(t);
    BiPoly f, g;
    f.c = {c, Poly(Rat(-1), t)};
    g.c = {Poly(Rat(-2), t), Poly(), Poly(Rat(1), t)};
    Poly r = bipoly_resultant(f, g);
    CHECK(r.monic() == (c * c - Poly(Rat(2), t)).monic());
}
