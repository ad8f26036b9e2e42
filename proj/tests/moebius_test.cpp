#include "support.hpp"

#include <doctest.h>

using namespace rt;

namespace {
MoebiusMap from_rf(const std::string& s) { return MoebiusMap::from_ratfunc(rf(s)); }
} // namespace

TEST_CASE("map from three points: the paper constraints") {
    // sigma(0)=inf, sigma(inf)=0, sigma(-8)=1 gives -8/z
    MoebiusMap sigma = moebius_from_three_points({pt(0), inf(), pt(-8)}, {inf(), pt(0), pt(1)});
    CHECK(sigma == from_rf("-8/z"));
    // nu(1)=inf, nu(inf)=1, nu(9)=9 gives (z+63)/(z-1)
    MoebiusMap nu = moebius_from_three_points({pt(1), inf(), pt(9)}, {inf(), pt(1), pt(9)});
    CHECK(nu == from_rf("(z+63)/(z-1)"));
    MoebiusMap id = moebius_from_three_points({pt(0), pt(1), inf()}, {pt(0), pt(1), inf()});
    CHECK(id.is_identity());
}

TEST_CASE("from_three_points round-trips on its triple") {
    Rng rng(5);
    Tower t = tower_adjoin_imaginary(Tower(), 6);
    for (int it = 0; it < 40; ++it) {
        std::array<SpherePoint, 3> src{SpherePoint(random_element(rng, t)),
                                       SpherePoint(random_element(rng, t)), inf()};
        std::array<SpherePoint, 3> dst{SpherePoint(random_element(rng, t)), inf(),
                                       SpherePoint(random_element(rng, t))};
        if (src[0] == src[1] || dst[0] == dst[2]) continue;
        MoebiusMap m = moebius_from_three_points(src, dst);
        for (int i = 0; i < 3; ++i) CHECK(m.apply(src[std::size_t(i)]) == dst[std::size_t(i)]);
    }
}

TEST_CASE("degenerate triple") {
    CHECK_THROWS_AS(moebius_from_three_points({pt(0), pt(0), pt(1)}, {pt(0), pt(1), pt(2)}),
                    DegenerateTriple);
}

TEST_CASE("orders") {
    CHECK(from_rf("-8/z").order(10) == 2);
    Tower t = tower_adjoin_imaginary(Tower(), 6);
    MoebiusMap iz = MoebiusMap::scaling(TowerElement::imaginary_unit(t));
    CHECK(iz.order(10) == 4);
    CHECK_FALSE(from_rf("z+1").order(60).has_value()); // parabolic
}

TEST_CASE("closures and classification") {
    Tower t = tower_adjoin_imaginary(Tower(), 6);
    MoebiusMap iz = MoebiusMap::scaling(TowerElement::imaginary_unit(t));
    MoebiusMap minus = MoebiusMap::scaling(TowerElement(Rat(-1), t));
    MoebiusMap invz = MoebiusMap::inversion_scaled(TowerElement(Rat(1), t));

    FiniteMoebiusGroup v4 = group_closure({minus, invz}, 64);
    CHECK(v4.order() == 4);
    CHECK(v4.class_name() == "D4"); // the Klein four-group

    FiniteMoebiusGroup d8 = group_closure({iz, invz}, 64);
    CHECK(d8.order() == 8);
    CHECK(d8.class_name() == "D8");

    MoebiusMap mu2 = from_rf("(z+i)/(z-i)");
    FiniteMoebiusGroup s4 = group_closure({iz, invz, mu2}, 64);
    CHECK(s4.order() == 24);
    CHECK(s4.class_name() == "S4");

    FiniteMoebiusGroup c4 = group_closure({iz}, 64);
    CHECK(c4.class_name() == "C4");
}

TEST_CASE("closure cap") {
    CHECK_THROWS_AS(group_closure({from_rf("z+1")}, 16), ClosureCapExceeded);
}

TEST_CASE("group axioms hold exhaustively") {
    Tower t = tower_adjoin_imaginary(Tower(), 6);
    MoebiusMap iz = MoebiusMap::scaling(TowerElement::imaginary_unit(t));
    MoebiusMap invz = MoebiusMap::inversion_scaled(TowerElement(Rat(1), t));
    MoebiusMap mu2 = from_rf("(z+i)/(z-i)");
    for (const auto& g : {group_closure({iz, invz}, 64), group_closure({iz, invz, mu2}, 64)}) {
        bool has_id = false;
        for (const auto& x : g.elements) has_id |= x.is_identity();
        CHECK(has_id);
        for (const auto& x : g.elements) {
            CHECK(g.contains(x.inverse()));
            for (const auto& y : g.elements) CHECK(g.contains(moeb_compose(x, y)));
        }
    }
}

TEST_CASE("classification is conjugation invariant") {
    Tower t = tower_adjoin_imaginary(Tower(), 6);
    MoebiusMap iz = MoebiusMap::scaling(TowerElement::imaginary_unit(t));
    MoebiusMap invz = MoebiusMap::inversion_scaled(TowerElement(Rat(1), t));
    FiniteMoebiusGroup d8 = group_closure({iz, invz}, 64);
    Rng rng(17);
    for (int it = 0; it < 10; ++it) {
        MoebiusMap beta = random_moebius(rng, t);
        std::vector<MoebiusMap> conj;
        for (const auto& m : d8.elements)
            conj.push_back(moeb_compose(beta.inverse(), moeb_compose(m, beta)));
        auto [cls, l] = classify_group(conj);
        CHECK(cls == GroupClass::Dihedral);
        CHECK(l == 4);
    }
}

TEST_CASE("invariant functions for cyclic and dihedral groups") {
    Tower t = tower_adjoin_imaginary(Tower(), 6);
    MoebiusMap minus = MoebiusMap::scaling(TowerElement(Rat(-1), t));
    MoebiusMap invz = MoebiusMap::inversion_scaled(TowerElement(Rat(1), t));
    MoebiusMap iz = MoebiusMap::scaling(TowerElement::imaginary_unit(t));

    InvariantFunction c2 = invariant_function(group_closure({minus}, 16));
    CHECK(c2.theta == rf("z^2"));

    InvariantFunction c4 = invariant_function(group_closure({iz}, 16));
    CHECK(c4.theta == rf("z^4"));

    FiniteMoebiusGroup d4 = group_closure({minus, invz}, 16);
    InvariantFunction th = invariant_function(d4);
    CHECK(th.theta.degree() == 4);
    // invariant under both generators, sampled
    for (const auto& g : {group_closure({minus}, 16), d4}) {
        InvariantFunction f = invariant_function(g);
        CHECK(f.theta.degree() == int(g.order()));
        for (long s = 2; s < 22; ++s) {
            SpherePoint x = pt(s);
            for (const auto& m : g.elements)
                CHECK(f.theta.eval(m.apply(x)) == f.theta.eval(x));
        }
    }
    // separation: theta(x) = theta(y) only on orbits, sampled
    InvariantFunction f4 = invariant_function(d4);
    CHECK(f4.theta.eval(pt(3)) == f4.theta.eval(pt(1, 3)));
    CHECK_FALSE(f4.theta.eval(pt(3)) == f4.theta.eval(pt(5)));

    CHECK_THROWS_AS(invariant_function(group_closure(
                        {iz, invz, from_rf("(z+i)/(z-i)")}, 64)),
                    UnsupportedClass);
}

TEST_CASE("conjugating rational functions") {
    CHECK(conjugate_rf(rf("z^2"), from_rf("z+1")) == rf("z^2+2*z"));
    CHECK(conjugate_rf(example21(), MoebiusMap::identity()) == example21());
    // the paper's visible-form reduction of Example 2.1
    Tower t;
    RatFunc a = rf("(z^4+8*z^3+8*z-8)/(8*(z-1))", t);
    MoebiusMap mu1 = MoebiusMap::from_ratfunc(rf("(z+7)/(z-9)", t));
    MoebiusMap mu2 = MoebiusMap::from_ratfunc(rf("(2*i*sqrt(2)*z+2*i*sqrt(2))/(-z+1)", t));
    RatFunc lhs = post_compose(mu1, pre_compose(a, mu2));
    RatFunc expect = rf(
        "4*z*((i*sqrt(2)+1)*z^2-i*sqrt(2)+1)/((2*i*sqrt(2)+1)*z^4+6*z^2-2*i*sqrt(2)+1)", t);
    CHECK(lhs == expect);
    // and the symmetry becomes visible: mu1 . nu . mu1^-1 = -z, mu2^-1 . sigma . mu2 = -z
    MoebiusMap nu = MoebiusMap::from_ratfunc(rf("(z+63)/(z-1)", t));
    MoebiusMap sigma = MoebiusMap::from_ratfunc(rf("-8/z", t));
    MoebiusMap minus = MoebiusMap::scaling(TowerElement(Rat(-1), t));
    CHECK(moeb_compose(mu1, moeb_compose(nu, mu1.inverse())) == minus);
    CHECK(moeb_compose(mu2.inverse(), moeb_compose(sigma, mu2)) == minus);
}

TEST_CASE("moebius fixed points") {
    auto f = moebius_fixed_points(MoebiusMap::from_ratfunc(rf("1/z")));
    REQUIRE(f.size() == 2);
    CHECK(((f[0] == pt(1) && f[1] == pt(-1)) || (f[0] == pt(-1) && f[1] == pt(1))));
    auto g = moebius_fixed_points(MoebiusMap::from_ratfunc(rf("-z")));
    REQUIRE(g.size() == 2);
    CHECK(g[0] == inf());
    CHECK(g[1] == pt(0));
}
