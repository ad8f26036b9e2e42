#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace rt;

namespace {

const FiberProfile* fiber_over(const CriticalData& cd, const SpherePoint& v) {
    for (const auto& f : cd.fibers)
        if (f.value == v) return &f;
    return nullptr;
}

int rh_sum(const std::map<int, int>& profile) {
    int s = 0;
    for (const auto& [m, c] : profile) s += (m - 1) * c;
    return s;
}

} // namespace

TEST_CASE("Example 2.1 critical data") {
    RatFunc a = example21();
    CriticalData cd = critical_data(a, 6);
    CHECK(cd.exact);
    REQUIRE(cd.fibers.size() == 3);

    const FiberProfile* f1 = fiber_over(cd, pt(1));
    REQUIRE(f1);
    CHECK(f1->signature == std::vector<int>{1, 3});
    bool has0 = false, has_m8 = false;
    for (const auto& [p, m] : f1->points) {
        if (p == pt(0)) { CHECK(m == 3); has0 = true; }
        if (p == pt(-8)) { CHECK(m == 1); has_m8 = true; }
    }
    CHECK(has0);
    CHECK(has_m8);

    const FiberProfile* f9 = fiber_over(cd, pt(9));
    REQUIRE(f9);
    CHECK(f9->signature == std::vector<int>{2, 2});
    CHECK(f9->cardinality == 2);

    const FiberProfile* finf = fiber_over(cd, inf());
    REQUIRE(finf);
    bool pole3 = false, pole1 = false;
    for (const auto& [p, m] : finf->points) {
        if (p == inf()) { CHECK(m == 3); pole3 = true; }
        if (p == pt(1)) { CHECK(m == 1); pole1 = true; }
    }
    CHECK(pole3);
    CHECK(pole1);
}

TEST_CASE("fibers of -2z^2/(z^4+1)") {
    // oracle: derivative numerator is 4z(z^4-1) up to scale
    RatFunc b = fixtureB();
    Poly w = b.derivative_numerator();
    Poly expect = rf("4*z^5-4*z").num();
    CHECK(w.monic() == expect.monic());

    CriticalData cd = critical_data(b, 6);
    CHECK(cd.exact);
    REQUIRE(cd.fibers.size() == 3);
    const FiberProfile* f0 = fiber_over(cd, pt(0));
    REQUIRE(f0);
    CHECK(f0->signature == std::vector<int>{2, 2});
    bool z0 = false, zi = false;
    for (const auto& [p, m] : f0->points) {
        if (p == pt(0)) z0 = true;
        if (p == inf()) zi = true;
        CHECK(m == 2);
    }
    CHECK(z0);
    CHECK(zi);
    CHECK(fiber_over(cd, pt(-1)));
    CHECK(fiber_over(cd, pt(1)));
}

TEST_CASE("critical values of z^2") {
    CriticalData cd = critical_data(rf("z^2"), 6);
    REQUIRE(cd.fibers.size() == 2);
    CHECK(fiber_over(cd, pt(0)));
    CHECK(fiber_over(cd, inf()));
}

TEST_CASE("Riemann-Hurwitz sum on every fixture") {
    for (const RatFunc& a :
         {example21(), fixtureB(), quasiA(), x27(), d12fixture(), kott3(), rf("z^2")}) {
        auto prof = ramification_profile(a);
        CHECK(rh_sum(prof) == 2 * a.degree() - 2);
    }
}

TEST_CASE("fiber multiplicities always sum to the degree") {
    for (const RatFunc& a : {example21(), fixtureB(), x27()}) {
        CriticalData cd = critical_data(a, 6);
        for (const auto& f : cd.fibers) {
            int s = 0;
            for (int m : f.signature) s += m;
            CHECK(s == a.degree());
        }
    }
}

TEST_CASE("c(A) is contained in c(A^2)") {
    for (const RatFunc& a : {example21(), fixtureB(), quasiA(), x27(), kott3()}) {
        ValueLocus l1 = critical_value_locus(a);
        ValueLocus l2 = iterate_critical_locus(a, 2);
        CHECK(moebius_maps_locus_into(MoebiusMap::identity(a.tower()), l1, l2));
    }
}

TEST_CASE("two critical values exactly for quasi-powers") {
    CHECK(is_quasi_power(quasiA()));
    CHECK(critical_value_count(quasiA()) == 2);
    CHECK(is_quasi_power(rf("z^5")));
    CHECK_FALSE(is_quasi_power(example21()));
    CHECK(critical_value_count(example21()) == 3);
    CHECK_FALSE(is_quasi_power(fixtureB()));
    CHECK(critical_value_count(fixtureB()) == 3);
    CHECK(critical_value_count(x27()) == 5);
}

TEST_CASE("fixed points") {
    FixedPointList f = fixed_points(fixtureB(), 6);
    bool zero = false;
    for (const auto& [p, m] : f.points) zero |= (p == pt(0));
    CHECK(zero);

    FixedPointList f6 = fixed_points(d12fixture(), 6);
    bool zero6 = false;
    for (const auto& [p, m] : f6.points) zero6 |= (p == pt(0));
    CHECK(zero6);
    CHECK(f6.complete); // 0, inf, +-i and the four primitive 12th roots

    FixedPointList fz = fixed_points(rf("z^2"), 6);
    REQUIRE(fz.points.size() == 3);
    CHECK(fz.complete);
    std::vector<SpherePoint> pts;
    for (const auto& [p, m] : fz.points) pts.push_back(p);
    CHECK(std::find(pts.begin(), pts.end(), pt(0)) != pts.end());
    CHECK(std::find(pts.begin(), pts.end(), pt(1)) != pts.end());
    CHECK(std::find(pts.begin(), pts.end(), inf()) != pts.end());
}

TEST_CASE("value locus membership agrees with the pointwise test") {
    RatFunc a = example21();
    ValueLocus l1 = critical_value_locus(a);
    CHECK(l1.infinite);
    CHECK(l1.finite.degree() == 2); // 1 and 9
    for (long v : {1, 9}) {
        CHECK(is_critical_value(a, pt(v)));
        CHECK(l1.contains(pt(v)));
    }
    CHECK(is_critical_value(a, inf()));
    CHECK_FALSE(is_critical_value(a, pt(2)));
    CHECK_FALSE(l1.contains(pt(2)));
}

TEST_CASE("multiplicity obstruction to decomposition") {
    CHECK(indecomposable_by_multiplicity(x27()));      // a point of multiplicity 3, degree 4
    CHECK(indecomposable_by_multiplicity(quasiA()));   // prime degree
    CHECK_FALSE(indecomposable_by_multiplicity(fixtureB())); // genuinely decomposable
}
