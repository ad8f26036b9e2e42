#include "ratsym/critical.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace ratsym {

std::map<int, int> ramification_profile(const RatFunc& a) {
    std::map<int, int> profile;
    Poly w = a.derivative_numerator();
    for (const auto& [part, mult] : Poly::squarefree_decomposition(w))
        profile[mult + 1] += part.degree();
    int minf = a.local_multiplicity(SpherePoint::infinity(a.tower()));
    if (minf >= 2) profile[minf] += 1;
    return profile;
}

bool is_quasi_power(const RatFunc& a) {
    const int n = a.degree();
    if (n < 2) return false;
    auto profile = ramification_profile(a);
    return profile.size() == 1 && profile.count(n) && profile.at(n) == 2;
}

FiberProfile fiber_profile(const RatFunc& a, const SpherePoint& v, int depth_cap) {
    FiberProfile fp;
    fp.value = v;
    const int n = a.degree();
    Poly f = fiber_poly(a, v);
    int inf_mult = n - std::max(f.degree(), 0);
    if (f.is_zero()) throw Error("fiber polynomial vanished");
    fp.cardinality = (inf_mult > 0 ? 1 : 0);
    if (inf_mult > 0) fp.signature.push_back(inf_mult);
    if (f.degree() > 0) {
        for (const auto& [part, mult] : Poly::squarefree_decomposition(f)) {
            fp.cardinality += part.degree();
            for (int i = 0; i < part.degree(); ++i) fp.signature.push_back(mult);
        }
        RootList rl = find_roots(f, depth_cap);
        fp.exact = rl.complete;
        fp.points = rl.roots;
    }
    if (inf_mult > 0) fp.points.emplace_back(SpherePoint::infinity(a.tower()), inf_mult);
    std::sort(fp.signature.begin(), fp.signature.end());
    int total = 0;
    for (int m : fp.signature) total += m;
    assert(total == n);
    return fp;
}

CriticalData critical_data(const RatFunc& a, int depth_cap) {
    if (a.degree() < 2) throw Error("critical data needs degree >= 2");
    CriticalData cd;
    cd.profile = ramification_profile(a);
    Poly w = a.derivative_numerator();
    bool all_points = true;
    for (const auto& [part, mult] : Poly::squarefree_decomposition(w)) {
        RootList rl = find_roots(part, depth_cap);
        if (!rl.complete) all_points = false;
        for (const auto& [pt, m] : rl.roots) {
            assert(m == 1);
            cd.critical_points.emplace_back(pt, mult + 1);
        }
    }
    int minf = a.local_multiplicity(SpherePoint::infinity(a.tower()));
    if (minf >= 2) cd.critical_points.emplace_back(SpherePoint::infinity(a.tower()), minf);
    cd.points_exact = all_points;

    std::set<SpherePoint> values;
    for (const auto& [pt, m] : cd.critical_points) values.insert(a.eval(pt));
    bool fibers_exact = true;
    for (const SpherePoint& v : values) {
        FiberProfile fp = fiber_profile(a, v, depth_cap);
        if (!fp.exact) fibers_exact = false;
        cd.fibers.push_back(std::move(fp));
    }
    cd.exact = cd.points_exact && fibers_exact;
    return cd;
}

FixedPointList fixed_points(const RatFunc& a, int depth_cap) {
    if (a.degree() < 1) throw Error("fixed points need degree >= 1");
    FixedPointList out;
    Poly f = a.num() - a.den() * Poly::variable(a.tower());
    if (f.is_zero()) throw Error("identity map has every point fixed");
    // n+1 fixed points with multiplicity; infinity carries the degree deficit.
    int inf_mult = a.degree() + 1 - std::max(f.degree(), 0);
    if (inf_mult > 0)
        out.points.emplace_back(SpherePoint::infinity(a.tower()), inf_mult);
    RootList rl = find_roots(f, depth_cap);
    out.complete = rl.complete;
    for (const auto& r : rl.roots) out.points.push_back(r);
    return out;
}

// ---------------------------------------------------------------------------
// Value loci

namespace {

// Resultant_z(f(z), y*Q(z) - P(z)) as a polynomial in y: the values P/Q takes
// on the roots of f (poles of P/Q among the roots contribute nothing).
Poly value_image_poly(const Poly& f, const Poly& P, const Poly& Q) {
    Tower t = merge_towers(f.tower(), merge_towers(P.tower(), Q.tower()));
    BiPoly F, G;
    for (const auto& c : f.coeffs()) F.c.push_back(Poly(c.promoted_to(t)));
    const int d = std::max(P.degree(), Q.degree());
    for (int i = 0; i <= d; ++i) {
        std::vector<TowerElement> yc = {-(P.coeff(i).promoted_to(t)), Q.coeff(i).promoted_to(t)};
        G.c.push_back(Poly::from_coeffs(yc));
    }
    F.trim();
    G.trim();
    return bipoly_resultant(F, G);
}

Poly add_root_if_missing(Poly finite, const TowerElement& v) {
    if (finite.eval(v).is_zero()) return finite;
    Poly lin = Poly::variable(v.tower()) - Poly(v);
    return (finite * lin).monic();
}

} // namespace

bool ValueLocus::contains(const SpherePoint& v) const {
    if (v.is_infinity()) return infinite;
    return finite.degree() > 0 && finite.eval(v.finite_value()).is_zero();
}

ValueLocus critical_value_locus(const RatFunc& a) {
    if (a.degree() < 2) throw Error("critical values need degree >= 2");
    const Poly& P = a.num();
    const Poly& Q = a.den();
    Poly wsf = a.derivative_numerator().squarefree_part();
    ValueLocus out;
    Poly h = value_image_poly(wsf, P, Q);
    assert(!h.is_zero());
    out.finite = h.squarefree_part();
    // infinity as a critical value: a multiple pole, or the point at infinity
    // itself critical with value infinity
    bool multiple_pole = Q.degree() > 0 && Q.squarefree_part().degree() < Q.degree();
    bool inf_to_inf_crit = P.degree() - Q.degree() >= 2;
    out.infinite = multiple_pole || inf_to_inf_crit;
    // the point at infinity critical with finite value
    if (P.degree() <= Q.degree()) {
        int minf = a.local_multiplicity(SpherePoint::infinity(a.tower()));
        if (minf >= 2) {
            SpherePoint v = a.eval(SpherePoint::infinity(a.tower()));
            assert(!v.is_infinity());
            out.finite = add_root_if_missing(out.finite, v.finite_value());
        }
    }
    if (out.finite.degree() < 0) out.finite = Poly(Rat(1), a.tower());
    return out;
}

int critical_value_count(const RatFunc& a) { return critical_value_locus(a).count(); }

bool is_critical_value(const RatFunc& a, const SpherePoint& v) {
    const int n = a.degree();
    Poly f = fiber_poly(a, v);
    if (n - std::max(f.degree(), 0) >= 2) return true; // infinity ramified in the fiber
    return f.degree() > 0 && f.squarefree_part().degree() < f.degree();
}

ValueLocus locus_union(const ValueLocus& a, const ValueLocus& b) {
    ValueLocus out;
    out.infinite = a.infinite || b.infinite;
    if (a.finite.degree() <= 0) {
        out.finite = b.finite;
    } else if (b.finite.degree() <= 0) {
        out.finite = a.finite;
    } else {
        Poly g = Poly::gcd(a.finite, b.finite);
        Poly lcm = Poly::exact_div(a.finite * b.finite, g).monic();
        out.finite = lcm;
    }
    if (out.finite.is_zero()) out.finite = Poly(Rat(1));
    return out;
}

ValueLocus image_locus(const RatFunc& f, const ValueLocus& src) {
    ValueLocus out;
    out.finite = Poly(Rat(1), f.tower());
    if (src.finite.degree() > 0) {
        Poly h = value_image_poly(src.finite, f.num(), f.den());
        if (!h.is_zero()) out.finite = h.squarefree_part();
        // roots of src.finite that are poles of f map to infinity
        Poly common = Poly::gcd(src.finite, f.den());
        if (common.degree() > 0) out.infinite = true;
        // pole at infinity of the source polynomial never occurs (roots are finite)
    }
    if (src.infinite) {
        SpherePoint v = f.eval(SpherePoint::infinity(f.tower()));
        if (v.is_infinity())
            out.infinite = true;
        else
            out.finite = add_root_if_missing(out.finite, v.finite_value());
    }
    return out;
}

ValueLocus iterate_critical_locus(const RatFunc& a, int k) {
    assert(k >= 1);
    ValueLocus base = critical_value_locus(a);
    ValueLocus acc = base;
    for (int i = 2; i <= k; ++i) acc = locus_union(base, image_locus(a, acc));
    return acc;
}

bool moebius_maps_locus_into(const MoebiusMap& nu, const ValueLocus& src, const ValueLocus& dst) {
    // finite roots of src
    if (src.finite.degree() > 0) {
        Tower t = merge_towers(src.finite.tower(), nu.tower());
        t = merge_towers(t, dst.finite.tower());
        Poly numer = Poly::variable(t) * nu.a().promoted_to(t) + Poly(nu.b().promoted_to(t));
        Poly denom = Poly::variable(t) * nu.c().promoted_to(t) + Poly(nu.d().promoted_to(t));
        const Poly& g = dst.finite;
        const int dg = std::max(g.degree(), 0);
        // product over the composed condition: g(nu(v)) scaled by denom^deg g
        Poly prod(Rat(0), t);
        Poly npow(Rat(1), t);
        std::vector<Poly> dpow(std::size_t(dg) + 1, Poly(Rat(1), t));
        for (int i = 1; i <= dg; ++i) dpow[std::size_t(i)] = dpow[std::size_t(i - 1)] * denom;
        for (int j = 0; j <= dg; ++j) {
            prod = prod + npow * dpow[std::size_t(dg - j)] * g.coeff(j).promoted_to(t);
            if (j < dg) npow = npow * numer;
        }
        if (g.degree() <= 0) prod = Poly(Rat(1), t); // no finite targets
        if (dst.infinite) prod = prod * denom;       // v with nu(v) = infinity is fine
        if (prod.is_zero()) {
            // g(nu(v)) identically zero: every root maps in
        } else {
            Poly rem = Poly::divmod(prod, src.finite.promoted_to(t)).second;
            if (!rem.is_zero()) return false;
        }
    }
    if (src.infinite) {
        SpherePoint w = nu.apply(SpherePoint::infinity(nu.tower()));
        if (!dst.contains(w)) return false;
    }
    return true;
}

bool indecomposable_by_multiplicity(const RatFunc& a) {
    const int n = a.degree();
    if (n < 2) return false;
    auto profile = ramification_profile(a);
    std::vector<std::pair<int, int>> splits;
    for (int d1 = 2; d1 * d1 <= n; ++d1)
        if (n % d1 == 0) {
            splits.emplace_back(d1, n / d1);
            if (d1 != n / d1) splits.emplace_back(n / d1, d1);
        }
    if (splits.empty()) return true; // prime degree
    for (const auto& [outer, inner] : splits) {
        bool obstructed = false;
        for (const auto& [m, count] : profile) {
            bool splittable = false;
            for (int m2 = 1; m2 <= inner && !splittable; ++m2)
                if (m % m2 == 0 && m / m2 <= outer) splittable = true;
            if (!splittable) {
                obstructed = true;
                break;
            }
        }
        if (!obstructed) return false;
    }
    return true;
}

} // namespace ratsym
