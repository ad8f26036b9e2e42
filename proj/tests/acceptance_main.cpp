// Acceptance suite: one pass/fail line per criterion, exact checks throughout.
#include "support.hpp"

#include "ratsym/report.hpp"

#include <iostream>
#include <set>
#include <sstream>
#include <vector>

using namespace rt;

namespace {

struct Criterion {
    int number;
    std::string title;
    bool ok = true;
    std::vector<std::string> notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string& what) { notes.push_back(what); }
};

MoebiusMap from_rf(const std::string& s) { return MoebiusMap::from_ratfunc(rf(s)); }

const FiberProfile* fiber_over(const CriticalData& cd, const SpherePoint& v) {
    for (const auto& f : cd.fibers)
        if (f.value == v) return &f;
    return nullptr;
}

// ---------------------------------------------------------------------------

void criterion1(Criterion& c) {
    RatFunc a = example21();
    GroupReport rep = group_of(a);
    c.require(rep.complete, "analysis complete");
    c.require(rep.g.order() == 2 && rep.g.class_name() == "C2", "G(A) = C2");
    c.require(rep.g.contains(from_rf("-8/z")), "sigma = -8/z");
    auto nu = rep.nu_for(from_rf("-8/z"));
    c.require(nu.has_value() && *nu == from_rf("(z+63)/(z-1)"), "nu = (z+63)/(z-1)");
    c.require(rep.sigma_group.order() == 1, "Sigma(A) trivial");
    c.require(rep.aut_group.order() == 1, "Aut(A) trivial");

    CriticalData cd = critical_data(a, 6);
    c.require(cd.exact, "critical data exact");
    c.require(cd.fibers.size() == 3, "three critical values");
    c.require(fiber_over(cd, pt(1)) && fiber_over(cd, pt(9)) && fiber_over(cd, inf()),
              "critical values {1, 9, inf}");
    if (const FiberProfile* f = fiber_over(cd, pt(1))) {
        c.require(f->signature == std::vector<int>{1, 3}, "fiber over 1 has profile {3,1}");
        for (const auto& [p, m] : f->points) {
            if (p == pt(0)) c.require(m == 3, "0 has multiplicity 3");
            if (p == pt(-8)) c.require(m == 1, "-8 has multiplicity 1");
        }
    }
    if (const FiberProfile* f = fiber_over(cd, pt(9)))
        c.require(f->signature == std::vector<int>{2, 2}, "fiber over 9 has profile {2,2}");
    if (const FiberProfile* f = fiber_over(cd, inf())) {
        for (const auto& [p, m] : f->points)
            if (p == inf()) c.require(m == 3, "pole at infinity has multiplicity 3");
    }
}

void criterion2(Criterion& c) {
    GroupReport rep = group_of(fixtureB());
    c.require(rep.complete, "analysis complete");
    c.require(rep.g.order() == 24 && rep.g.class_name() == "S4", "|G| = 24 classified S4");
    c.require(rep.sigma_group.order() == 4 && rep.sigma_group.class_name() == "D4",
              "Sigma = D4");
    for (const char* s : {"z", "-z", "1/z", "-1/z"})
        c.require(rep.sigma_group.contains(from_rf(s)), std::string("Sigma contains ") + s);
    c.require(rep.ghat.order() == 6, "Ghat order 6");
    c.require(rep.aut_group.order() == 1, "Aut trivial");
    auto nu = rep.nu_for(from_rf("(z+i)/(z-i)"));
    c.require(nu.has_value() && *nu == from_rf("(-z+1)/(-3*z-1)"),
              "certificate for mu2 carries nu2 = (-z+1)/(-3z-1)");
}

LimitGroupResult criterion3(Criterion& c) {
    LimitGroupResult res = sigma_infinity(quasiA(), 4);
    c.require(res.group.class_name() == "D8", "Sigma_inf = D8");
    c.require(res.stabilized_at == 3, "stabilized_at = 3");
    c.require(res.status == LimitStatus::Stabilized, "status Stabilized");
    c.require(res.level_trace.size() >= 3, "level trace computed");
    if (res.level_trace.size() >= 3) {
        c.require(res.level_trace[0].second.class_name() == "C2", "Sigma(A) = C2");
        c.require(res.level_trace[1].second.class_name() == "D4", "Sigma(A^2) = D4");
        c.require(res.level_trace[2].second.class_name() == "D8", "Sigma(A^3) = D8");
    }
    return res;
}

std::vector<LimitGroupResult> criterion4(Criterion& c) {
    LimitGroupResult r6 = aut_infinity(d12fixture(), 3);
    c.require(r6.group.order() == 12 && r6.group.class_name() == "D12", "Aut_inf = D12");
    AxisGroupResult ax = axis_group(d12fixture(), pt(0), inf());
    c.require(ax.order.l == 6, "axis group is C6");
    c.require(r6.group.order() <= 2 * std::size_t(ax.order.l), "axis bound 2|C6| satisfied");
    c.require(r6.complete && r6.completeness_rule == "qes0-axis-cap",
              "bound certified the limit");

    LimitGroupResult r3 = aut_infinity(kott3(), 3);
    MoebiusMap inv = from_rf("1/z");
    c.require(r3.group.contains(inv), "Aut contains 1/z");
    RatFunc a = kott3();
    RatFunc a2 = a.iterate(2, 4096);
    for (long v : {1, -1}) {
        c.require(inv.apply(pt(v)) == pt(v), "1/z fixes +-1");
        c.require(!(a.eval(pt(v)) == pt(v)), "+-1 not fixed by A");
        c.require(a2.eval(pt(v)) == pt(v), "+-1 fixed by A^2");
    }
    return {r6, r3};
}

LimitGroupResult criterion5(Criterion& c) {
    RatFunc a = x27();
    c.require(indecomposable_by_multiplicity(a),
              "multiplicity obstruction rules out a 2.2 split");
    LimitGroupResult res = sigma_infinity(a, 3, {}, /*assert_indecomposable=*/true);
    c.require(res.group.order() == 1, "Sigma_inf trivial");
    c.require(res.complete, "triviality certified");
    c.require(res.completeness_rule == "indecomposable-g-equals-aut",
              "via the indecomposable G = Aut shortcut");
    GroupReport rep = group_of(a);
    c.require(rep.g.same_elements(rep.aut_group), "G(A) = Aut(A)");
    // the reference pins G(A) to {+-z}; the engine computes C4 = {+-z, +-iz}
    // because A(iz) = i A(z) holds identically (certificate re-verifies), so
    // the order-two content check cannot pass
    bool is_order_two = rep.g.order() == 2;
    c.require(is_order_two, "G(A) = {+-z} (reference value; computed group is " +
                                rep.g.class_name() + " with a re-verifiable certificate "
                                "A(iz) = i*A(z))");
    return res;
}

void criterion6(Criterion& c) {
    Seq0Result sB = seq0_check(fixtureB(), pt(0), inf(), 3);
    c.require(sB.equal && sB.level_orders == std::vector<int>{4, 4, 4},
              "axis_group(B^k, 0, inf) = C4 for k <= 3");
    Seq0Result s6 = seq0_check(d12fixture(), pt(0), inf(), 3);
    c.require(s6.equal && s6.level_orders == std::vector<int>{6, 6, 6},
              "axis_group(A^k, 0, inf) = C6 for k <= 3");
    Seq0Result s3 = seq0_check(kott3(), pt(0), inf(), 3);
    c.require(s3.equal && s3.level_orders == std::vector<int>{2, 2, 2},
              "axis_group(A^k, 0, inf) = C2 for k <= 3");
}

// --- criterion 7: the property suite ---------------------------------------

struct Sample {
    RatFunc f;
    bool group_checks; // NotQuasiPower with complete data
};

std::vector<Sample> make_samples(Criterion& c) {
    std::vector<Sample> out;
    Rng rng(20260809);
    Tower qi = tower_adjoin_imaginary(Tower(), 6);

    auto gaussian = [&](long spread) {
        TowerElement x(random_rat(rng, spread), qi);
        if (rng.range(0, 1))
            x = x + TowerElement::monomial(qi, 1u, random_rat(rng, spread));
        return x;
    };
    auto random_mob = [&]() {
        while (true) {
            TowerElement a = gaussian(3), b = gaussian(3), cc = gaussian(2), d = gaussian(3);
            if (!(a * d - b * cc).is_zero()) return MoebiusMap(a, b, cc, d);
        }
    };

    // degree 2: Moebius-dressed squarings (always quasi-powers)
    while (out.size() < 70) {
        RatFunc f = post_compose(random_mob(), pre_compose(rf("z^2"), random_mob()));
        out.push_back({f, false});
    }
    // degree 3: z^3 + a z and z^3 + c seeds, exact data only, dressed by
    // conjugation so the group transports
    int made3 = 0;
    while (made3 < 65) {
        RatFunc seed;
        if (rng.range(0, 1)) {
            Poly z = Poly::variable(qi);
            seed = RatFunc(z.pow(3) + Poly(gaussian(4)));
        } else {
            Poly z = Poly::variable(qi);
            TowerElement a0 = gaussian(3);
            if (a0.is_zero()) continue;
            seed = RatFunc(z.pow(3) + z * a0);
        }
        RatFunc f = conjugate_rf(seed, random_mob());
        try {
            if (!critical_data(f, 6).exact) continue;
        } catch (const Error&) {
            continue;
        }
        if (is_quasi_power(f)) continue;
        out.push_back({f, true});
        ++made3;
    }
    // degree 4: x + b/x^3, z^4 + a z^2 + c, (z^2+a)^2 / z^2 seeds
    int made4 = 0;
    while (made4 < 65) {
        Poly z = Poly::variable(qi);
        RatFunc seed;
        long pick = rng.range(0, 2);
        if (pick == 0) {
            TowerElement b = gaussian(4);
            if (b.is_zero()) continue;
            seed = RatFunc(z.pow(4) + Poly(b), z.pow(3));
        } else if (pick == 1) {
            seed = RatFunc(z.pow(4) + z.pow(2) * gaussian(3) + Poly(gaussian(3)));
        } else {
            TowerElement a0 = gaussian(3);
            if (a0.is_zero()) continue;
            seed = RatFunc((z.pow(2) + Poly(a0)).pow(2), z.pow(2));
        }
        RatFunc f = conjugate_rf(seed, random_mob());
        try {
            if (!critical_data(f, 6).exact) continue;
        } catch (const Error&) {
            continue;
        }
        if (is_quasi_power(f)) continue;
        out.push_back({f, true});
        ++made4;
    }
    c.note("samples: " + std::to_string(out.size()));
    return out;
}

void check_group_properties(Criterion& c, const RatFunc& a, const GroupReport& rep) {
    const int n = a.degree();
    c.require(rep.burnside_ok, "Burnside |G| = |Ghat||Sigma|");
    c.require(rep.g.order() <= std::size_t(std::max(60, 2 * n)), "|G| <= max(60, 2n)");
    for (const auto& m : rep.g.elements)
        c.require(m.order(n).has_value(), "element order <= n");
    c.require(rep.homomorphism_ok, "gamma homomorphism table");
    if (!c.ok) return; // stop flooding notes once broken
}

void criterion7(Criterion& c) {
    std::vector<RatFunc> fixtures = {example21(), fixtureB(), quasiA(),
                                     x27(),       d12fixture(), kott3()};
    std::vector<Sample> samples = make_samples(c);

    Rng rng(777);
    Tower qi = tower_adjoin_imaginary(Tower(), 6);
    std::vector<MoebiusMap> betas;
    while (betas.size() < 20) {
        TowerElement a(random_rat(rng, 3), qi), b(random_rat(rng, 3), qi);
        TowerElement cc(random_rat(rng, 2), qi), d(random_rat(rng, 3), qi);
        if (rng.range(0, 1)) b = b + TowerElement::monomial(qi, 1u, random_rat(rng, 2));
        if ((a * d - b * cc).is_zero()) continue;
        betas.emplace_back(a, b, cc, d);
    }

    // fixtures: full property set where the data is exact
    for (const RatFunc& a : fixtures) {
        if (is_quasi_power(a)) continue;
        GroupReport rep = group_of(a);
        check_group_properties(c, a, rep);
        if (!c.ok) return;
        // Theorem 4.2 for every S(A) element (hard assertion inside s_set)
        try {
            s_set(a, 2);
        } catch (const Error& e) {
            c.require(false, std::string("s_set inclusion: ") + e.what());
        }
        if (rep.complete) {
            for (const auto& beta : betas) {
                GroupReport conj = group_of(conjugate_rf(a, beta));
                c.require(conj.g.order() == rep.g.order(), "conjugation preserves |G|");
                bool same = true;
                for (const auto& m : rep.g.elements)
                    if (!conj.g.contains(moeb_compose(beta.inverse(), moeb_compose(m, beta))))
                        same = false;
                c.require(same, "group_of(beta^-1 A beta) = beta^-1 G beta");
                if (!c.ok) return;
            }
        }
    }

    // samples: group properties plus one equivariance twist each
    std::size_t idx = 0;
    for (const Sample& s : samples) {
        if (!s.group_checks) {
            // degree-2 samples are quasi-powers by Riemann-Hurwitz; assert the
            // classification and the two-critical-value equivalence
            c.require(is_quasi_power(s.f), "degree-2 sample is a quasi-power");
            c.require(quasi_power_class(s.f).cls != QuasiClass::NotQuasiPower,
                      "classification agrees");
            if (!c.ok) return;
            continue;
        }
        GroupReport rep = group_of(s.f);
        c.require(rep.complete, "sample analysis complete");
        check_group_properties(c, s.f, rep);
        c.require((critical_value_count(s.f) == 2) == is_quasi_power(s.f),
                  "two critical values iff quasi-power");
        try {
            s_set(s.f, 1);
        } catch (const Error& e) {
            c.require(false, std::string("s_set inclusion: ") + e.what());
        }
        if (!c.ok) return;
        const MoebiusMap& beta = betas[idx++ % betas.size()];
        GroupReport conj = group_of(conjugate_rf(s.f, beta));
        c.require(conj.g.order() == rep.g.order(), "conjugation preserves |G|");
        for (const auto& m : rep.g.elements)
            if (!conj.g.contains(moeb_compose(beta.inverse(), moeb_compose(m, beta)))) {
                c.require(false, "conjugation equivariance");
                break;
            }
        if (!c.ok) return;
    }
}

void criterion8(Criterion& c) {
    for (int n = 1; n <= 9; ++n) {
        Poly tn = chebyshev(n);
        c.require(tn.degree() == n, "degree of T_n");
        Poly tneg = tn.compose(-Poly::variable(Tower()));
        c.require(tneg == (n % 2 == 0 ? tn : -tn), "parity law for T_" + std::to_string(n));
    }
    for (int n = 1; n <= 9; ++n)
        for (int m = 1; m <= 9; ++m) {
            if (n * m > 9) continue;
            c.require(chebyshev(n).compose(chebyshev(m)) == chebyshev(n * m),
                      "T_n . T_m = T_nm");
        }
}

void criterion9(Criterion& c) {
    Poly t3 = chebyshev(3);
    auto k = shares_iterate(RatFunc(t3), RatFunc(-t3), 4);
    c.require(k.has_value() && *k == 2, "shares_iterate(T3, -T3, 4) = 2");
    auto none = shares_iterate(rf("z^2"), rf("z^2+1"), 5);
    c.require(!none.has_value(), "shares_iterate(z^2, z^2+1, 5) = None");
}

void criterion10(Criterion& c, const LimitGroupResult& c3, const std::vector<LimitGroupResult>& c4,
                 const LimitGroupResult& c5) {
    // no effective uniform bound is claimed: limit results carry certificates,
    // stabilization relative to k_max, and the hard caps applied in 3-5
    std::vector<const LimitGroupResult*> all = {&c3, &c5};
    for (const auto& r : c4) all.push_back(&r);
    const std::set<std::string> recognized = {
        "", "power-map-family", "indecomposable-ghat-trivial", "indecomposable-g-equals-aut",
        "conjugacy-candidates-exhausted", "axis-conjugacy-sieve", "qes0-axis-cap",
        "thm42-candidates-exhausted"};
    for (const LimitGroupResult* r : all) {
        c.require(recognized.count(r->completeness_rule) == 1,
                  "completeness rules come from the recognized set");
        c.require(r->stabilized_at <= (r->level_trace.empty() ? r->stabilized_at
                                                              : r->level_trace.back().first),
                  "stabilization is relative to the sweep");
        if (!r->level_trace.empty()) {
            for (std::size_t i = 0; i < r->level_trace.size(); ++i)
                if (r->level_trace[i].first >= r->stabilized_at)
                    c.require(r->level_trace[i].second.same_elements(r->group),
                              "levels from stabilized_at onward agree");
        }
    }
    // certificates re-verify
    RatFunc a3 = quasiA();
    for (const auto& cert : c3.certificates) {
        RatFunc f = a3.iterate(cert.level, 4096);
        c.require(pre_compose(f, cert.sigma) == f, "sigma-limit certificate re-verifies");
    }
    RatFunc a6 = d12fixture();
    for (const auto& cert : c4.front().certificates) {
        RatFunc f = a6.iterate(cert.level, 4096);
        c.require(pre_compose(f, cert.sigma) == post_compose(cert.sigma, f),
                  "aut-limit certificate re-verifies");
    }
}

} // namespace

int main() {
    std::vector<Criterion> cs;
    auto run = [&cs](int num, const std::string& title, auto&& fn) -> Criterion& {
        cs.push_back({num, title});
        Criterion& c = cs.back();
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.ok = false;
            c.notes.push_back(std::string("exception: ") + e.what());
        }
        return c;
    };

    LimitGroupResult c3res, c5res;
    std::vector<LimitGroupResult> c4res;

    run(1, "Example 2.1 reproduction", [](Criterion& c) { criterion1(c); });
    run(2, "G(B) = S4 with Sigma = D4, Ghat = D6", [](Criterion& c) { criterion2(c); });
    run(3, "sigma-infinity stabilizes at D8", [&](Criterion& c) { c3res = criterion3(c); });
    run(4, "aut-infinity fixtures", [&](Criterion& c) { c4res = criterion4(c); });
    run(5, "sigma-infinity triviality for x + 27/x^3", [&](Criterion& c) { c5res = criterion5(c); });
    run(6, "seq0 suite", [](Criterion& c) { criterion6(c); });
    run(7, "property suite over fixtures and 200 samples", [](Criterion& c) { criterion7(c); });
    run(8, "Chebyshev composition and parity", [](Criterion& c) { criterion8(c); });
    run(9, "shared iterates", [](Criterion& c) { criterion9(c); });
    run(10, "limit-group acceptance is property-based", [&](Criterion& c) {
        criterion10(c, c3res, c4res, c5res);
    });

    int failures = 0;
    for (const auto& c : cs) {
        std::cout << (c.ok ? "[PASS]" : "[FAIL]") << " criterion " << c.number << ": "
                  << c.title << "\n";
        for (const auto& n : c.notes) std::cout << "        " << n << "\n";
        if (!c.ok) ++failures;
    }
    std::cout << (failures == 0 ? "all criteria passed" :
                  std::to_string(failures) + " criterion(s) failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
