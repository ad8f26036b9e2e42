#include "ratsym/dynamics.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <set>

namespace ratsym {

namespace {

int gcd_int(int a, int b) { return std::gcd(a, b); }

TowerElement te_pow(const TowerElement& x, int e) {
    TowerElement r(Rat(1), x.tower());
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
}

} // namespace

HomozygousOrder homozygous_order(const RatFunc& a) {
    HomozygousOrder h;
    std::vector<int> sn = a.num().support();
    std::vector<int> sd = a.den().support();
    assert(!sn.empty() && !sd.empty());
    int g = 0;
    for (std::size_t i = 1; i < sn.size(); ++i) g = gcd_int(g, sn[i] - sn[0]);
    for (std::size_t i = 1; i < sd.size(); ++i) g = gcd_int(g, sd[i] - sd[0]);
    if (g == 0) {
        h.power_form = true;
        h.l = 0;
        h.r = sn[0] - sd[0];
        return h;
    }
    h.l = g;
    h.r = ((sn[0] - sd[0]) % g + g) % g;
    return h;
}

std::optional<TowerElement> root_of_unity(int l, const Tower& t, int depth_cap) {
    if (l <= 0) return std::nullopt;
    if (l == 1) return TowerElement(Rat(1), t);
    if (l == 2) return TowerElement(Rat(-1), t);
    std::optional<TowerElement> z;
    if (l == 3 || l == 6) {
        Tower cur = t;
        try {
            AdjoinResult ri = adjoin_imaginary(cur, depth_cap);
            cur = ri.tower;
            AdjoinResult r3 = adjoin_sqrt(cur, 3, depth_cap);
            cur = r3.tower;
            TowerElement i = TowerElement::imaginary_unit(cur);
            TowerElement s3 = r3.value->promoted_to(cur);
            TowerElement re(Rat(l == 3 ? -1 : 1, 2), cur);
            z = re + i * s3 * TowerElement(Rat(1, 2), cur);
        } catch (const DepthCapExceeded&) {
            return std::nullopt;
        }
    } else if (l == 4) {
        try {
            AdjoinResult ri = adjoin_imaginary(t, depth_cap);
            z = TowerElement::imaginary_unit(ri.tower);
        } catch (const DepthCapExceeded&) {
            return std::nullopt;
        }
    } else if (l % 2 == 0) {
        auto half = root_of_unity(l / 2, t, depth_cap);
        if (!half) return std::nullopt;
        z = sqrt_in_tower(*half, SqrtPolicy::AdjoinRational, depth_cap);
        if (!z) return std::nullopt;
    } else {
        return std::nullopt; // odd orders beyond 3 need non-quadratic cyclotomy
    }
    // verify the order is exactly l
    TowerElement acc = *z;
    for (int k = 1; k < l; ++k) {
        if (acc.is_rational() && acc.rational_value() == 1) return std::nullopt;
        acc = acc * *z;
    }
    if (!(acc.is_rational() && acc.rational_value() == 1)) return std::nullopt;
    return z;
}

AxisGroupResult axis_group(const RatFunc& a, const SpherePoint& z0, const SpherePoint& z1,
                           const EngineOptions& opt) {
    if (z0 == z1) throw Error("axis needs two distinct points");
    if (!(a.eval(z0) == z0)) throw NotAFixedPoint();
    AxisGroupResult out;
    out.axis_map = MoebiusMap(z1.x(), z0.x(), z1.y(), z0.y());
    RatFunc ahat = conjugate_rf(a, out.axis_map);
    assert(ahat.eval(SpherePoint(Rat(0))) == SpherePoint(Rat(0)));
    out.order = homozygous_order(ahat);
    if (out.order.power_form) {
        // the whole family cz qualifies; report the degenerate marker with a
        // trivial element list
        out.group = group_closure({MoebiusMap::identity(a.tower())}, opt.closure_cap);
        return out;
    }
    auto zeta = root_of_unity(out.order.l, ahat.tower(), opt.tower_depth_cap);
    if (!zeta)
        throw ConjugatorNotInTower("primitive root of unity of order " +
                                   std::to_string(out.order.l));
    MoebiusMap rot = MoebiusMap::scaling(*zeta);
    MoebiusMap gen = moeb_compose(out.axis_map, moeb_compose(rot, out.axis_map.inverse()));
    out.group = group_closure({gen}, opt.closure_cap);
    assert(int(out.group.order()) == out.order.l);
    return out;
}

Seq0Result seq0_check(const RatFunc& a, const SpherePoint& z0, const SpherePoint& z1,
                      int k_max, const EngineOptions& opt) {
    Seq0Result out;
    out.base = axis_group(a, z0, z1, opt);
    out.power_form = out.base.order.power_form;
    out.level_orders.push_back(out.base.order.l);
    RatFunc f = a;
    for (int k = 2; k <= k_max; ++k) {
        f = f.compose(a);
        if (long(f.degree()) > opt.degree_budget)
            throw DegreeBudgetExceeded(f.degree(), opt.degree_budget);
        AxisGroupResult lvl = axis_group(f, z0, z1, opt);
        out.level_orders.push_back(lvl.order.l);
        if (lvl.order.power_form != out.power_form || lvl.order.l != out.base.order.l)
            out.equal = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Axis swap families

namespace {

// Polynomial in z with K[c]-coefficients, as a dense vector indexed by the
// z-power.
using ZPolyC = std::vector<Poly>;

void zpoly_add_term(ZPolyC& v, std::size_t zpow, const Poly& c) {
    if (v.size() <= zpow) v.resize(zpow + 1);
    v[zpow] = v[zpow] + c;
}

ZPolyC zpoly_mul(const ZPolyC& x, const ZPolyC& y) {
    ZPolyC out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (y[j].is_zero()) continue;
            zpoly_add_term(out, i + j, x[i] * y[j]);
        }
    }
    return out;
}

ZPolyC zpoly_sub(ZPolyC x, const ZPolyC& y) {
    for (std::size_t j = 0; j < y.size(); ++j) zpoly_add_term(x, j, -y[j]);
    return x;
}

// c^e as a Poly in the parameter variable.
Poly cpow(int e, const Tower& t) {
    return Poly::monomial(e, TowerElement(Rat(1), t));
}

// sigma family: n(z) / d(z) with K[c] coefficients for sigma = cz or c/z.
struct ParamFamily {
    ZPolyC num, den;
};

ParamFamily lhs_family(const RatFunc& a, bool inverted) {
    const Poly &P = a.num(), &Q = a.den();
    const int d = a.degree();
    const Tower& t = a.tower();
    ParamFamily f;
    for (int j = 0; j <= d; ++j) {
        std::size_t zp = std::size_t(inverted ? d - j : j);
        if (!P.coeff(j).is_zero()) zpoly_add_term(f.num, zp, cpow(j, t) * P.coeff(j));
        if (!Q.coeff(j).is_zero()) zpoly_add_term(f.den, zp, cpow(j, t) * Q.coeff(j));
    }
    return f;
}

// beta family: beta . a . beta^-1 with K[d] coefficients for beta = dz or d/z.
ParamFamily rhs_family(const RatFunc& a, bool inverted) {
    const Poly &P = a.num(), &Q = a.den();
    const int d = a.degree();
    const Tower& t = a.tower();
    ParamFamily f;
    if (!inverted) {
        // d * a(z/d): num_j = P_j d^{deg-j+1}, den_j = Q_j d^{deg-j}
        for (int j = 0; j <= d; ++j) {
            if (!P.coeff(j).is_zero())
                zpoly_add_term(f.num, std::size_t(j), cpow(d - j + 1, t) * P.coeff(j));
            if (!Q.coeff(j).is_zero())
                zpoly_add_term(f.den, std::size_t(j), cpow(d - j, t) * Q.coeff(j));
        }
    } else {
        // d / a(d/z): num = d * z^deg Q(d/z), den = z^deg P(d/z)
        for (int j = 0; j <= d; ++j) {
            if (!Q.coeff(j).is_zero())
                zpoly_add_term(f.num, std::size_t(d - j), cpow(j + 1, t) * Q.coeff(j));
            if (!P.coeff(j).is_zero())
                zpoly_add_term(f.den, std::size_t(d - j), cpow(j, t) * P.coeff(j));
        }
    }
    return f;
}

// Cross-multiplied constraints of lhs == rhs where lhs carries variable c and
// rhs carries variable d; each z-coefficient becomes a BiPoly in d over K[c].
std::vector<BiPoly> cross_constraints(const ParamFamily& lhs, const ParamFamily& rhs) {
    // lhs.num * rhs.den - lhs.den * rhs.num, tracking (c-poly) x (d-poly)
    // products as BiPoly in d with c-poly coefficients.
    struct Acc {
        std::vector<BiPoly> per_z;
        void add(std::size_t zp, const Poly& cpart, std::size_t dpow, int sign) {
            if (per_z.size() <= zp) per_z.resize(zp + 1);
            BiPoly& b = per_z[zp];
            if (b.c.size() <= dpow) b.c.resize(dpow + 1);
            b.c[dpow] = sign > 0 ? b.c[dpow] + cpart : b.c[dpow] - cpart;
        }
    } acc;
    auto mul_into = [&acc](const ZPolyC& x, const ZPolyC& y, int sign) {
        // x carries c-polys indexed by z-power; y carries d-polys (built with
        // cpow, but over the d variable) indexed by z-power
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < y.size(); ++j) {
                if (y[j].is_zero()) continue;
                // y[j] is a monomial in d: split coefficient-wise
                for (int e = 0; e <= y[j].degree(); ++e) {
                    if (y[j].coeff(e).is_zero()) continue;
                    acc.add(i + j, x[i] * y[j].coeff(e), std::size_t(e), sign);
                }
            }
        }
    };
    mul_into(lhs.num, rhs.den, +1);
    mul_into(lhs.den, rhs.num, -1);
    std::vector<BiPoly> out;
    for (auto& b : acc.per_z) {
        b.trim();
        if (b.c.empty()) continue;
        out.push_back(std::move(b));
    }
    return out;
}

Poly strip_c_power(Poly p) {
    int v = p.valuation();
    if (v > 0) {
        for (int i = 0; i < v; ++i) p = Poly::exact_div(p, Poly::variable(p.tower()));
    }
    return p;
}

struct BivariateSolutions {
    std::vector<std::pair<TowerElement, TowerElement>> cd; // (c, d) pairs
    bool continuous = false;
    bool complete = true;
};

// Common zeros of a small system over K[c][d], c != 0, d != 0; candidates are
// generated by elimination and every reported pair satisfies all constraints.
BivariateSolutions solve_cd_system(const std::vector<BiPoly>& constraints, int depth_cap) {
    BivariateSolutions out;
    if (constraints.empty()) {
        out.continuous = true;
        return out;
    }
    std::vector<Poly> pure_c;
    std::vector<const BiPoly*> with_d;
    const BiPoly* linear = nullptr;
    for (const BiPoly& b : constraints) {
        if (b.degree() == 0) {
            pure_c.push_back(b.c[0]);
        } else {
            with_d.push_back(&b);
            if (b.degree() == 1 && !linear) linear = &b;
        }
    }
    Poly pot;
    for (const Poly& p : pure_c) pot = pot.is_zero() ? p : Poly::gcd(pot, p);
    if (linear) {
        // d = -g0/g1 substituted into every other constraint clears d; the
        // degenerate branch g0 = g1 = 0 contributes its own candidates.
        const Poly& g0 = linear->c[0];
        const Poly& g1 = linear->c[1];
        for (const BiPoly* b : with_d) {
            if (b == linear) continue;
            const int dd = b->degree();
            Poly h;
            Poly num_pow(Rat(1), g0.tower());
            std::vector<Poly> den_pow(std::size_t(dd) + 1, Poly(Rat(1), g1.tower()));
            for (int i = 1; i <= dd; ++i) den_pow[std::size_t(i)] = den_pow[std::size_t(i - 1)] * g1;
            for (int j = 0; j <= dd; ++j) {
                h = h + b->c[std::size_t(j)] * num_pow * den_pow[std::size_t(dd - j)];
                if (j < dd) num_pow = num_pow * (-g0);
            }
            if (h.is_zero()) continue;
            pot = pot.is_zero() ? h : Poly::gcd(pot, h);
            if (pot.degree() == 0) break;
        }
        Poly degen = Poly::gcd(g0, g1);
        if (degen.degree() > 0) {
            // union with the degenerate-branch candidates
            if (pot.is_zero() || pot.degree() == 0) {
                pot = degen;
            } else {
                Poly g = Poly::gcd(pot, degen);
                pot = Poly::exact_div(pot * degen, g).monic();
            }
        }
        if (pot.is_zero() && pure_c.empty()) {
            // every substituted constraint vanished: a one-parameter family of
            // solutions (c, -g0/g1)
            out.continuous = true;
            return out;
        }
    } else {
        // resultant fallback, bounded: eliminate d from a few low-degree pairs
        std::vector<const BiPoly*> sorted = with_d;
        std::sort(sorted.begin(), sorted.end(),
                  [](const BiPoly* x, const BiPoly* y) { return x->degree() < y->degree(); });
        const std::size_t pair_budget = 6;
        std::size_t used = 0;
        for (std::size_t i = 0; i < sorted.size() && used < pair_budget; ++i) {
            for (std::size_t j = i + 1; j < sorted.size() && used < pair_budget; ++j) {
                if (sorted[i]->degree() + sorted[j]->degree() > 24) continue;
                ++used;
                Poly r = bipoly_resultant(*sorted[i], *sorted[j]);
                // declared-degree resultants can miss common roots where both
                // leading coefficients vanish; fold those in explicitly
                Poly lcs = Poly::gcd(sorted[i]->c.back(), sorted[j]->c.back());
                if (lcs.degree() > 0) {
                    if (r.is_zero())
                        r = lcs;
                    else {
                        Poly g = Poly::gcd(r, lcs);
                        r = Poly::exact_div(r * lcs, g).monic();
                    }
                }
                if (r.is_zero()) continue;
                pot = pot.is_zero() ? r : Poly::gcd(pot, r);
                if (pot.degree() == 0) return out; // inconsistent beyond c = 0
            }
        }
        if (used == 0 && !with_d.empty()) {
            out.complete = false;
            return out;
        }
    }
    if (pot.is_zero()) {
        if (with_d.empty()) {
            out.continuous = true; // all constraints vanish identically
            return out;
        }
        out.complete = false; // elimination could not bound c
        return out;
    }
    pot = strip_c_power(pot).squarefree_part();
    if (pot.degree() == 0) return out; // only c = 0 or nothing
    RootList cs = find_roots(pot, depth_cap);
    if (!cs.complete) out.complete = false;
    for (const auto& [cpt, mult] : cs.roots) {
        if (cpt.is_infinity() || cpt.finite_value().is_zero()) continue;
        const TowerElement& cv = cpt.finite_value();
        // specialize the d-constraints at c = cv
        Poly dpoly;
        bool consistent = true;
        for (const BiPoly& b : constraints) {
            std::vector<TowerElement> coeffs;
            for (const Poly& cp : b.c) coeffs.push_back(cp.eval(cv));
            Poly spec = Poly::from_coeffs(coeffs);
            if (spec.is_zero()) continue;
            if (spec.degree() == 0) {
                consistent = false; // nonzero constant: no d satisfies it
                break;
            }
            dpoly = dpoly.is_zero() ? spec : Poly::gcd(dpoly, spec);
        }
        if (!consistent) continue;
        if (dpoly.is_zero()) {
            // d unconstrained at this c; pick d = 1 as witness
            out.cd.emplace_back(cv, TowerElement(Rat(1), cv.tower()));
            continue;
        }
        dpoly = strip_c_power(dpoly);
        if (dpoly.degree() == 0) continue;
        RootList ds = find_roots(dpoly.squarefree_part(), depth_cap);
        if (!ds.complete) out.complete = false;
        for (const auto& [dpt, dm] : ds.roots) {
            if (dpt.is_infinity() || dpt.finite_value().is_zero()) continue;
            out.cd.emplace_back(cv, dpt.finite_value());
        }
    }
    return out;
}

bool axis_is_critical_set(const RatFunc& ahat) {
    Poly wsf = ahat.derivative_numerator().squarefree_part();
    if (!(wsf == Poly::variable(wsf.tower()))) return false;
    return ahat.local_multiplicity(SpherePoint::infinity(ahat.tower())) >= 2;
}

} // namespace

SwapSolutions swap_solutions(const RatFunc& a, const SpherePoint& z0, const SpherePoint& z1,
                             SwapMode mode, const EngineOptions& opt) {
    if (z0 == z1) throw Error("axis needs two distinct points");
    SwapSolutions out;
    MoebiusMap w(z1.x(), z0.x(), z1.y(), z0.y());
    MoebiusMap winv = w.inverse();
    RatFunc ahat = conjugate_rf(a, w);

    if (mode == SwapMode::Sigma) {
        // ahat(c/z) = ahat(z): cross-multiplied z-coefficients are c-polys
        ParamFamily lhs = lhs_family(ahat, true);
        ZPolyC plain_num, plain_den;
        for (int j = 0; j <= ahat.num().degree(); ++j)
            if (!ahat.num().coeff(j).is_zero())
                zpoly_add_term(plain_num, std::size_t(j), Poly(ahat.num().coeff(j)));
        for (int j = 0; j <= ahat.den().degree(); ++j)
            if (!ahat.den().coeff(j).is_zero())
                zpoly_add_term(plain_den, std::size_t(j), Poly(ahat.den().coeff(j)));
        ZPolyC diff = zpoly_sub(zpoly_mul(lhs.num, plain_den), zpoly_mul(lhs.den, plain_num));
        Poly g;
        bool any = false;
        for (const Poly& c : diff) {
            if (c.is_zero()) continue;
            any = true;
            g = g.is_zero() ? c : Poly::gcd(g, c);
            if (g.degree() == 0) break;
        }
        if (!any) {
            out.continuous_family = true;
            return out;
        }
        if (g.degree() > 0) {
            g = strip_c_power(g).squarefree_part();
            RootList cs = find_roots(g, opt.tower_depth_cap);
            if (!cs.complete) out.complete = false;
            for (const auto& [cpt, m] : cs.roots) {
                if (cpt.is_infinity() || cpt.finite_value().is_zero()) continue;
                MoebiusMap sig_hat = MoebiusMap::inversion_scaled(cpt.finite_value());
                if (!(pre_compose(ahat, sig_hat) == ahat)) continue;
                out.maps.push_back(moeb_compose(w, moeb_compose(sig_hat, winv)));
            }
        }
        return out;
    }

    // Gamma mode: ahat . sigma = beta . ahat . beta^-1 over the four family
    // combinations; the beta-form reduction is complete only when the critical
    // points of ahat are exactly {0, inf}.
    out.complete = axis_is_critical_set(ahat);
    std::set<MoebiusMap> found;
    for (bool sigma_inverted : {false, true}) {
        ParamFamily lhs = lhs_family(ahat, sigma_inverted);
        for (bool beta_inverted : {false, true}) {
            ParamFamily rhs = rhs_family(ahat, beta_inverted);
            std::vector<BiPoly> constraints = cross_constraints(lhs, rhs);
            BivariateSolutions sols = solve_cd_system(constraints, opt.tower_depth_cap);
            if (sols.continuous) out.continuous_family = true;
            if (!sols.complete) out.complete = false;
            for (const auto& [cv, dv] : sols.cd) {
                MoebiusMap sig_hat = sigma_inverted ? MoebiusMap::inversion_scaled(cv)
                                                    : MoebiusMap::scaling(cv);
                MoebiusMap beta = beta_inverted ? MoebiusMap::inversion_scaled(dv)
                                                : MoebiusMap::scaling(dv);
                RatFunc lhs_f = pre_compose(ahat, sig_hat);
                RatFunc rhs_f = conjugate_rf(ahat, beta.inverse());
                if (!(lhs_f == rhs_f)) continue;
                found.insert(moeb_compose(w, moeb_compose(sig_hat, winv)));
            }
        }
    }
    out.maps.assign(found.begin(), found.end());
    return out;
}

// ---------------------------------------------------------------------------
// Level sweep shared by the iterate-level operations

namespace {

constexpr int kMebDegreeCap = 100;   // meb enumeration on iterates up to this degree
constexpr int kSwapDegreeCap = 40;   // gamma-mode parametric solves up to this degree
constexpr int kHarvestDegreeCap = 120; // no new candidate generation past this degree
constexpr std::size_t kMaxAxisPoints = 14;

struct Sweep {
    const RatFunc& a;
    EngineOptions opt;
    int k_requested;
    int k_feasible;
    std::vector<RatFunc> iterates; // iterates[k-1] = a^(k)
    std::set<MoebiusMap> pool_set;
    std::vector<std::pair<MoebiusMap, Provenance>> pool;
    std::map<int, GroupReport> level_reports; // meb reports per harvested level
    GroupReport base_report;
    bool base_is_quasi = false;

    Sweep(const RatFunc& f, int k_max, const EngineOptions& o) : a(f), opt(o) {
        k_requested = k_max;
        const int n = std::max(a.degree(), 2);
        long pow = 1;
        int k = 0;
        while (k < k_max && pow <= opt.degree_budget / n) {
            pow *= n;
            ++k;
        }
        k_feasible = std::max(1, k);
    }

    const RatFunc& level(int k) {
        while (int(iterates.size()) < k)
            iterates.push_back(iterates.empty() ? a : iterates.back().compose(a));
        return iterates[std::size_t(k - 1)];
    }

    void add(const MoebiusMap& m, Provenance p) {
        if (pool_set.insert(m).second) pool.emplace_back(m, p);
    }

    // Rotations and swaps through the coordinate axis (0, inf); these need no
    // fixed point, only the support structure.
    void harvest_visible_axis(const RatFunc& f, bool want_gamma_swaps) {
        HomozygousOrder ho = homozygous_order(f);
        if (!ho.power_form && ho.l >= 2) {
            auto zeta = root_of_unity(ho.l, f.tower(), opt.tower_depth_cap);
            if (zeta) {
                TowerElement acc = *zeta;
                for (int j = 1; j < ho.l; ++j) {
                    add(MoebiusMap::scaling(acc), Provenance::AxisSupport);
                    acc = acc * *zeta;
                }
            }
        }
        SpherePoint zero((Rat(0)));
        SpherePoint inf = SpherePoint::infinity(f.tower());
        try {
            SwapSolutions sig = swap_solutions(f, zero, inf, SwapMode::Sigma, opt);
            for (const auto& m : sig.maps) add(m, Provenance::SwapSolve);
            if (want_gamma_swaps && f.degree() <= kSwapDegreeCap) {
                SwapSolutions gam = swap_solutions(f, zero, inf, SwapMode::Gamma, opt);
                for (const auto& m : gam.maps) add(m, Provenance::SwapSolve);
            }
        } catch (const Error&) {
        }
    }

    void harvest(int k, bool want_gamma_swaps) {
        const RatFunc& f = level(k);
        if (f.degree() > kHarvestDegreeCap) return;
        GroupReport rep;
        if (f.degree() <= kMebDegreeCap) {
            rep = group_of(f, opt);
            if (rep.quasi.cls == QuasiClass::NotQuasiPower)
                for (const auto& c : rep.gamma_table) add(c.sigma, Provenance::BaseMeb);
        }
        level_reports[k] = rep;
        if (k == 1) {
            base_report = rep;
            base_is_quasi = rep.quasi.cls != QuasiClass::NotQuasiPower;
        }

        harvest_visible_axis(f, want_gamma_swaps);

        // axis machinery on representable fixed-point pairs
        FixedPointList fps = fixed_points(f, opt.tower_depth_cap);
        std::vector<SpherePoint> pts;
        for (const auto& [p, m] : fps.points) pts.push_back(p);
        if (pts.size() > kMaxAxisPoints) pts.resize(kMaxAxisPoints);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (i == j) continue;
                try {
                    AxisGroupResult ax = axis_group(f, pts[i], pts[j], opt);
                    for (const auto& m : ax.group.elements)
                        if (!m.is_identity()) add(m, Provenance::AxisSupport);
                } catch (const Error&) {
                    // axis not representable or degenerate; skip
                }
                if (i < j) {
                    try {
                        SwapSolutions sig =
                            swap_solutions(f, pts[i], pts[j], SwapMode::Sigma, opt);
                        for (const auto& m : sig.maps) add(m, Provenance::SwapSolve);
                        if (want_gamma_swaps && f.degree() <= kSwapDegreeCap) {
                            SwapSolutions gam =
                                swap_solutions(f, pts[i], pts[j], SwapMode::Gamma, opt);
                            for (const auto& m : gam.maps) add(m, Provenance::SwapSolve);
                        }
                    } catch (const Error&) {
                    }
                }
            }
        }
    }

    // kross shortcut candidates from the base-level group
    void add_conjugacy_shortcut() {
        if (base_is_quasi || base_report.gamma_table.empty()) return;
        for (const auto& c : base_report.gamma_table)
            add(moeb_compose(c.sigma, c.nu.inverse()), Provenance::ConjugacyShortcut);
    }

    std::vector<MoebiusMap> pool_maps() const {
        std::vector<MoebiusMap> v;
        v.reserve(pool.size());
        for (const auto& [m, p] : pool) v.push_back(m);
        return v;
    }
};

} // namespace

IterateGroupReport iterate_group(const RatFunc& a, int k, const EngineOptions& opt) {
    if (a.degree() < 2) throw Error("iterate_group needs degree >= 2");
    Sweep sw(a, k, opt);
    if (k > sw.k_feasible) {
        long needed = 1;
        for (int i = 0; i < k; ++i) needed *= a.degree();
        throw DegreeBudgetExceeded(needed, opt.degree_budget);
    }
    for (int j = 1; j <= k; ++j) sw.harvest(j, /*want_gamma_swaps=*/true);
    sw.add_conjugacy_shortcut();

    IterateGroupReport out;
    out.k = k;
    out.iterate = sw.level(k);
    GroupReport rep = sw.level_reports.count(k) ? sw.level_reports[k] : GroupReport{};
    if (out.iterate.degree() <= kMebDegreeCap &&
        rep.quasi.cls != QuasiClass::NotQuasiPower) {
        out.report = rep;
        return out;
    }
    // extend the meb-level report with pool candidates verified on the iterate
    std::set<MoebiusMap> have;
    for (const auto& c : rep.gamma_table) have.insert(c.sigma);
    const RatFunc& f = out.iterate;
    for (const auto& [m, prov] : sw.pool) {
        if (have.count(m)) continue;
        auto cert = verify_pair(f, m);
        if (!cert) continue;
        have.insert(m);
        rep.gamma_table.push_back(*cert);
    }
    // rebuild groups from the extended table
    std::vector<MoebiusMap> sigmas, kernel, aut, image;
    for (const auto& c : rep.gamma_table) {
        sigmas.push_back(c.sigma);
        if (c.nu.is_identity()) kernel.push_back(c.sigma);
        if (c.nu == c.sigma) aut.push_back(c.sigma);
        image.push_back(c.nu);
    }
    rep.g = group_closure(sigmas, opt.closure_cap);
    std::vector<MoebiusMap> closure_added;
    for (const MoebiusMap& m : rep.g.elements) {
        if (have.count(m)) continue;
        auto cert = verify_pair(f, m);
        if (!cert) throw Error("closure produced an unverifiable symmetry");
        rep.gamma_table.push_back(*cert);
        have.insert(m);
        closure_added.push_back(m);
        if (cert->nu.is_identity()) kernel.push_back(cert->sigma);
        if (cert->nu == cert->sigma) aut.push_back(cert->sigma);
        image.push_back(cert->nu);
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    rep.sigma_group = group_closure(kernel, opt.closure_cap);
    rep.aut_group = group_closure(aut, opt.closure_cap);
    rep.ghat = group_closure(image, opt.closure_cap);
    rep.burnside_ok = rep.g.order() == rep.ghat.order() * rep.sigma_group.order();
    out.report = rep;

    for (const auto& [m, prov] : sw.pool)
        if (have.count(m)) out.provenance.emplace_back(m, prov);
    for (const auto& m : closure_added) out.provenance.emplace_back(m, Provenance::Closure);
    long nk = 1;
    for (int i = 0; i < k; ++i) nk *= a.degree();
    out.sigma_divides_degree = rep.sigma_group.order() > 0 &&
                               nk % long(rep.sigma_group.order()) == 0;
    return out;
}

// ---------------------------------------------------------------------------
// Limit groups

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::BaseMeb: return "base-meb";
        case Provenance::AxisSupport: return "axis-support";
        case Provenance::SwapSolve: return "swap-solve";
        case Provenance::ConjugacyShortcut: return "conjugacy-shortcut";
        case Provenance::Closure: return "closure";
        case Provenance::Lifted: return "lifted";
        case Provenance::Thm42: return "thm42-inclusion";
    }
    return "?";
}

std::string limit_status_name(LimitStatus s) {
    switch (s) {
        case LimitStatus::Stabilized: return "Stabilized";
        case LimitStatus::BudgetExhausted: return "BudgetExhausted";
        case LimitStatus::InfinitePowerMap: return "InfinitePowerMap";
    }
    return "?";
}

namespace {

bool prime_divides(int p, int n) { return n % p == 0; }

// A4, S4, A5 all excluded as candidate limit groups when their orders carry a
// prime the degree misses (|Sigma(A^(k))| divides n^k).
bool exceptional_groups_excluded(int n) {
    for (int p : {2, 3}) // 12 and 24; 60 also contains 3
        if (!prime_divides(p, n)) return true;
    return false;
}

struct EvidenceOfIndecomposability {
    bool have = false;
    std::string source;
};

EvidenceOfIndecomposability indecomposability_evidence(const RatFunc& a, bool asserted) {
    EvidenceOfIndecomposability e;
    if (asserted) {
        e.have = true;
        e.source = "asserted";
        return e;
    }
    const int n = a.degree();
    bool prime = n >= 2;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) prime = false;
    if (prime) {
        e.have = true;
        e.source = "prime-degree";
        return e;
    }
    if (indecomposable_by_multiplicity(a)) {
        e.have = true;
        e.source = "multiplicity-obstruction";
    }
    return e;
}

// the maximal-order rotation of a cyclic/dihedral group and its fixed pair
std::optional<std::pair<MoebiusMap, std::vector<SpherePoint>>> group_axis(
    const FiniteMoebiusGroup& g) {
    int want = g.cls == GroupClass::Cyclic ? g.l : (g.cls == GroupClass::Dihedral ? g.l : 0);
    if (want < 3) return std::nullopt;
    for (const auto& m : g.elements) {
        auto o = m.order(int(g.order()));
        if (o && *o == want) {
            auto fps = moebius_fixed_points(m);
            if (fps.size() == 2) return std::make_pair(m, fps);
        }
    }
    return std::nullopt;
}

} // namespace

namespace {

// qes0: an element of order > 5 with a representable fixed pair, one point of
// which is fixed by the corresponding iterate, caps the limit group at twice
// the axis order.
bool qes0_cap_reached(Sweep& sw, const FiniteMoebiusGroup& found,
                      const std::vector<LimitCertificate>& certs, const EngineOptions& opt) {
    for (const auto& cert : certs) {
        auto o = cert.sigma.order(int(std::max<std::size_t>(found.order(), 60)));
        if (!o || *o <= 5) continue;
        auto fps = moebius_fixed_points(cert.sigma);
        if (fps.size() != 2) continue;
        for (int which = 0; which < 2; ++which) {
            const SpherePoint& z0 = fps[std::size_t(which)];
            const SpherePoint& z1 = fps[std::size_t(1 - which)];
            for (int k : {cert.level, 2 * cert.level}) {
                if (k > sw.k_feasible) break;
                const RatFunc& f = sw.level(k);
                if (!(f.eval(z0) == z0)) continue;
                try {
                    AxisGroupResult axg = axis_group(f, z0, z1, opt);
                    if (!axg.order.power_form &&
                        found.order() == 2 * std::size_t(axg.order.l))
                        return true;
                } catch (const Error&) {
                }
                break;
            }
        }
    }
    return false;
}

void finalize_trace(LimitGroupResult& out, Sweep& sw, const std::vector<MoebiusMap>& pool,
                    bool aut_mode, std::map<MoebiusMap, int>& first_level,
                    int levels_computed, const EngineOptions& opt) {
    // Recompute the trace against the final pool over every materialized level
    // and extend it while the iterate stays cheap.
    out.level_trace.clear();
    first_level.clear();
    int k = 1;
    for (; k <= levels_computed; ++k) {
        FiniteMoebiusGroup gk = subgroup_satisfying(sw.level(k), pool, aut_mode, opt);
        for (const auto& m : gk.elements)
            if (!first_level.count(m)) first_level[m] = k;
        out.level_trace.emplace_back(k, gk);
    }
    for (; k <= sw.k_feasible; ++k) {
        long next_deg = long(sw.level(k - 1).degree()) * sw.a.degree();
        if (next_deg > kHarvestDegreeCap) break;
        FiniteMoebiusGroup gk = subgroup_satisfying(sw.level(k), pool, aut_mode, opt);
        for (const auto& m : gk.elements)
            if (!first_level.count(m)) first_level[m] = k;
        out.level_trace.emplace_back(k, gk);
    }
}

} // namespace

LimitGroupResult sigma_infinity(const RatFunc& a, int k_max, const EngineOptions& opt,
                                bool assert_indecomposable) {
    if (a.degree() < 2) throw Error("sigma_infinity needs degree >= 2");
    LimitGroupResult out;
    QuasiPowerInfo qp = quasi_power_class(a, opt);
    if (qp.cls == QuasiClass::PowerMapConjugate) {
        out.status = LimitStatus::InfinitePowerMap;
        out.group = group_closure({MoebiusMap::identity(a.tower())}, opt.closure_cap);
        out.complete = true;
        out.completeness_rule = "power-map-family";
        return out;
    }
    EvidenceOfIndecomposability ind = indecomposability_evidence(a, assert_indecomposable);
    out.indecomposable_used = ind.have;

    Sweep sw(a, k_max, opt);
    auto try_complete = [&](const FiniteMoebiusGroup& found,
                            const std::vector<LimitCertificate>& certs) -> std::string {
        if (ind.have && !sw.base_is_quasi && sw.base_report.complete) {
            const GroupReport& b = sw.base_report;
            if (b.ghat.order() == 1 && found.same_elements(b.sigma_group))
                return "indecomposable-ghat-trivial";
            if (b.g.same_elements(b.aut_group) && found.order() == 1)
                return "indecomposable-g-equals-aut";
            std::set<MoebiusMap> kross;
            for (const auto& c : b.gamma_table)
                kross.insert(moeb_compose(c.sigma, c.nu.inverse()));
            bool all_found = true;
            for (const auto& m : kross)
                if (!found.contains(m)) all_found = false;
            if (all_found) return "conjugacy-candidates-exhausted";
        }
        if (ind.have && exceptional_groups_excluded(a.degree())) {
            auto ax = group_axis(found);
            if (ax) {
                try {
                    SwapSolutions gam =
                        swap_solutions(a, ax->second[0], ax->second[1], SwapMode::Gamma, opt);
                    if (gam.complete && !gam.continuous_family) {
                        bool inside = true;
                        for (const auto& m : gam.maps)
                            if (!found.contains(m)) inside = false;
                        if (inside) return "axis-conjugacy-sieve";
                    }
                } catch (const Error&) {
                }
            }
        }
        if (qes0_cap_reached(sw, found, certs, opt)) return "qes0-axis-cap";
        return "";
    };

    std::map<MoebiusMap, int> first_level;
    int levels_computed = 0;
    for (int k = 1; k <= sw.k_feasible; ++k) {
        sw.harvest(k, /*want_gamma_swaps=*/true);
        if (k == 1) sw.add_conjugacy_shortcut();
        levels_computed = k;
        FiniteMoebiusGroup gk = subgroup_satisfying(sw.level(k), sw.pool_maps(),
                                                    /*aut=*/false, opt);
        std::vector<LimitCertificate> certs;
        for (const auto& m : gk.elements)
            if (!m.is_identity())
                certs.push_back({m, MoebiusMap::identity(m.tower()), k});
        std::string rule = try_complete(gk, certs);
        if (!rule.empty()) {
            out.complete = true;
            out.completeness_rule = rule;
            break;
        }
    }
    finalize_trace(out, sw, sw.pool_maps(), /*aut=*/false, first_level, levels_computed, opt);
    out.group = out.level_trace.back().second;
    for (const auto& [m, k] : first_level)
        if (!m.is_identity())
            out.certificates.push_back({m, MoebiusMap::identity(m.tower()), k});
    out.stabilized_at = out.level_trace.back().first;
    for (int i = int(out.level_trace.size()) - 1; i >= 1; --i) {
        if (out.level_trace[std::size_t(i - 1)].second.same_elements(out.group))
            out.stabilized_at = out.level_trace[std::size_t(i - 1)].first;
        else
            break;
    }
    if (out.complete && out.completeness_rule.empty()) out.completeness_rule = "unspecified";
    bool grew_at_end =
        out.level_trace.size() >= 2 &&
        !out.level_trace[out.level_trace.size() - 2].second.same_elements(out.group);
    out.status = (out.complete || !grew_at_end) ? LimitStatus::Stabilized
                                                : LimitStatus::BudgetExhausted;
    if (sw.k_feasible < k_max && !out.complete) out.status = LimitStatus::BudgetExhausted;
    return out;
}

LimitGroupResult aut_infinity(const RatFunc& a, int k_max, const EngineOptions& opt) {
    if (a.degree() < 2) throw Error("aut_infinity needs degree >= 2");
    LimitGroupResult out;
    QuasiPowerInfo qp = quasi_power_class(a, opt);
    if (qp.cls == QuasiClass::PowerMapConjugate)
        throw Error("aut_infinity is undefined for power-map conjugates");
    Sweep sw(a, k_max, opt);

    // Theorem-4.2 candidates: nu with nu(c(A)) inside c(A^(2)).
    ValueLocus l1 = critical_value_locus(a);
    ValueLocus l2 = iterate_critical_locus(a, 2);
    bool thm42_enumerable = false;
    {
        std::vector<SpherePoint> src, dst;
        RootList r1 = find_roots(l1.finite, opt.tower_depth_cap);
        RootList r2 = find_roots(l2.finite, opt.tower_depth_cap);
        for (const auto& [p, m] : r1.roots) src.push_back(p);
        if (l1.infinite) src.push_back(SpherePoint::infinity(a.tower()));
        for (const auto& [p, m] : r2.roots) dst.push_back(p);
        if (l2.infinite) dst.push_back(SpherePoint::infinity(a.tower()));
        thm42_enumerable = r1.complete && r2.complete && src.size() >= 3;
        if (src.size() >= 3 && dst.size() >= 3) {
            std::array<SpherePoint, 3> s3{src[0], src[1], src[2]};
            for (std::size_t i = 0; i < dst.size(); ++i)
                for (std::size_t j = 0; j < dst.size(); ++j)
                    for (std::size_t k2 = 0; k2 < dst.size(); ++k2) {
                        if (i == j || j == k2 || i == k2) continue;
                        std::array<SpherePoint, 3> d3{dst[i], dst[j], dst[k2]};
                        MoebiusMap nu;
                        try {
                            nu = moebius_from_three_points(s3, d3);
                        } catch (const Error&) {
                            continue;
                        }
                        if (moebius_maps_locus_into(nu, l1, l2))
                            sw.add(nu, Provenance::Thm42);
                    }
        }
    }

    std::map<MoebiusMap, int> first_level;
    int levels_computed = 0;
    for (int k = 1; k <= sw.k_feasible; ++k) {
        sw.harvest(k, /*want_gamma_swaps=*/true);
        if (k == 1) sw.add_conjugacy_shortcut();
        levels_computed = k;
        FiniteMoebiusGroup gk = subgroup_satisfying(sw.level(k), sw.pool_maps(),
                                                    /*aut=*/true, opt);
        std::vector<LimitCertificate> certs;
        for (const auto& m : gk.elements)
            if (!m.is_identity()) certs.push_back({m, m, k});
        if (qes0_cap_reached(sw, gk, certs, opt)) {
            out.complete = true;
            out.completeness_rule = "qes0-axis-cap";
            break;
        }
    }
    finalize_trace(out, sw, sw.pool_maps(), /*aut=*/true, first_level, levels_computed, opt);

    // Aut(A^(k)) is not monotone in k; the limit is the closure of the union,
    // certified element-wise at a level where the identity holds.
    std::vector<MoebiusMap> all;
    for (const auto& [m, k] : first_level) all.push_back(m);
    FiniteMoebiusGroup closure = group_closure(all, opt.closure_cap);
    bool closure_verified = true;
    std::vector<LimitCertificate> closure_certs;
    for (const auto& m : closure.elements) {
        if (m.is_identity()) continue;
        auto it = first_level.find(m);
        int lvl = it != first_level.end() ? it->second : 0;
        for (int k = 1; k <= int(out.level_trace.size()) && lvl == 0; ++k)
            if (pre_compose(sw.level(k), m) == post_compose(m, sw.level(k))) lvl = k;
        if (lvl == 0) {
            closure_verified = false;
            break;
        }
        closure_certs.push_back({m, m, lvl});
    }
    if (closure_verified) {
        out.group = closure;
        out.certificates = std::move(closure_certs);
    } else {
        // a combined element commutes only past the sweep horizon; report the
        // largest fully certified level group instead
        out.group = out.level_trace.front().second;
        for (const auto& [k, g] : out.level_trace)
            if (g.order() > out.group.order()) out.group = g;
        for (const auto& m : out.group.elements)
            if (!m.is_identity()) out.certificates.push_back({m, m, first_level.at(m)});
        out.complete = false;
    }

    out.stabilized_at = out.level_trace.back().first;
    for (int i = int(out.level_trace.size()) - 1; i >= 1; --i) {
        if (out.level_trace[std::size_t(i - 1)].second.same_elements(
                out.level_trace.back().second))
            out.stabilized_at = out.level_trace[std::size_t(i - 1)].first;
        else
            break;
    }
    if (!out.complete && qes0_cap_reached(sw, out.group, out.certificates, opt)) {
        out.complete = true;
        out.completeness_rule = "qes0-axis-cap";
    }
    if (!out.complete && thm42_enumerable) {
        // every inclusion-compatible nu was tested at every computed level; if
        // each is already decided into the group, nothing new can appear
        bool all_in = true;
        for (const auto& [m, prov] : sw.pool) {
            if (prov != Provenance::Thm42) continue;
            if (!out.group.contains(m)) all_in = false;
        }
        if (all_in) {
            out.complete = true;
            out.completeness_rule = "thm42-candidates-exhausted";
        }
    }

    bool grew_at_end =
        out.level_trace.size() >= 2 &&
        !out.level_trace[out.level_trace.size() - 2].second.same_elements(
            out.level_trace.back().second);
    out.status = (out.complete || !grew_at_end) ? LimitStatus::Stabilized
                                                : LimitStatus::BudgetExhausted;
    if (sw.k_feasible < k_max && !out.complete) out.status = LimitStatus::BudgetExhausted;
    return out;
}

std::vector<SElement> s_set(const RatFunc& a, int k_max, const EngineOptions& opt) {
    if (a.degree() < 2) throw Error("s_set needs degree >= 2");
    QuasiPowerInfo qp = quasi_power_class(a, opt);
    if (qp.cls != QuasiClass::NotQuasiPower)
        throw Error("s_set requires a function that is not a quasi-power");
    ValueLocus l1 = critical_value_locus(a);
    ValueLocus l2 = iterate_critical_locus(a, 2);
    std::vector<SElement> out;
    std::set<MoebiusMap> seen;
    for (int k = 1; k <= k_max; ++k) {
        IterateGroupReport rep = iterate_group(a, k, opt);
        if (rep.report.quasi.cls != QuasiClass::NotQuasiPower) continue;
        for (const auto& nu : rep.report.ghat.elements) {
            if (!seen.insert(nu).second) continue;
            if (!moebius_maps_locus_into(nu, l1, l2))
                throw Error("S(A) element violates the critical-value inclusion");
            out.push_back({nu, k});
        }
    }
    return out;
}

std::optional<int> shares_iterate(const RatFunc& a, const RatFunc& b, int k_max,
                                  const EngineOptions& opt) {
    RatFunc fa = a, fb = b;
    for (int k = 1; k <= k_max; ++k) {
        long da = fa.degree(), db = fb.degree();
        if (da > opt.degree_budget || db > opt.degree_budget)
            throw DegreeBudgetExceeded(std::max(da, db), opt.degree_budget);
        if (fa == fb) return k;
        if (k < k_max) {
            fa = fa.compose(a);
            fb = fb.compose(b);
        }
    }
    return std::nullopt;
}

Poly chebyshev(int n) {
    if (n < 1) throw Error("chebyshev needs n >= 1");
    Tower t;
    std::vector<TowerElement> coeffs(std::size_t(n) + 1, TowerElement(Rat(0), t));
    for (int k = 0; k <= n / 2; ++k) {
        // (n/2) * (-1)^k (n-k-1)! / (k! (n-2k)!) * 2^(n-2k) x^(n-2k)
        Int num = 1;
        for (int i = 2; i <= n - k - 1; ++i) num *= i;
        Int den = 1;
        for (int i = 2; i <= k; ++i) den *= i;
        for (int i = 2; i <= n - 2 * k; ++i) den *= i;
        Rat c(num * Int(n), den * 2);
        Int two_pow = 1;
        for (int i = 0; i < n - 2 * k; ++i) two_pow *= 2;
        c *= Rat(two_pow);
        if (k % 2 == 1) c = -c;
        c.canonicalize();
        coeffs[std::size_t(n - 2 * k)] = TowerElement(c, t);
    }
    return Poly::from_coeffs(coeffs);
}

NormalFormResult normal_form(const Poly& p, const EngineOptions& opt) {
    const int n = p.degree();
    if (n < 2) throw Error("normal form needs degree >= 2");
    TowerElement lc = p.leading();
    std::optional<TowerElement> alpha;
    if (n == 2) {
        alpha = lc.inverse();
    } else {
        // alpha^(n-1) = 1/lc
        std::function<std::optional<TowerElement>(const TowerElement&, int)> root =
            [&](const TowerElement& x, int m) -> std::optional<TowerElement> {
            if (m == 1) return x;
            if (m % 2 == 0) {
                auto h = root(x, m / 2);
                if (!h) return std::nullopt;
                return sqrt_in_tower(*h, SqrtPolicy::AdjoinRational, opt.tower_depth_cap);
            }
            if (x.is_rational()) {
                Rat r;
                if (rational_nth_root(x.rational_value(), unsigned(m), r))
                    return TowerElement(r, x.tower());
            }
            return std::nullopt;
        };
        alpha = root(lc.inverse(), n - 1);
    }
    if (!alpha) throw RootNotInTower("degree-" + std::to_string(n - 1) + " root of " +
                                     lc.inverse().str());
    const Tower& t = alpha->tower();
    // shift kills the subleading coefficient
    TowerElement beta = -(p.coeff(n - 1)) / (TowerElement(Rat(n), t) * lc);
    // mu = alpha z + beta
    MoebiusMap mu(*alpha, beta, TowerElement(Rat(0), t), TowerElement(Rat(1), t));
    RatFunc conj = conjugate_rf(RatFunc(p), mu);
    if (!conj.is_polynomial()) throw Error("affine conjugation left a denominator");
    NormalFormResult out;
    out.poly = conj.num();
    out.mu = mu;
    assert(out.poly.degree() == n);
    assert(out.poly.leading() == TowerElement(Rat(1), out.poly.tower()));
    assert(out.poly.coeff(n - 1).is_zero());
    return out;
}

std::vector<MoebiusMap> gamma_set(const GroupReport& rep) {
    std::vector<MoebiusMap> out;
    for (const auto& c : rep.gamma_table) {
        MoebiusMap pow = MoebiusMap::identity(c.sigma.tower());
        bool in = false;
        for (std::size_t l = 0; l <= rep.g.order(); ++l) {
            if (pow == c.nu) {
                in = true;
                break;
            }
            pow = moeb_compose(pow, c.sigma);
        }
        if (in) out.push_back(c.sigma);
    }
    return out;
}

} // namespace ratsym
