#include "ratsym/symmetry.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>

namespace ratsym {

namespace {

// m-th root within the tower, best effort: exact rational roots plus sqrt
// chains for the 2-power part.
std::optional<TowerElement> nth_root_in_tower(const TowerElement& x, int m, int depth_cap) {
    if (m <= 0) return std::nullopt;
    if (m == 1) return x;
    if (m % 2 == 0) {
        auto h = nth_root_in_tower(x, m / 2, depth_cap);
        if (!h) return std::nullopt;
        return sqrt_in_tower(*h, SqrtPolicy::AdjoinRational, depth_cap);
    }
    if (x.is_rational()) {
        Rat r;
        if (rational_nth_root(x.rational_value(), unsigned(m), r))
            return TowerElement(r, x.tower());
    }
    return std::nullopt;
}

} // namespace

QuasiPowerInfo quasi_power_class(const RatFunc& a, const EngineOptions& opt) {
    if (a.degree() < 2) throw Error("quasi-power classification needs degree >= 2");
    QuasiPowerInfo info;
    if (!is_quasi_power(a)) {
        info.cls = QuasiClass::NotQuasiPower;
        return info;
    }
    RatFunc a2 = a.iterate(2, opt.degree_budget);
    if (!is_quasi_power(a2)) {
        info.cls = QuasiClass::QuasiPower;
        return info;
    }
    info.cls = QuasiClass::PowerMapConjugate;
    const int n = a.degree();
    // The two critical points carry full multiplicity n; A permutes them.
    std::vector<SpherePoint> pts;
    Poly wsf = a.derivative_numerator().squarefree_part();
    RootList rl = find_roots(wsf, opt.tower_depth_cap);
    for (const auto& [p, m] : rl.roots) pts.push_back(p);
    if (a.local_multiplicity(SpherePoint::infinity(a.tower())) == n)
        pts.push_back(SpherePoint::infinity(a.tower()));
    if (pts.size() != 2 || !rl.complete) {
        info.power = n; // sign unknown without the points; leave conjugator empty
        return info;
    }
    SpherePoint p = pts[0], q = pts[1];
    bool fixes = a.eval(p) == p && a.eval(q) == q;
    bool swaps = a.eval(p) == q && a.eval(q) == p;
    assert(fixes || swaps);
    info.power = fixes ? n : -n;
    // mu sends p -> 0, q -> inf; then mu . A . mu^-1 = c z^{+-n}.
    MoebiusMap mu0(p.y(), -p.x(), q.y(), -q.x());
    RatFunc conj = post_compose(mu0, pre_compose(a, mu0.inverse()));
    TowerElement c = fixes ? conj.num().leading() : conj.num().coeff(0);
    // rescale by d z: for z^n need d^(n-1) = c; for z^-n need d^(n+1) = 1/c.
    std::optional<TowerElement> d =
        fixes ? nth_root_in_tower(c, n - 1, opt.tower_depth_cap)
              : nth_root_in_tower(c.inverse(), n + 1, opt.tower_depth_cap);
    if (d) {
        MoebiusMap scale = MoebiusMap::scaling(*d);
        MoebiusMap m = moeb_compose(scale, mu0); // z -> d * mu0(z)
        RatFunc check = post_compose(m, pre_compose(a, m.inverse()));
        Poly z = Poly::variable(check.tower());
        RatFunc target = fixes ? RatFunc(z.pow(unsigned(n)))
                               : RatFunc(Poly(Rat(1), check.tower()), z.pow(unsigned(n)));
        if (check == target) info.conjugator = m.inverse(); // conj by m^-1: A = m^-1 z^n m
    }
    return info;
}

bool verify_certificate(const RatFunc& a, const SymmetryCertificate& c,
                        const EngineOptions& opt) {
    RatFunc f = c.level == 1 ? a : a.iterate(c.level, opt.degree_budget);
    return pre_compose(f, c.sigma) == post_compose(c.nu, f);
}

std::optional<SymmetryCertificate> verify_pair(const RatFunc& a, const MoebiusMap& sigma) {
    // three sample points with pairwise distinct images
    std::vector<SpherePoint> samples;
    samples.push_back(SpherePoint::infinity(a.tower()));
    samples.push_back(SpherePoint(Rat(0)));
    for (long v = 1; samples.size() < std::size_t(3 * a.degree() + 6); ++v) {
        samples.push_back(SpherePoint(Rat(v)));
        samples.push_back(SpherePoint(Rat(-v)));
    }
    std::array<SpherePoint, 3> src, dst;
    std::vector<SpherePoint> seen;
    int got = 0;
    for (const SpherePoint& p : samples) {
        SpherePoint ap = a.eval(p);
        if (std::find(seen.begin(), seen.end(), ap) != seen.end()) continue;
        seen.push_back(ap);
        src[std::size_t(got)] = ap;
        dst[std::size_t(got)] = a.eval(sigma.apply(p));
        if (++got == 3) break;
    }
    assert(got == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (dst[std::size_t(i)] == dst[std::size_t(j)]) return std::nullopt;
    MoebiusMap nu = moebius_from_three_points(src, dst);
    if (!(pre_compose(a, sigma) == post_compose(nu, a))) return std::nullopt;
    SymmetryCertificate cert;
    cert.sigma = sigma;
    cert.nu = nu;
    cert.level = 1;
    return cert;
}

// ---------------------------------------------------------------------------
// Candidate enumeration via fiber matching

namespace {

struct FiberForMatching {
    const FiberProfile* fp;
    // points grouped by multiplicity, each group sorted
    std::map<int, std::vector<SpherePoint>> groups;
    std::vector<int> signature;
};

std::size_t factorial(std::size_t n) {
    std::size_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

struct CorrespondenceEnumerator {
    std::vector<FiberForMatching> fibers;
    std::vector<std::vector<std::size_t>> signature_classes; // indices into fibers
    std::size_t cap;
    std::size_t count = 0;
    bool capped = false;
    std::set<MoebiusMap> found;

    void run() {
        std::vector<std::size_t> perm(fibers.size());
        std::iota(perm.begin(), perm.end(), 0);
        enumerate_value_bijections(0, perm);
    }

    void enumerate_value_bijections(std::size_t class_idx, std::vector<std::size_t>& perm) {
        if (capped) return;
        if (class_idx == signature_classes.size()) {
            std::vector<std::pair<SpherePoint, SpherePoint>> constraints;
            match_fibers(0, perm, constraints);
            return;
        }
        std::vector<std::size_t> cls = signature_classes[class_idx];
        std::sort(cls.begin(), cls.end());
        std::vector<std::size_t> images = cls;
        do {
            for (std::size_t i = 0; i < cls.size(); ++i) perm[cls[i]] = images[i];
            enumerate_value_bijections(class_idx + 1, perm);
            if (capped) return;
        } while (std::next_permutation(images.begin(), images.end()));
    }

    void match_fibers(std::size_t fiber_idx, const std::vector<std::size_t>& perm,
                      std::vector<std::pair<SpherePoint, SpherePoint>>& constraints) {
        if (capped) return;
        if (fiber_idx == fibers.size()) {
            finish(constraints);
            return;
        }
        const FiberForMatching& src = fibers[fiber_idx];
        const FiberForMatching& dst = fibers[perm[fiber_idx]];
        match_groups(src.groups.begin(), src, dst, fiber_idx, perm, constraints);
    }

    void match_groups(std::map<int, std::vector<SpherePoint>>::const_iterator it,
                      const FiberForMatching& src, const FiberForMatching& dst,
                      std::size_t fiber_idx, const std::vector<std::size_t>& perm,
                      std::vector<std::pair<SpherePoint, SpherePoint>>& constraints) {
        if (capped) return;
        if (it == src.groups.end()) {
            match_fibers(fiber_idx + 1, perm, constraints);
            return;
        }
        const auto& [mult, src_pts] = *it;
        const auto& dst_pts = dst.groups.at(mult);
        assert(src_pts.size() == dst_pts.size());
        std::vector<std::size_t> idx(dst_pts.size());
        std::iota(idx.begin(), idx.end(), 0);
        auto next_it = std::next(it);
        do {
            std::size_t base = constraints.size();
            for (std::size_t i = 0; i < src_pts.size(); ++i)
                constraints.emplace_back(src_pts[i], dst_pts[idx[i]]);
            match_groups(next_it, src, dst, fiber_idx, perm, constraints);
            constraints.resize(base);
            if (capped) return;
        } while (std::next_permutation(idx.begin(), idx.end()));
    }

    void finish(const std::vector<std::pair<SpherePoint, SpherePoint>>& constraints) {
        if (++count > cap) {
            capped = true;
            return;
        }
        if (constraints.size() < 3) return;
        std::array<SpherePoint, 3> src{constraints[0].first, constraints[1].first,
                                       constraints[2].first};
        std::array<SpherePoint, 3> dst{constraints[0].second, constraints[1].second,
                                       constraints[2].second};
        MoebiusMap m;
        try {
            m = moebius_from_three_points(src, dst);
        } catch (const DegenerateTriple&) {
            return;
        }
        for (std::size_t i = 3; i < constraints.size(); ++i)
            if (!(m.apply(constraints[i].first) == constraints[i].second)) return;
        found.insert(m);
    }
};

} // namespace

CandidateList candidate_sigmas(const RatFunc& a, const CriticalData& cd,
                               const EngineOptions& opt) {
    CandidateList out;
    CorrespondenceEnumerator en;
    en.cap = opt.correspondence_cap;
    std::size_t usable_points = 0;
    for (const FiberProfile& fp : cd.fibers) {
        if (!fp.exact) continue;
        FiberForMatching fm;
        fm.fp = &fp;
        fm.signature = fp.signature;
        for (const auto& [pt, m] : fp.points) fm.groups[m].push_back(pt);
        for (auto& [m, v] : fm.groups) std::sort(v.begin(), v.end());
        usable_points += fp.points.size();
        en.fibers.push_back(std::move(fm));
    }
    // order fibers so the most constrained (most distinct multiplicities,
    // fewest matchings) come first, mirroring the hand computation
    std::sort(en.fibers.begin(), en.fibers.end(),
              [](const FiberForMatching& x, const FiberForMatching& y) {
                  auto cost = [](const FiberForMatching& f) {
                      std::size_t c = 1;
                      for (const auto& [m, v] : f.groups) c *= factorial(v.size());
                      return std::make_pair(c, -int(f.groups.size()));
                  };
                  return cost(x) < cost(y);
              });
    // group by signature
    std::map<std::vector<int>, std::vector<std::size_t>> by_sig;
    for (std::size_t i = 0; i < en.fibers.size(); ++i)
        by_sig[en.fibers[i].signature].push_back(i);
    for (auto& [sig, idxs] : by_sig) en.signature_classes.push_back(idxs);

    if (usable_points < 3) {
        out.complete = false;
        out.candidates.push_back(MoebiusMap::identity(a.tower()));
        return out;
    }
    en.run();
    en.found.insert(MoebiusMap::identity(a.tower()));
    out.candidates.assign(en.found.begin(), en.found.end());
    out.correspondences = en.count;
    out.complete = cd.exact && !en.capped;
    return out;
}

CandidateList candidate_sigmas(const RatFunc& a, const EngineOptions& opt) {
    CriticalData cd = critical_data(a, opt.tower_depth_cap);
    return candidate_sigmas(a, cd, opt);
}

// ---------------------------------------------------------------------------

std::optional<MoebiusMap> GroupReport::nu_for(const MoebiusMap& sigma) const {
    for (const auto& c : gamma_table)
        if (c.sigma == sigma) return c.nu;
    return std::nullopt;
}

GroupReport group_of(const RatFunc& a, const EngineOptions& opt) {
    if (a.degree() < 2) throw Error("group_of needs degree >= 2");
    GroupReport rep;
    rep.quasi = quasi_power_class(a, opt);
    if (rep.quasi.cls != QuasiClass::NotQuasiPower) {
        // G(A) is the continuous family alpha . c z^{+-1} . beta; reported
        // symbolically, no element list.
        rep.complete = true;
        return rep;
    }
    CriticalData cd = critical_data(a, opt.tower_depth_cap);
    CandidateList cands = candidate_sigmas(a, cd, opt);

    std::set<MoebiusMap> verified;
    std::vector<SymmetryCertificate> table;
    for (const MoebiusMap& m : cands.candidates) {
        auto cert = verify_pair(a, m);
        if (cert && verified.insert(m).second) table.push_back(*cert);
    }
    std::vector<MoebiusMap> elems(verified.begin(), verified.end());
    rep.g = group_closure(elems, opt.closure_cap);
    // closure can only add products of verified symmetries, which verify too;
    // certify anything new
    for (const MoebiusMap& m : rep.g.elements) {
        if (verified.count(m)) continue;
        auto cert = verify_pair(a, m);
        assert(cert);
        if (!cert) throw Error("closure produced an unverifiable symmetry");
        table.push_back(*cert);
        verified.insert(m);
    }
    rep.gamma_table = std::move(table);

    std::vector<MoebiusMap> kernel, aut, image;
    for (const auto& c : rep.gamma_table) {
        if (c.nu.is_identity()) kernel.push_back(c.sigma);
        if (c.nu == c.sigma) aut.push_back(c.sigma);
        image.push_back(c.nu);
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    rep.sigma_group = group_closure(kernel, opt.closure_cap);
    rep.aut_group = group_closure(aut, opt.closure_cap);
    rep.ghat = group_closure(image, opt.closure_cap);
    assert(rep.sigma_group.order() == kernel.size());
    assert(rep.ghat.order() == image.size());

    rep.complete = cands.complete;
    const int n = a.degree();
    rep.burnside_ok = rep.g.order() == rep.ghat.order() * rep.sigma_group.order();
    rep.order_bound_ok = rep.g.order() <= std::size_t(std::max(60, 2 * n));
    for (const MoebiusMap& m : rep.g.elements) {
        auto o = m.order(n);
        if (!o) rep.order_bound_ok = false;
    }
    rep.homomorphism_ok = true;
    for (const auto& c1 : rep.gamma_table) {
        for (const auto& c2 : rep.gamma_table) {
            MoebiusMap s12 = moeb_compose(c1.sigma, c2.sigma);
            auto nu12 = rep.nu_for(s12);
            if (!nu12 || !(*nu12 == moeb_compose(c1.nu, c2.nu))) {
                rep.homomorphism_ok = false;
                break;
            }
        }
        if (!rep.homomorphism_ok) break;
    }
    // unique-multiplicity point forces a cyclic group fixing it
    for (const auto& [mult, count] : cd.profile) {
        if (count != 1) continue;
        SpherePoint z0;
        bool have = false;
        for (const auto& [pt, m] : cd.critical_points)
            if (m == mult) {
                z0 = pt;
                have = true;
                break;
            }
        if (!have) continue;
        rep.unique_mult_fixed_point = z0;
        if (rep.g.cls != GroupClass::Cyclic) rep.cyclic_assert_ok = false;
        for (const MoebiusMap& m : rep.g.elements)
            if (!(m.apply(z0) == z0)) rep.cyclic_assert_ok = false;
        break;
    }
    return rep;
}

FiniteMoebiusGroup subgroup_satisfying(const RatFunc& f,
                                       const std::vector<MoebiusMap>& pool,
                                       bool aut_mode, const EngineOptions& opt) {
    std::set<MoebiusMap> good;
    good.insert(MoebiusMap::identity(f.tower()));
    for (const MoebiusMap& m : pool) {
        if (good.count(m)) continue;
        RatFunc lhs = pre_compose(f, m);
        RatFunc rhs = aut_mode ? post_compose(m, f) : f;
        if (lhs == rhs) good.insert(m);
    }
    std::vector<MoebiusMap> elems(good.begin(), good.end());
    return group_closure(elems, opt.closure_cap);
}

} // namespace ratsym
