#include "ratsym/moebius.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

namespace ratsym {

MoebiusMap::MoebiusMap()
    : e_{TowerElement(Rat(1)), TowerElement(Rat(0)), TowerElement(Rat(0)), TowerElement(Rat(1))} {}

MoebiusMap::MoebiusMap(TowerElement a, TowerElement b, TowerElement c, TowerElement d)
    : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {
    canonicalize();
}

MoebiusMap MoebiusMap::identity(const Tower& t) {
    return MoebiusMap(TowerElement(Rat(1), t), TowerElement(Rat(0), t),
                      TowerElement(Rat(0), t), TowerElement(Rat(1), t));
}

MoebiusMap MoebiusMap::scaling(const TowerElement& c) {
    const Tower& t = c.tower();
    return MoebiusMap(c, TowerElement(Rat(0), t), TowerElement(Rat(0), t),
                      TowerElement(Rat(1), t));
}

MoebiusMap MoebiusMap::inversion_scaled(const TowerElement& c) {
    const Tower& t = c.tower();
    return MoebiusMap(TowerElement(Rat(0), t), c, TowerElement(Rat(1), t),
                      TowerElement(Rat(0), t));
}

void MoebiusMap::canonicalize() {
    Tower t = e_[0].tower();
    for (int i = 1; i < 4; ++i) t = merge_towers(t, e_[i].tower());
    for (auto& x : e_) x = x.promoted_to(t);
    TowerElement det = e_[0] * e_[3] - e_[1] * e_[2];
    if (det.is_zero()) throw Error("singular moebius matrix");
    for (const auto& x : e_) {
        if (!x.is_zero()) {
            TowerElement inv = x.inverse();
            for (auto& y : e_) y = y * inv;
            break;
        }
    }
}

bool MoebiusMap::is_identity() const {
    return e_[1].is_zero() && e_[2].is_zero() && e_[0] == e_[3];
}

TowerElement MoebiusMap::determinant() const { return e_[0] * e_[3] - e_[1] * e_[2]; }

SpherePoint MoebiusMap::apply(const SpherePoint& p) const {
    TowerElement x = p.x(), y = p.y();
    return SpherePoint(e_[0] * x + e_[1] * y, e_[2] * x + e_[3] * y);
}

MoebiusMap MoebiusMap::inverse() const {
    return MoebiusMap(e_[3], -e_[1], -e_[2], e_[0]);
}

RatFunc MoebiusMap::to_ratfunc() const {
    Poly z = Poly::variable(tower());
    return RatFunc(z * e_[0] + Poly(e_[1]), z * e_[2] + Poly(e_[3]));
}

MoebiusMap MoebiusMap::from_ratfunc(const RatFunc& f) {
    if (f.degree() != 1) throw Error("not a degree-one map");
    return MoebiusMap(f.num().coeff(1), f.num().coeff(0), f.den().coeff(1), f.den().coeff(0));
}

std::optional<int> MoebiusMap::order(int cap) const {
    if (is_identity()) return 1;
    MoebiusMap acc = *this;
    for (int k = 1; k <= cap; ++k) {
        if (acc.is_identity()) return k;
        acc = moeb_compose(acc, *this);
    }
    return std::nullopt;
}

bool MoebiusMap::operator==(const MoebiusMap& o) const {
    for (int i = 0; i < 4; ++i)
        if (!(e_[std::size_t(i)] == o.e_[std::size_t(i)])) return false;
    return true;
}

bool MoebiusMap::operator<(const MoebiusMap& o) const {
    for (int i = 0; i < 4; ++i) {
        if (!(e_[std::size_t(i)] == o.e_[std::size_t(i)]))
            return e_[std::size_t(i)] < o.e_[std::size_t(i)];
    }
    return false;
}

std::string MoebiusMap::str() const { return to_ratfunc().str(); }

MoebiusMap moeb_compose(const MoebiusMap& f, const MoebiusMap& g) {
    return MoebiusMap(f.a() * g.a() + f.b() * g.c(), f.a() * g.b() + f.b() * g.d(),
                      f.c() * g.a() + f.d() * g.c(), f.c() * g.b() + f.d() * g.d());
}

namespace {

// The map sending (p1, p2, p3) to (0, 1, inf).
MoebiusMap to_standard_triple(const std::array<SpherePoint, 3>& p) {
    TowerElement x1 = p[0].x(), y1 = p[0].y();
    TowerElement x2 = p[1].x(), y2 = p[1].y();
    TowerElement x3 = p[2].x(), y3 = p[2].y();
    TowerElement k1 = x2 * y3 - x3 * y2;
    TowerElement k2 = x2 * y1 - x1 * y2;
    return MoebiusMap(y1 * k1, -(x1 * k1), y3 * k2, -(x3 * k2));
}

} // namespace

MoebiusMap moebius_from_three_points(const std::array<SpherePoint, 3>& src,
                                     const std::array<SpherePoint, 3>& dst) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (src[std::size_t(i)] == src[std::size_t(j)] ||
                dst[std::size_t(i)] == dst[std::size_t(j)])
                throw DegenerateTriple();
    MoebiusMap m1 = to_standard_triple(src);
    MoebiusMap m2 = to_standard_triple(dst);
    MoebiusMap m = moeb_compose(m2.inverse(), m1);
    for (int i = 0; i < 3; ++i)
        assert(m.apply(src[std::size_t(i)]) == dst[std::size_t(i)]);
    return m;
}

RatFunc conjugate_rf(const RatFunc& a, const MoebiusMap& m) {
    return post_compose(m.inverse(), pre_compose(a, m));
}

RatFunc pre_compose(const RatFunc& a, const MoebiusMap& m) {
    return a.compose(m.to_ratfunc());
}

RatFunc post_compose(const MoebiusMap& m, const RatFunc& a) {
    return m.to_ratfunc().compose(a);
}

// ---------------------------------------------------------------------------
// Groups

std::string group_class_name(GroupClass cls, int l) {
    switch (cls) {
        case GroupClass::Cyclic: return "C" + std::to_string(l);
        case GroupClass::Dihedral: return "D" + std::to_string(2 * l);
        case GroupClass::A4: return "A4";
        case GroupClass::S4: return "S4";
        case GroupClass::A5: return "A5";
    }
    return "?";
}

bool FiniteMoebiusGroup::contains(const MoebiusMap& m) const {
    return std::binary_search(elements.begin(), elements.end(), m);
}

FiniteMoebiusGroup group_closure(const std::vector<MoebiusMap>& seed, std::size_t cap) {
    std::set<MoebiusMap> all;
    all.insert(MoebiusMap::identity());
    std::vector<MoebiusMap> frontier;
    for (const auto& m : seed)
        if (all.insert(m).second) frontier.push_back(m);
    while (!frontier.empty()) {
        std::vector<MoebiusMap> next;
        for (const auto& f : frontier) {
            std::vector<MoebiusMap> base(all.begin(), all.end());
            for (const auto& g : base) {
                for (const MoebiusMap& prod : {moeb_compose(f, g), moeb_compose(g, f)}) {
                    if (all.insert(prod).second) {
                        if (all.size() > cap) throw ClosureCapExceeded(cap);
                        next.push_back(prod);
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    FiniteMoebiusGroup g;
    g.elements.assign(all.begin(), all.end());
    g.generators = seed;
    auto [cls, l] = classify_group(g.elements);
    g.cls = cls;
    g.l = l;
    return g;
}

std::pair<GroupClass, int> classify_group(const std::vector<MoebiusMap>& elements) {
    const int n = int(elements.size());
    if (n == 1) return {GroupClass::Cyclic, 1};
    std::map<int, int> order_count;
    int max_order = 1;
    for (const auto& m : elements) {
        auto o = m.order(n);
        if (!o) throw Error("element order exceeds group size; set is not a group");
        order_count[*o]++;
        max_order = std::max(max_order, *o);
    }
    if (max_order == n) return {GroupClass::Cyclic, n};
    if (n % 2 == 0) {
        int l = n / 2;
        int involutions = order_count.count(2) ? order_count.at(2) : 0;
        int expected = l + (l % 2 == 0 ? 1 : 0);
        if (order_count.count(l) && involutions == expected)
            return {GroupClass::Dihedral, l};
    }
    if (n == 12 && max_order == 3) return {GroupClass::A4, 0};
    if (n == 24 && max_order == 4) return {GroupClass::S4, 0};
    if (n == 60 && max_order == 5) return {GroupClass::A5, 0};
    throw Error("element set matches no finite Moebius group classification");
}

std::vector<SpherePoint> moebius_fixed_points(const MoebiusMap& m) {
    std::vector<SpherePoint> out;
    if (m.is_identity()) return out;
    const Tower& t = m.tower();
    if (m.c().is_zero()) {
        out.push_back(SpherePoint::infinity(t));
        if (!(m.a() == m.d())) out.push_back(SpherePoint(m.b() / (m.d() - m.a())));
        return out;
    }
    // roots of c z^2 + (d-a) z - b
    TowerElement A = m.c(), B = m.d() - m.a(), C = -m.b();
    TowerElement disc = B * B - TowerElement(Rat(4), t) * A * C;
    auto s = sqrt_in_tower(disc, SqrtPolicy::AdjoinRational, 8);
    if (!s) return out; // not representable
    TowerElement half = TowerElement(Rat(1, 2), t);
    TowerElement inv2a = (TowerElement(Rat(2), t) * A).inverse();
    out.push_back(SpherePoint((-B + *s) * inv2a));
    if (!s->is_zero()) out.push_back(SpherePoint((-B - *s) * inv2a));
    return out;
}

InvariantFunction invariant_function(const FiniteMoebiusGroup& g) {
    if (g.cls != GroupClass::Cyclic && g.cls != GroupClass::Dihedral)
        throw UnsupportedClass(g.class_name());
    const int l = g.l;
    InvariantFunction out;
    if (l == 1 && g.cls == GroupClass::Cyclic) {
        out.theta = RatFunc::variable();
        out.witness = MoebiusMap::identity();
        return out;
    }
    // maximal rotation
    MoebiusMap sigma0;
    bool found = false;
    for (const auto& m : g.elements) {
        auto o = m.order(int(g.order()));
        if (o && *o == l) {
            sigma0 = m;
            found = true;
            break;
        }
    }
    if (!found) throw Error("no rotation of maximal order found");
    std::vector<SpherePoint> fps;
    if (l == 2 && g.cls == GroupClass::Dihedral) {
        // V4: every involution qualifies as the axis rotation; prefer one with
        // representable fixed points.
        for (const auto& m : g.elements) {
            if (m.is_identity()) continue;
            fps = moebius_fixed_points(m);
            if (fps.size() == 2) {
                sigma0 = m;
                break;
            }
        }
    } else {
        fps = moebius_fixed_points(sigma0);
    }
    if (fps.size() != 2)
        throw ConjugatorNotInTower("fixed points of the maximal rotation");
    // finite point first so that, when the axis is (0, inf), theta comes out
    // as the plain power z^l
    if (fps[1] < fps[0]) std::swap(fps[0], fps[1]);
    // w maps (0, inf) to the fixed pair: columns are the images of inf and 0.
    MoebiusMap w(fps[1].x(), fps[0].x(), fps[1].y(), fps[0].y());
    MoebiusMap winv = w.inverse();
    Tower t = w.tower();
    Poly z = Poly::variable(t);
    RatFunc theta_std;
    if (g.cls == GroupClass::Cyclic) {
        theta_std = RatFunc(z.pow(unsigned(l)));
    } else {
        // Pick a swap (maps exchanging 0 and inf after conjugation) and read
        // its constant: tau'(z) = cc/z; theta = z^l + cc^l / z^l.
        TowerElement cc;
        bool have_swap = false;
        for (const auto& m : g.elements) {
            MoebiusMap conj = moeb_compose(winv, moeb_compose(m, w));
            if (conj.a().is_zero() && conj.d().is_zero()) {
                cc = conj.b() / conj.c();
                have_swap = true;
                break;
            }
        }
        if (!have_swap) throw Error("dihedral group without swap in axis coordinates");
        TowerElement ccl(Rat(1), cc.tower());
        for (int i = 0; i < l; ++i) ccl = ccl * cc;
        theta_std = RatFunc(z.pow(unsigned(2 * l)) + Poly(ccl), z.pow(unsigned(l)));
    }
    out.theta = pre_compose(theta_std, winv);
    out.witness = w;
    return out;
}

} // namespace ratsym
