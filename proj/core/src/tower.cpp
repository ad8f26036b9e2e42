#include "ratsym/tower.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace ratsym {

namespace {
// Merging independently built towers may need more than the user-facing cap.
constexpr int kInternalDepthCap = 16;
} // namespace

Tower::Tower() : data_(std::make_shared<const Data>()) {}
Tower::Tower(Data d) : data_(std::make_shared<const Data>(std::move(d))) {}

Int Tower::generator_square(unsigned bit) const {
    if (bit == 0) {
        assert(data_->has_i);
        return Int(-1);
    }
    assert(bit - 1 < data_->radicands.size());
    return data_->radicands[bit - 1];
}

bool Tower::operator==(const Tower& o) const {
    if (data_ == o.data_) return true;
    return data_->has_i == o.data_->has_i && data_->radicands == o.data_->radicands;
}

bool Tower::contains(const Tower& o) const {
    if (o.data_->has_i && !data_->has_i) return false;
    for (const Int& r : o.data_->radicands)
        if (!std::binary_search(data_->radicands.begin(), data_->radicands.end(), r))
            return false;
    return true;
}

std::string Tower::name() const {
    if (depth() == 0) return "Q";
    std::ostringstream os;
    os << "Q(";
    bool first = true;
    if (data_->has_i) {
        os << "i";
        first = false;
    }
    for (const Int& r : data_->radicands) {
        if (!first) os << ", ";
        os << "sqrt(" << r.get_str() << ")";
        first = false;
    }
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// Adjunction

struct AdjoinOps {
    static Tower with_imaginary(const Tower& t) {
        Tower::Data d{true, t.data_->radicands};
        return Tower(std::move(d));
    }
    static Tower with_radicand(const Tower& t, const Int& r) {
        Tower::Data d{t.data_->has_i, t.data_->radicands};
        d.radicands.insert(std::lower_bound(d.radicands.begin(), d.radicands.end(), r), r);
        return Tower(std::move(d));
    }
};

namespace {

unsigned radicand_bit(const Tower& t, const Int& r) {
    const auto& rs = t.radicands();
    auto it = std::lower_bound(rs.begin(), rs.end(), r);
    assert(it != rs.end() && *it == r);
    return 1u + unsigned(it - rs.begin());
}

// Representation of sqrt(s) (s > 1 squarefree) inside t, if any: a subset S of
// radicands with s * prod(S) a perfect square gives sqrt(s) = (t/prod S) * prod
// sqrt(d_j).  Returns nullopt when independent of t.  `avoid` lists radicands
// the representation may not touch.
std::optional<TowerElement> rep_of_positive_sqrt(const Tower& t, const Int& s,
                                                 const std::vector<Int>& avoid = {}) {
    const auto& rs = t.radicands();
    const unsigned n = unsigned(rs.size());
    for (unsigned subset = 0; subset < (1u << n); ++subset) {
        Int prod = 1;
        unsigned mask = 0;
        bool blocked = false;
        for (unsigned j = 0; j < n; ++j)
            if (subset & (1u << j)) {
                if (std::find(avoid.begin(), avoid.end(), rs[j]) != avoid.end()) {
                    blocked = true;
                    break;
                }
                prod *= rs[j];
                mask |= (1u << (j + 1));
            }
        if (blocked) continue;
        Int target = s * prod;
        if (is_perfect_square(target)) {
            Int root = isqrt(target);
            return TowerElement::monomial(t, mask, Rat(root, prod));
        }
    }
    return std::nullopt;
}

} // namespace

AdjoinResult adjoin_imaginary(const Tower& t, int depth_cap) {
    AdjoinResult res;
    if (t.has_imaginary()) {
        res.tower = t;
        res.value = std::make_unique<TowerElement>(TowerElement::imaginary_unit(t));
        return res;
    }
    if (t.depth() + 1 > depth_cap) throw DepthCapExceeded(depth_cap);
    res.tower = AdjoinOps::with_imaginary(t);
    res.value = std::make_unique<TowerElement>(TowerElement::imaginary_unit(res.tower));
    res.extended = true;
    return res;
}

AdjoinResult adjoin_sqrt(const Tower& t, const Int& d, int depth_cap) {
    if (d == 0) throw Error("cannot adjoin sqrt(0)");
    auto [mult, rad] = squarefree_decompose(d);
    AdjoinResult res;
    Tower cur = t;
    bool extended = false;
    bool negative = rad < 0;
    if (negative) {
        rad = -rad;
        if (!cur.has_imaginary()) {
            if (cur.depth() + 1 > depth_cap) throw DepthCapExceeded(depth_cap);
            cur = AdjoinOps::with_imaginary(cur);
            extended = true;
        }
    }
    TowerElement value;
    if (rad == 1) {
        value = TowerElement(Rat(mult), cur);
    } else {
        auto rep = rep_of_positive_sqrt(cur, rad);
        if (!rep) {
            if (cur.depth() + 1 > depth_cap) throw DepthCapExceeded(depth_cap);
            cur = AdjoinOps::with_radicand(cur, rad);
            extended = true;
            rep = TowerElement::monomial(cur, 1u << radicand_bit(cur, rad), Rat(1));
        }
        value = TowerElement(Rat(mult), cur) * *rep;
    }
    if (negative) value = value * TowerElement::imaginary_unit(cur);
    res.tower = cur;
    res.value = std::make_unique<TowerElement>(std::move(value));
    res.extended = extended;
    if (!extended) {
        bool literal_gen = (d > 1 && mult == 1 &&
                            std::binary_search(t.radicands().begin(), t.radicands().end(), d)) ||
                           (d == -1 && t.has_imaginary());
        res.dependent = !literal_gen;
    }
    return res;
}

Tower tower_adjoin_imaginary(const Tower& t, int depth_cap) {
    return adjoin_imaginary(t, depth_cap).tower;
}

Tower tower_adjoin_sqrt(const Tower& t, const Int& d, int depth_cap) {
    AdjoinResult r = adjoin_sqrt(t, d, depth_cap);
    if (r.extended) return r.tower;
    if (!r.dependent) return r.tower; // idempotent: literally an existing generator
    throw DependentGenerator("sqrt(" + d.get_str() + ") = " + r.value->str());
}

// ---------------------------------------------------------------------------
// TowerElement

TowerElement::TowerElement(const Rat& r, Tower t) : tower_(std::move(t)) {
    if (r != 0) {
        Rat c = r;
        c.canonicalize();
        coeff_.emplace(0u, std::move(c));
    }
}

TowerElement::TowerElement(long v, Tower t) : TowerElement(Rat(v), std::move(t)) {}

TowerElement TowerElement::imaginary_unit(const Tower& t) {
    assert(t.has_imaginary());
    return monomial(t, 1u, Rat(1));
}

TowerElement TowerElement::monomial(const Tower& t, unsigned mask, const Rat& c) {
    TowerElement e;
    e.tower_ = t;
    if (c != 0) {
        Rat cc = c;
        cc.canonicalize();
        e.coeff_.emplace(mask, std::move(cc));
    }
    return e;
}

bool TowerElement::is_rational() const {
    return coeff_.empty() || (coeff_.size() == 1 && coeff_.begin()->first == 0);
}

Rat TowerElement::rational_value() const {
    assert(is_rational());
    return coeff_.empty() ? Rat(0) : coeff_.begin()->second;
}

void TowerElement::set(unsigned mask, Rat c) {
    if (c == 0)
        coeff_.erase(mask);
    else
        coeff_[mask] = std::move(c);
}

TowerElement TowerElement::promoted_to(const Tower& t) const {
    if (tower_ == t) {
        TowerElement e = *this;
        e.tower_ = t;
        return e;
    }
    assert(t.contains(tower_));
    std::vector<unsigned> bitmap(tower_.mask_bits(), 0);
    if (tower_.has_imaginary()) bitmap[0] = 0; // i stays at bit 0
    for (unsigned j = 0; j < tower_.radicands().size(); ++j)
        bitmap[j + 1] = radicand_bit(t, tower_.radicands()[j]);
    TowerElement e;
    e.tower_ = t;
    for (const auto& [mask, c] : coeff_) {
        unsigned m2 = 0;
        for (unsigned b = 0; b < bitmap.size(); ++b)
            if (mask & (1u << b)) m2 |= (1u << bitmap[b]);
        e.coeff_.emplace(m2, c);
    }
    return e;
}

Tower merge_towers(const Tower& a, const Tower& b) {
    if (a.contains(b)) return a;
    if (b.contains(a)) return b;
    Tower t = a;
    if (b.has_imaginary() && !t.has_imaginary()) t = AdjoinOps::with_imaginary(t);
    for (const Int& r : b.radicands()) {
        AdjoinResult res = adjoin_sqrt(t, r, kInternalDepthCap);
        t = res.tower;
    }
    return t;
}

namespace {

// Rewrite x over an arbitrary tower t (which may represent some of x's
// generators through combinations, e.g. sqrt(6) = sqrt(2)*sqrt(3)).
TowerElement embed_into(const TowerElement& x, const Tower& t) {
    if (t.contains(x.tower())) return x.promoted_to(t);
    std::vector<TowerElement> reps(x.tower().mask_bits());
    if (x.tower().has_imaginary()) reps[0] = TowerElement::imaginary_unit(t);
    for (unsigned j = 0; j < x.tower().radicands().size(); ++j) {
        AdjoinResult r = adjoin_sqrt(t, x.tower().radicands()[j], kInternalDepthCap);
        assert(!r.extended);
        reps[j + 1] = *r.value;
    }
    TowerElement out(Rat(0), t);
    for (const auto& [mask, c] : x.coefficients()) {
        TowerElement term(c, t);
        for (unsigned b = 0; b < reps.size(); ++b)
            if (mask & (1u << b)) term = term * reps[b];
        out = out + term;
    }
    return out;
}

} // namespace

std::pair<TowerElement, TowerElement> promote(const TowerElement& a, const TowerElement& b) {
    if (a.tower() == b.tower()) return {a, b};
    if (a.tower().contains(b.tower())) return {a, b.promoted_to(a.tower())};
    if (b.tower().contains(a.tower())) return {a.promoted_to(b.tower()), b};
    Tower t = merge_towers(a.tower(), b.tower());
    return {embed_into(a, t), embed_into(b, t)};
}

TowerElement TowerElement::operator-() const {
    TowerElement e = *this;
    for (auto& [m, c] : e.coeff_) c = -c;
    return e;
}

TowerElement TowerElement::operator+(const TowerElement& o) const {
    auto [a, b] = promote(*this, o);
    TowerElement out = a;
    for (const auto& [m, c] : b.coeff_) {
        auto it = out.coeff_.find(m);
        if (it == out.coeff_.end()) {
            out.coeff_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) out.coeff_.erase(it);
        }
    }
    return out;
}

TowerElement TowerElement::operator-(const TowerElement& o) const { return *this + (-o); }

TowerElement mul_impl(const TowerElement& a, const TowerElement& b) {
    TowerElement out;
    out.tower_ = a.tower_;
    for (const auto& [m1, c1] : a.coeff_) {
        for (const auto& [m2, c2] : b.coeff_) {
            unsigned common = m1 & m2;
            Rat c = c1 * c2;
            for (unsigned bit = 0; common >> bit; ++bit)
                if (common & (1u << bit)) c *= Rat(a.tower_.generator_square(bit));
            unsigned m = m1 ^ m2;
            auto it = out.coeff_.find(m);
            if (it == out.coeff_.end()) {
                if (c != 0) out.coeff_.emplace(m, std::move(c));
            } else {
                it->second += c;
                if (it->second == 0) out.coeff_.erase(it);
            }
        }
    }
    return out;
}

TowerElement TowerElement::operator*(const TowerElement& o) const {
    auto [a, b] = promote(*this, o);
    return mul_impl(a, b);
}

TowerElement TowerElement::operator/(const TowerElement& o) const {
    return *this * o.inverse();
}

TowerElement TowerElement::conjugated(unsigned bit) const {
    TowerElement e = *this;
    for (auto& [m, c] : e.coeff_)
        if (m & (1u << bit)) c = -c;
    return e;
}

TowerElement TowerElement::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (is_rational()) {
        Rat r = rational_value();
        return TowerElement(Rat(r.get_den(), r.get_num()), tower_);
    }
    unsigned top = 0;
    for (const auto& [m, c] : coeff_) {
        for (unsigned b = 0; m >> b; ++b)
            if (m & (1u << b)) top = std::max(top, b);
    }
    TowerElement conj = conjugated(top);
    TowerElement norm = mul_impl(*this, conj); // free of the top generator
    return mul_impl(conj, norm.inverse());
}

bool TowerElement::operator==(const TowerElement& o) const {
    if (tower_ == o.tower_) return coeff_ == o.coeff_;
    auto [a, b] = promote(*this, o);
    return a.coeff_ == b.coeff_;
}

bool TowerElement::operator<(const TowerElement& o) const {
    const std::map<unsigned, Rat>*pa, *pb;
    TowerElement ta, tb;
    if (tower_ == o.tower_) {
        pa = &coeff_;
        pb = &o.coeff_;
    } else {
        std::tie(ta, tb) = promote(*this, o);
        pa = &ta.coeff_;
        pb = &tb.coeff_;
    }
    auto ia = pa->begin(), ib = pb->begin();
    for (; ia != pa->end() && ib != pb->end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        int c = cmp(ia->second, ib->second);
        if (c != 0) return c < 0;
    }
    return ia == pa->end() && ib != pb->end();
}

std::string TowerElement::str() const {
    if (coeff_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mask, c] : coeff_) {
        Rat a = abs(c);
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        std::vector<std::string> factors;
        if (a != 1 || mask == 0) factors.push_back(rat_to_string(a));
        if (mask & 1u) factors.push_back("i");
        for (unsigned b = 1; mask >> b; ++b)
            if (mask & (1u << b))
                factors.push_back("sqrt(" + tower_.generator_square(b).get_str() + ")");
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) os << "*";
            os << factors[i];
        }
    }
    return os.str();
}

std::complex<double> TowerElement::approx() const {
    std::complex<double> out(0.0, 0.0);
    for (const auto& [mask, c] : coeff_) {
        std::complex<double> term(c.get_d(), 0.0);
        if (mask & 1u) term *= std::complex<double>(0.0, 1.0);
        for (unsigned b = 1; mask >> b; ++b)
            if (mask & (1u << b))
                term *= std::sqrt(tower_.generator_square(b).get_d());
        out += term;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Square roots

namespace {

// Generators a recursion branch may no longer use: once x is decomposed as
// a + b*g, any square root must have g-free components, so deeper calls are
// confined to the subfield without g.  This also guarantees termination.
struct SqrtExclusions {
    bool imaginary = false;
    std::vector<Int> radicands;

    bool allows(const TowerElement& v) const {
        for (const auto& [m, c] : v.coefficients()) {
            if (imaginary && (m & 1u)) return false;
            for (unsigned b = 1; m >> b; ++b)
                if (m & (1u << b)) {
                    Int d = v.tower().generator_square(b);
                    if (std::find(radicands.begin(), radicands.end(), d) != radicands.end())
                        return false;
                }
        }
        return true;
    }
};

std::optional<TowerElement> sqrt_rec(const TowerElement& x, SqrtPolicy policy,
                                     int depth_cap, Tower& t, const SqrtExclusions& excl) {
    if (x.is_zero()) return TowerElement(Rat(0), t);
    if (x.is_rational()) {
        Rat r = x.rational_value();
        Int n = r.get_num() * r.get_den();
        auto [mult, s] = squarefree_decompose(n);
        TowerElement out(Rat(mult, r.get_den()), t);
        if (s == 1) return out;
        bool negative = s < 0;
        if (negative) {
            s = -s;
            if (excl.imaginary) return std::nullopt;
            if (!t.has_imaginary()) {
                if (policy != SqrtPolicy::AdjoinRational) return std::nullopt;
                try {
                    t = adjoin_imaginary(t, depth_cap).tower;
                } catch (const DepthCapExceeded&) {
                    return std::nullopt;
                }
            }
            out = out.promoted_to(t) * TowerElement::imaginary_unit(t);
        }
        if (s != 1) {
            if (std::find(excl.radicands.begin(), excl.radicands.end(), s) !=
                excl.radicands.end())
                return std::nullopt;
            auto rep = rep_of_positive_sqrt(t, s, excl.radicands);
            if (!rep && policy == SqrtPolicy::AdjoinRational) {
                // a fresh radicand never collides with an excluded one: those
                // already exist in the tower and the search would have found them
                try {
                    AdjoinResult ar = adjoin_sqrt(t, s, depth_cap);
                    if (excl.allows(*ar.value)) {
                        t = ar.tower;
                        rep = *ar.value;
                    }
                } catch (const DepthCapExceeded&) {
                }
            }
            if (!rep) return std::nullopt;
            out = out.promoted_to(t) * rep->promoted_to(t);
        }
        return out;
    }
    unsigned top = 0;
    for (const auto& [m, c] : x.coefficients())
        for (unsigned b = 0; m >> b; ++b)
            if (m & (1u << b)) top = std::max(top, b);
    TowerElement a(Rat(0), x.tower()), b(Rat(0), x.tower());
    for (const auto& [m, c] : x.coefficients()) {
        if (m & (1u << top))
            b = b + TowerElement::monomial(x.tower(), m & ~(1u << top), c);
        else
            a = a + TowerElement::monomial(x.tower(), m, c);
    }
    Int d = x.tower().generator_square(top);
    TowerElement gmono = TowerElement::monomial(x.tower(), 1u << top, Rat(1));
    SqrtExclusions deeper = excl;
    if (top == 0)
        deeper.imaginary = true;
    else
        deeper.radicands.push_back(d);
    // Write x = a + b*g.  A root y = u + v*g needs u^2 + v^2 d = a and
    // 2uv = b, so u^2 and v^2 d are the roots of t^2 - a t + b^2 d / 4, and
    // u, v, and the auxiliary root all live in the g-free subfield.
    TowerElement disc = a * a - b * b * TowerElement(Rat(d), x.tower());
    auto s = sqrt_rec(disc, policy, depth_cap, t, deeper);
    if (!s || !deeper.allows(*s)) return std::nullopt;
    for (int sign : {+1, -1}) {
        TowerElement u2 = (a + (sign > 0 ? *s : -*s)) / TowerElement(Rat(2), x.tower());
        auto u = sqrt_rec(u2, policy, depth_cap, t, deeper);
        if (!u || u->is_zero() || !deeper.allows(*u)) continue;
        TowerElement v = b / (TowerElement(Rat(2), x.tower()) * *u);
        TowerElement y = *u + v * gmono;
        if (y * y == x) {
            t = merge_towers(t, y.tower());
            return y.promoted_to(t);
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<TowerElement> sqrt_in_tower(const TowerElement& x, SqrtPolicy policy,
                                          int depth_cap, Tower* tower_out) {
    Tower t = x.tower();
    auto y = sqrt_rec(x, policy, depth_cap, t, SqrtExclusions{});
    if (!y) return std::nullopt;
    assert(*y * *y == x);
    if (tower_out) *tower_out = y->tower();
    return y;
}

TowerElement field_sqrt(const TowerElement& x) {
    auto y = sqrt_in_tower(x, SqrtPolicy::NoAdjoin, 0);
    if (!y) throw SqrtNotInTower("z^2 - (" + x.str() + ")");
    return *y;
}

} // namespace ratsym
