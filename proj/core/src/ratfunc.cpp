#include "ratsym/ratfunc.hpp"

#include <cassert>

namespace ratsym {

SpherePoint::SpherePoint() : value_(Rat(0)) {}
SpherePoint::SpherePoint(const TowerElement& finite) : value_(finite) {}
SpherePoint::SpherePoint(const Rat& finite) : value_(finite) {}

SpherePoint::SpherePoint(const TowerElement& x, const TowerElement& y) {
    if (y.is_zero()) {
        if (x.is_zero()) throw Error("sphere point (0 : 0)");
        infinite_ = true;
        value_ = TowerElement(Rat(0), x.tower());
    } else {
        value_ = x / y;
    }
}

SpherePoint SpherePoint::infinity(const Tower& t) {
    SpherePoint p;
    p.infinite_ = true;
    p.value_ = TowerElement(Rat(0), t);
    return p;
}

const TowerElement& SpherePoint::finite_value() const {
    assert(!infinite_);
    return value_;
}

TowerElement SpherePoint::x() const {
    return infinite_ ? TowerElement(Rat(1), value_.tower()) : value_;
}

TowerElement SpherePoint::y() const {
    return TowerElement(infinite_ ? Rat(0) : Rat(1), value_.tower());
}

bool SpherePoint::operator==(const SpherePoint& o) const {
    if (infinite_ != o.infinite_) return false;
    return infinite_ || value_ == o.value_;
}

bool SpherePoint::operator<(const SpherePoint& o) const {
    if (infinite_ != o.infinite_) return !infinite_;
    if (infinite_) return false;
    return value_ < o.value_;
}

std::string SpherePoint::str() const {
    return infinite_ ? "inf" : value_.str();
}

// ---------------------------------------------------------------------------

RatFunc::RatFunc() : num_(), den_(Rat(1)) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ZeroDenominator();
    canonicalize(true);
}

RatFunc::RatFunc(const Poly& num) : num_(num), den_(Poly(Rat(1), num.tower())) {
    canonicalize(false);
}

RatFunc RatFunc::variable(const Tower& t) { return RatFunc(Poly::variable(t)); }

RatFunc RatFunc::constant(const TowerElement& c) { return RatFunc(Poly(c)); }

void RatFunc::canonicalize(bool reduce) {
    Tower t = merge_towers(num_.tower(), den_.tower());
    num_ = num_.promoted_to(t);
    den_ = den_.promoted_to(t);
    if (reduce && num_.degree() > 0 && den_.degree() > 0) {
        Poly g = Poly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Poly::exact_div(num_, g);
            den_ = Poly::exact_div(den_, g);
        }
    }
    if (num_.is_zero()) {
        den_ = Poly(Rat(1), t);
        return;
    }
    TowerElement scale = den_.leading().inverse();
    num_ = num_ * scale;
    den_ = den_ * scale;
}

int RatFunc::degree() const {
    return std::max(std::max(num_.degree(), 0), den_.degree());
}

RatFunc RatFunc::promoted_to(const Tower& t) const {
    RatFunc r;
    r.num_ = num_.promoted_to(t);
    r.den_ = den_.promoted_to(t);
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.num_.is_zero()) throw DivisionByZero();
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

bool RatFunc::operator==(const RatFunc& o) const {
    return num_ == o.num_ && den_ == o.den_;
}

bool RatFunc::operator<(const RatFunc& o) const {
    if (num_.degree() != o.num_.degree()) return num_.degree() < o.num_.degree();
    if (den_.degree() != o.den_.degree()) return den_.degree() < o.den_.degree();
    for (int i = 0; i <= num_.degree(); ++i) {
        const TowerElement a = num_.coeff(i), b = o.num_.coeff(i);
        if (!(a == b)) return a < b;
    }
    for (int i = 0; i <= den_.degree(); ++i) {
        const TowerElement a = den_.coeff(i), b = o.den_.coeff(i);
        if (!(a == b)) return a < b;
    }
    return false;
}

SpherePoint RatFunc::eval(const SpherePoint& p) const {
    const int d = degree();
    if (!p.is_infinity()) {
        const TowerElement& z = p.finite_value();
        TowerElement nx = num_.eval(z);
        TowerElement dx = den_.eval(z);
        if (dx.is_zero() && nx.is_zero()) {
            // impossible in lowest terms
            assert(false);
        }
        return SpherePoint(nx, dx);
    }
    // Homogenized leading behaviour at infinity.
    TowerElement nx = num_.degree() == d ? num_.leading() : TowerElement(Rat(0), tower());
    TowerElement dx = den_.degree() == d ? den_.leading() : TowerElement(Rat(0), tower());
    return SpherePoint(nx, dx);
}

RatFunc RatFunc::compose(const RatFunc& inner) const {
    const int d = degree();
    const Poly& X = inner.num_;
    const Poly& Y = inner.den_;
    // Horner over this function's coefficients with homogenization to degree d.
    Poly pn, pd; // running numerators
    Poly ypow(Rat(1), tower());
    pn = Poly(num_.coeff(d));
    pd = Poly(den_.coeff(d));
    for (int i = d - 1; i >= 0; --i) {
        ypow = ypow * Y;
        pn = pn * X + Poly(num_.coeff(i)) * ypow;
        pd = pd * X + Poly(den_.coeff(i)) * ypow;
    }
    RatFunc out;
    out.num_ = std::move(pn);
    out.den_ = std::move(pd);
    if (out.den_.is_zero()) throw ZeroDenominator();
    out.canonicalize(false); // composition of reduced functions is reduced
    assert(out.degree() == degree() * inner.degree() || is_constant() || inner.is_constant());
    return out;
}

RatFunc RatFunc::iterate(int k, long degree_budget) const {
    assert(k >= 1);
    const int n = degree();
    long needed = 1;
    for (int i = 0; i < k; ++i) {
        needed *= std::max(n, 1);
        if (needed > degree_budget) throw DegreeBudgetExceeded(needed, degree_budget);
    }
    RatFunc acc = *this;
    for (int i = 1; i < k; ++i) acc = acc.compose(*this);
    return acc;
}

Poly RatFunc::derivative_numerator() const {
    return num_.derivative() * den_ - num_ * den_.derivative();
}

RatFunc RatFunc::derivative() const {
    return RatFunc(derivative_numerator(), den_ * den_);
}

int RatFunc::local_multiplicity(const SpherePoint& p) const {
    if (p.is_infinity()) {
        // B(w) = A(1/w); the multiplicity of A at infinity is that of B at 0.
        const int d = degree();
        RatFunc b;
        b.num_ = num_.reversed(d);
        b.den_ = den_.reversed(d);
        b.canonicalize(true);
        return b.local_multiplicity(SpherePoint(Rat(0)));
    }
    const TowerElement& z0 = p.finite_value();
    TowerElement dv = den_.eval(z0);
    if (dv.is_zero()) {
        // pole: multiplicity = order of z0 as a root of the denominator
        Poly shifted = den_.compose(Poly::variable(tower()) + Poly(z0));
        return shifted.valuation();
    }
    TowerElement v = num_.eval(z0) / dv;
    Poly f = num_ - den_ * v;
    Poly shifted = f.compose(Poly::variable(tower()) + Poly(z0));
    return shifted.valuation();
}

std::string RatFunc::str() const {
    if (den_.degree() == 0) {
        std::string n = num_.str();
        // denominator is exactly 1 in canonical form
        return n;
    }
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

Poly fiber_poly(const RatFunc& a, const SpherePoint& v) {
    if (v.is_infinity()) return a.den();
    return a.num() - a.den() * v.finite_value();
}

} // namespace ratsym
