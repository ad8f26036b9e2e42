#include "ratsym/poly.hpp"

#include <cassert>
#include <sstream>

namespace ratsym {

Poly::Poly(const TowerElement& c) : tower_(c.tower()) {
    if (!c.is_zero()) c_.push_back(c);
}

Poly::Poly(const Rat& c, Tower t) : tower_(std::move(t)) {
    if (c != 0) c_.emplace_back(c, tower_);
}

Poly Poly::variable(const Tower& t) {
    Poly p;
    p.tower_ = t;
    p.c_ = {TowerElement(Rat(0), t), TowerElement(Rat(1), t)};
    p.trim();
    return p;
}

Poly Poly::from_coeffs(std::vector<TowerElement> cs) {
    Poly p;
    for (const auto& c : cs) p.tower_ = merge_towers(p.tower_, c.tower());
    p.c_ = std::move(cs);
    p.promote_all();
    p.trim();
    return p;
}

Poly Poly::monomial(int deg, const TowerElement& c) {
    Poly p;
    p.tower_ = c.tower();
    if (!c.is_zero()) {
        p.c_.assign(std::size_t(deg) + 1, TowerElement(Rat(0), p.tower_));
        p.c_.back() = c;
    }
    return p;
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void Poly::promote_all() {
    for (auto& c : c_)
        if (!(c.tower() == tower_)) c = c.promoted_to(tower_);
}

TowerElement Poly::coeff(int i) const {
    if (i < 0 || i >= int(c_.size())) return TowerElement(Rat(0), tower_);
    return c_[std::size_t(i)];
}

TowerElement Poly::leading() const {
    assert(!c_.empty());
    return c_.back();
}

std::vector<int> Poly::support() const {
    std::vector<int> s;
    for (int i = 0; i < int(c_.size()); ++i)
        if (!c_[std::size_t(i)].is_zero()) s.push_back(i);
    return s;
}

int Poly::valuation() const {
    for (int i = 0; i < int(c_.size()); ++i)
        if (!c_[std::size_t(i)].is_zero()) return i;
    return 0;
}

Poly Poly::promoted_to(const Tower& t) const {
    Poly p;
    p.tower_ = t;
    p.c_.reserve(c_.size());
    for (const auto& c : c_) p.c_.push_back(c.promoted_to(t));
    return p;
}

namespace {
std::pair<Poly, Poly> align(const Poly& a, const Poly& b) {
    if (a.tower() == b.tower()) return {a, b};
    Tower t = merge_towers(a.tower(), b.tower());
    return {a.promoted_to(t), b.promoted_to(t)};
}
} // namespace

Poly Poly::operator-() const {
    Poly p = *this;
    for (auto& c : p.c_) c = -c;
    return p;
}

Poly Poly::operator+(const Poly& o) const {
    auto [a, b] = align(*this, o);
    if (a.c_.size() < b.c_.size()) std::swap(a, b);
    for (std::size_t i = 0; i < b.c_.size(); ++i) a.c_[i] = a.c_[i] + b.c_[i];
    a.trim();
    return a;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    auto [a, b] = align(*this, o);
    if (a.is_zero() || b.is_zero()) {
        Poly z;
        z.tower_ = a.tower_;
        return z;
    }
    Poly p;
    p.tower_ = a.tower_;
    p.c_.assign(a.c_.size() + b.c_.size() - 1, TowerElement(Rat(0), p.tower_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j].is_zero()) continue;
            p.c_[i + j] = p.c_[i + j] + a.c_[i] * b.c_[j];
        }
    }
    p.trim();
    return p;
}

Poly Poly::operator*(const TowerElement& s) const {
    if (s.is_zero()) {
        Poly z;
        z.tower_ = merge_towers(tower_, s.tower());
        return z;
    }
    Poly p = *this;
    p.tower_ = merge_towers(tower_, s.tower());
    for (auto& c : p.c_) c = c * s;
    p.promote_all();
    return p;
}

Poly Poly::operator/(const TowerElement& s) const { return *this * s.inverse(); }

Poly Poly::pow(unsigned e) const {
    Poly r(Rat(1), tower_);
    Poly base = *this;
    while (e) {
        if (e & 1u) r = r * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return r;
}

Poly Poly::shifted(int k) const {
    assert(k >= 0);
    if (is_zero() || k == 0) return *this;
    Poly p;
    p.tower_ = tower_;
    p.c_.assign(std::size_t(k), TowerElement(Rat(0), tower_));
    p.c_.insert(p.c_.end(), c_.begin(), c_.end());
    return p;
}

bool Poly::operator==(const Poly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!(c_[i] == o.c_[i])) return false;
    return true;
}

TowerElement Poly::eval(const TowerElement& x) const {
    TowerElement acc(Rat(0), tower_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Poly Poly::derivative() const {
    Poly p;
    p.tower_ = tower_;
    for (std::size_t i = 1; i < c_.size(); ++i)
        p.c_.push_back(c_[i] * TowerElement(Rat(long(i)), tower_));
    p.trim();
    return p;
}

Poly Poly::compose(const Poly& inner) const {
    Poly acc(Rat(0), tower_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * inner + Poly(c_[i]);
    return acc;
}

Poly Poly::reversed(int target_deg) const {
    assert(target_deg >= degree());
    Poly p;
    p.tower_ = tower_;
    p.c_.assign(std::size_t(target_deg) + 1, TowerElement(Rat(0), tower_));
    for (std::size_t i = 0; i < c_.size(); ++i) p.c_[std::size_t(target_deg) - i] = c_[i];
    p.trim();
    return p;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * leading().inverse();
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero();
    auto [r, d] = align(a, b);
    Poly q;
    q.tower_ = r.tower_;
    if (r.degree() < d.degree()) return {q, r};
    q.c_.assign(std::size_t(r.degree() - d.degree()) + 1, TowerElement(Rat(0), q.tower_));
    TowerElement lcinv = d.leading().inverse();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int k = r.degree() - d.degree();
        TowerElement f = r.leading() * lcinv;
        q.c_[std::size_t(k)] = f;
        for (int i = 0; i <= d.degree(); ++i)
            r.c_[std::size_t(i + k)] = r.c_[std::size_t(i + k)] - d.c_[std::size_t(i)] * f;
        r.trim();
    }
    q.trim();
    return {q, r};
}

Poly Poly::exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    assert(r.is_zero());
    return q;
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
    auto [x, y] = align(a, b);
    if (!x.is_zero()) x = x.monic();
    if (!y.is_zero()) y = y.monic();
    while (!y.is_zero()) {
        Poly r = divmod(x, y).second;
        if (!r.is_zero()) r = r.monic(); // keeps coefficient growth in check
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

Poly Poly::squarefree_part() const {
    if (degree() <= 0) return Poly(Rat(1), tower_);
    Poly g = gcd(*this, derivative());
    return exact_div(*this, g).monic();
}

std::vector<std::pair<Poly, int>> Poly::squarefree_decomposition(const Poly& f) {
    // Musser's algorithm; valid in characteristic zero.
    std::vector<std::pair<Poly, int>> parts;
    if (f.degree() <= 0) return parts;
    Poly c = gcd(f, f.derivative());
    Poly w = exact_div(f, c).monic();
    int i = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, c);
        Poly factor = exact_div(w, y).monic();
        if (factor.degree() > 0) parts.emplace_back(factor, i);
        c = exact_div(c, y).monic();
        w = std::move(y);
        ++i;
        if (i > f.degree() + 1) break; // defensive; cannot happen
    }
    return parts;
}

namespace {

// Fraction-free determinant (Bareiss); entries from an integral domain with
// exact division.  Zero polynomial signals a singular matrix.
Poly det_bareiss(std::vector<std::vector<Poly>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return Poly(Rat(1));
    int sign = 1;
    Poly prev(Rat(1));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return Poly(); // singular
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = Poly::exact_div(t, prev);
            }
            m[i][k] = Poly();
        }
        prev = m[k][k];
    }
    Poly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

} // namespace

void BiPoly::trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Poly bipoly_resultant(const BiPoly& f, const BiPoly& g) {
    BiPoly a = f, b = g;
    a.trim();
    b.trim();
    const int m = a.degree(), n = b.degree();
    if (m < 0 || n < 0) return Poly();
    if (m == 0 && n == 0) return Poly(Rat(1));
    if (m == 0) return a.c[0].pow(unsigned(n));
    if (n == 0) return b.c[0].pow(unsigned(m));
    const std::size_t size = std::size_t(m + n);
    std::vector<std::vector<Poly>> s(size, std::vector<Poly>(size));
    for (int row = 0; row < n; ++row)
        for (int k = 0; k <= m; ++k) s[std::size_t(row)][std::size_t(row + k)] = a.c[std::size_t(m - k)];
    for (int row = 0; row < m; ++row)
        for (int k = 0; k <= n; ++k)
            s[std::size_t(n + row)][std::size_t(row + k)] = b.c[std::size_t(n - k)];
    return det_bareiss(s);
}

TowerElement Poly::resultant(const Poly& a, const Poly& b) {
    // Via the bivariate Sylvester machinery with constant coefficient polys.
    BiPoly fa, fb;
    for (const auto& c : a.coeffs()) fa.c.push_back(Poly(c));
    for (const auto& c : b.coeffs()) fb.c.push_back(Poly(c));
    Poly r = bipoly_resultant(fa, fb);
    if (r.is_zero()) return TowerElement(Rat(0), merge_towers(a.tower(), b.tower()));
    assert(r.degree() == 0);
    return r.coeff(0);
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        bool needs_paren = c_[i].coefficients().size() > 1;
        std::string cs = c_[i].str();
        if (i == 0) {
            os << (needs_paren ? "(" + cs + ")" : cs);
        } else {
            if (cs == "1") {
            } else if (cs == "-1") {
                os << "-";
            } else {
                os << (needs_paren ? "(" + cs + ")" : cs) << "*";
            }
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

} // namespace ratsym
