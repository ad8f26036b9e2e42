#include "ratsym/roots.hpp"

#include <algorithm>
#include <cassert>
#include <complex>

namespace ratsym {

namespace {

bool all_rational(const Poly& f) {
    for (const auto& c : f.coeffs())
        if (!c.is_rational()) return false;
    return true;
}

// --- Gaussian-rational roots ------------------------------------------------

struct GaussInt {
    Int re, im;
    bool operator<(const GaussInt& o) const {
        return re != o.re ? re < o.re : im < o.im;
    }
};

Int gnorm(const GaussInt& g) { return g.re * g.re + g.im * g.im; }

GaussInt gmul(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

bool gdivide(const GaussInt& w, const GaussInt& d, GaussInt& q) {
    Int n = gnorm(d);
    if (n == 0) return false;
    GaussInt t = gmul(w, {d.re, -d.im});
    if (!mpz_divisible_p(t.re.get_mpz_t(), n.get_mpz_t())) return false;
    if (!mpz_divisible_p(t.im.get_mpz_t(), n.get_mpz_t())) return false;
    q = {t.re / n, t.im / n};
    return true;
}

// All divisors of w up to units, via the factorization of its norm.  Empty on
// norms with large unfactored parts or oversized divisor counts.
std::vector<GaussInt> gaussian_divisors(GaussInt w, std::size_t limit = 1024) {
    std::vector<GaussInt> divs{{Int(1), Int(0)}};
    Int n = gnorm(w);
    if (n == 0) return {};
    auto multiply_in = [&](const GaussInt& prime) {
        // peel the exponent of `prime` out of w and extend the divisor list
        int e = 0;
        GaussInt q;
        while (gdivide(w, prime, q)) {
            w = q;
            ++e;
        }
        if (e == 0) return true;
        std::size_t base = divs.size();
        GaussInt pw = prime;
        for (int i = 1; i <= e; ++i) {
            for (std::size_t j = 0; j < base; ++j) divs.push_back(gmul(divs[j], pw));
            if (divs.size() > limit) return false;
            if (i < e) pw = gmul(pw, prime);
        }
        return true;
    };
    if (!multiply_in({Int(1), Int(1)})) return {}; // the prime over 2
    Int rest = n;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), 2)) rest /= 2;
    for (unsigned p = 3; Int(p) * p <= rest && p < 100000; p += 2) {
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) rest /= p;
        if (p % 4 == 3) {
            if (!multiply_in({Int(p), Int(0)})) return {};
        } else {
            // split p = a^2 + b^2
            for (unsigned long a = 1; a * a <= p; ++a) {
                Int b2 = Int(p) - Int(a) * a;
                if (is_perfect_square(b2)) {
                    Int b = isqrt(b2);
                    if (!multiply_in({Int(a), b})) return {};
                    if (!multiply_in({Int(a), -b})) return {};
                    break;
                }
            }
        }
    }
    if (rest > 1) {
        // leftover prime norm factor
        if (mpz_probab_prime_p(rest.get_mpz_t(), 25) == 0) return {};
        unsigned long r4 = mpz_fdiv_ui(rest.get_mpz_t(), 4);
        if (r4 == 3) {
            if (!multiply_in({rest, Int(0)})) return {};
        } else {
            // find a^2 + b^2 = rest by scanning; bail out when it is large
            if (rest > 100000000) return {};
            for (Int a = 1; a * a <= rest; ++a) {
                Int b2 = rest - a * a;
                if (is_perfect_square(b2)) {
                    Int b = isqrt(b2);
                    if (!multiply_in({a, b})) return {};
                    if (!multiply_in({a, -b})) return {};
                    break;
                }
            }
        }
    }
    return divs;
}

bool coeffs_gaussian(const Poly& f) {
    if (!f.tower().has_imaginary()) return false;
    for (const auto& c : f.coeffs())
        for (const auto& [m, q] : c.coefficients())
            if (m > 1u) return false;
    return true;
}

// Roots of f lying in Q(i), extracted by the Gaussian analogue of the
// rational root theorem; deflates and returns the remainder.
Poly extract_gaussian_roots(Poly f, std::vector<SpherePoint>& out) {
    const Tower& t = f.tower();
    Int lcm = 1;
    for (const auto& c : f.coeffs())
        for (const auto& [m, q] : c.coefficients()) {
            Int den = q.get_den();
            lcm = lcm / gcd(lcm, den) * den;
        }
    auto gauss_at = [&](int idx) {
        GaussInt g{Int(0), Int(0)};
        TowerElement c = f.coeff(idx);
        for (const auto& [m, q] : c.coefficients()) {
            Rat scaled = q * Rat(lcm);
            if (m == 0)
                g.re = Int(scaled);
            else
                g.im = Int(scaled);
        }
        return g;
    };
    if (gnorm(gauss_at(0)) == 0) {
        out.emplace_back(SpherePoint(Rat(0)));
        f = Poly::exact_div(f, Poly::variable(t));
        return extract_gaussian_roots(std::move(f), out);
    }
    std::vector<GaussInt> ps = gaussian_divisors(gauss_at(0));
    std::vector<GaussInt> qs = gaussian_divisors(gauss_at(f.degree()));
    if (ps.empty() || qs.empty() || ps.size() * qs.size() > 20000) return f;
    TowerElement iu = TowerElement::imaginary_unit(t);
    for (const GaussInt& p : ps) {
        for (const GaussInt& q : qs) {
            TowerElement num = TowerElement(Rat(p.re), t) + iu * TowerElement(Rat(p.im), t);
            TowerElement den = TowerElement(Rat(q.re), t) + iu * TowerElement(Rat(q.im), t);
            TowerElement base = num / den;
            TowerElement cand = base;
            for (int u = 0; u < 4; ++u) {
                if (f.eval(cand).is_zero()) {
                    out.emplace_back(cand);
                    Poly lin = Poly::variable(t) - Poly(cand);
                    f = Poly::exact_div(f, lin);
                    if (f.degree() == 0) return f;
                }
                cand = cand * iu;
            }
        }
    }
    return f;
}

// Extract rational roots of a squarefree rational-coefficient poly, deflating
// as it goes; returns the deflated remainder.
Poly extract_rational_roots(Poly f, std::vector<SpherePoint>& out) {
    // clear denominators
    Int lcm = 1;
    for (const auto& c : f.coeffs()) {
        if (c.is_zero()) continue;
        Rat r = c.rational_value();
        Int den = r.get_den();
        lcm = lcm / gcd(lcm, den) * den;
    }
    std::vector<Int> ic;
    for (const auto& c : f.coeffs())
        ic.push_back(c.is_zero() ? Int(0) : Int(c.rational_value() * Rat(lcm)));
    Int content = 0;
    for (const auto& v : ic) content = gcd(content, v);
    if (content > 1)
        for (auto& v : ic) v /= content;
    if (ic.front() == 0) {
        // squarefree, so z divides exactly once
        out.emplace_back(SpherePoint(Rat(0)));
        f = Poly::exact_div(f, Poly::variable(f.tower()));
        return extract_rational_roots(std::move(f), out);
    }
    std::vector<Int> ps = small_divisors(ic.front());
    std::vector<Int> qs = small_divisors(ic.back());
    if (ps.empty() || qs.empty() || ps.size() * qs.size() > 20000) return f;
    for (const Int& p : ps) {
        for (const Int& q : qs) {
            for (int sign : {+1, -1}) {
                Rat cand(sign * p, q);
                cand.canonicalize();
                TowerElement val = f.eval(TowerElement(cand, f.tower()));
                if (val.is_zero()) {
                    out.emplace_back(SpherePoint(cand));
                    Poly lin = Poly::variable(f.tower()) - Poly(cand, f.tower());
                    f = Poly::exact_div(f, lin);
                    if (f.degree() == 0) return f;
                }
            }
        }
    }
    return f;
}

struct Splitter {
    int depth_cap;
    std::vector<SpherePoint> roots;
    std::vector<Poly> unresolved;

    void split(Poly f) {
        f = f.monic();
        if (f.degree() <= 0) return;
        if (f.degree() == 1) {
            roots.emplace_back(-(f.coeff(0)));
            return;
        }
        if (f.degree() == 2) {
            split_quadratic(f);
            return;
        }
        if (all_rational(f)) {
            std::vector<SpherePoint> found;
            f = extract_rational_roots(std::move(f), found);
            roots.insert(roots.end(), found.begin(), found.end());
            if (f.degree() <= 0) return;
            if (f.degree() <= 2) {
                split(f);
                return;
            }
        } else if (coeffs_gaussian(f)) {
            std::vector<SpherePoint> found;
            f = extract_gaussian_roots(std::move(f), found);
            roots.insert(roots.end(), found.begin(), found.end());
            if (f.degree() <= 0) return;
            if (f.degree() <= 2) {
                split(f);
                return;
            }
        }
        // even-support compression: f(z) = g(z^2)
        bool even = true;
        for (int e : f.support())
            if (e % 2 != 0) {
                even = false;
                break;
            }
        if (even) {
            std::vector<TowerElement> gc;
            for (int i = 0; i <= f.degree(); i += 2) gc.push_back(f.coeff(i));
            Poly g = Poly::from_coeffs(gc);
            Splitter sub{depth_cap, {}, {}};
            sub.split(g);
            for (const Poly& u : sub.unresolved) {
                // map unresolved factor of g back through y = z^2
                std::vector<TowerElement> fc(std::size_t(2 * u.degree()) + 1,
                                             TowerElement(Rat(0), u.tower()));
                for (int i = 0; i <= u.degree(); ++i) fc[std::size_t(2 * i)] = u.coeff(i);
                unresolved.push_back(Poly::from_coeffs(fc));
            }
            for (const SpherePoint& r : sub.roots) {
                assert(!r.is_infinity());
                auto s = sqrt_in_tower(r.finite_value(), SqrtPolicy::AdjoinRational, depth_cap);
                if (!s) {
                    Poly z = Poly::variable(r.tower());
                    unresolved.push_back(z * z - Poly(r.finite_value()));
                    continue;
                }
                roots.emplace_back(*s);
                roots.emplace_back(-*s);
            }
            return;
        }
        if (f.degree() == 4 && split_quartic(f)) return;
        unresolved.push_back(f);
    }

    // Monic squarefree quartic: depress, then factor into two quadratics over
    // the tower via a rational point of the resolvent cubic.
    bool split_quartic(const Poly& f) {
        const Tower& t = f.tower();
        TowerElement quarter = f.coeff(3) / TowerElement(Rat(4), t);
        Poly z = Poly::variable(t);
        Poly g = f.compose(z - Poly(quarter)); // depressed: z^4 + Q z^2 + R z + S
        TowerElement Q = g.coeff(2), R = g.coeff(1), S = g.coeff(0);
        auto emit = [&](const Poly& quad) {
            Splitter sub{depth_cap, {}, {}};
            sub.split(quad);
            for (const SpherePoint& r : sub.roots)
                roots.emplace_back(r.finite_value() - quarter);
            for (const Poly& u : sub.unresolved)
                unresolved.push_back(u.compose(Poly::variable(u.tower()) + Poly(quarter)));
        };
        if (R.is_zero()) {
            // biquadratic after depression
            Poly y = Poly::variable(t);
            Poly comp = y * y + y * Q + Poly(S);
            Splitter sub{depth_cap, {}, {}};
            sub.split(comp);
            if (!sub.unresolved.empty()) return false;
            bool ok = true;
            std::vector<SpherePoint> got;
            for (const SpherePoint& r : sub.roots) {
                auto s = sqrt_in_tower(r.finite_value(), SqrtPolicy::AdjoinRational, depth_cap);
                if (!s) {
                    ok = false;
                    break;
                }
                got.emplace_back(*s - quarter);
                got.emplace_back(-*s - quarter);
            }
            if (!ok) return false;
            roots.insert(roots.end(), got.begin(), got.end());
            return true;
        }
        // resolvent: y (Q + y)^2 - 4 S y - R^2, whose roots are the a^2 of
        // g = (z^2 + a z + b)(z^2 - a z + c)
        Poly y = Poly::variable(t);
        Poly qq = y + Poly(Q);
        Poly res = y * qq * qq - y * (TowerElement(Rat(4), t) * S) - Poly(R * R);
        Splitter sub{depth_cap, {}, {}};
        sub.split(res.monic());
        for (const SpherePoint& yr : sub.roots) {
            const TowerElement& yv = yr.finite_value();
            if (yv.is_zero()) continue;
            auto a = sqrt_in_tower(yv, SqrtPolicy::AdjoinRational, depth_cap);
            if (!a) continue;
            TowerElement half(Rat(1, 2), t);
            TowerElement cb = (Q + yv + R / *a) * half; // c
            TowerElement bb = (Q + yv - R / *a) * half; // b
            if (!(bb * cb == S)) continue;
            Poly zz = Poly::variable(a->tower());
            emit(zz * zz + zz * *a + Poly(bb));
            emit(zz * zz - zz * *a + Poly(cb));
            return true;
        }
        return false;
    }

    void split_quadratic(const Poly& f) {
        TowerElement a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
        const Tower& t = f.tower();
        TowerElement disc = b * b - TowerElement(Rat(4), t) * a * c;
        auto s = sqrt_in_tower(disc, SqrtPolicy::AdjoinRational, depth_cap);
        if (!s) {
            unresolved.push_back(f);
            return;
        }
        TowerElement inv2a = (TowerElement(Rat(2), t) * a).inverse();
        roots.emplace_back((-b + *s) * inv2a);
        if (!s->is_zero()) roots.emplace_back((-b - *s) * inv2a);
        // squarefree input cannot have a double root; s == 0 would contradict it
        assert(!s->is_zero());
    }
};

} // namespace

RootList find_roots(const Poly& p, int depth_cap) {
    if (p.is_zero()) throw Error("roots of the zero polynomial");
    RootList out;
    if (p.degree() == 0) return out;
    for (const auto& [part, mult] : Poly::squarefree_decomposition(p)) {
        Splitter s{depth_cap, {}, {}};
        s.split(part);
        for (const auto& r : s.roots) out.roots.emplace_back(r, mult);
        for (const auto& u : s.unresolved) out.unresolved.emplace_back(u, mult);
    }
    out.complete = out.unresolved.empty();
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<std::pair<SpherePoint, int>> roots_in_tower(const Poly& p, int depth_cap) {
    RootList rl = find_roots(p, depth_cap);
    if (!rl.complete) {
        auto smallest = std::min_element(
            rl.unresolved.begin(), rl.unresolved.end(),
            [](const auto& a, const auto& b) { return a.first.degree() < b.first.degree(); });
        throw NeedsExtension(smallest->first);
    }
    return rl.roots;
}

} // namespace ratsym
