#ifndef RATSYM_TESTS_SUPPORT_HPP
#define RATSYM_TESTS_SUPPORT_HPP

#include "ratsym/dynamics.hpp"
#include "ratsym/parse.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rt {

using namespace ratsym;

inline RatFunc rf(const std::string& expr) {
    Tower t;
    return parse_expression(expr, t);
}

inline RatFunc rf(const std::string& expr, Tower& t) { return parse_expression(expr, t); }

inline SpherePoint pt(long v) { return SpherePoint(Rat(v)); }
inline SpherePoint pt(long n, long d) {
    Rat q(n, d);
    q.canonicalize();
    return SpherePoint(q);
}
inline SpherePoint inf() { return SpherePoint::infinity(Tower()); }

// the paper's worked functions
inline RatFunc example21() { return rf("(z^4+8*z^3+8*z-8)/(8*(z-1))"); }
inline RatFunc fixtureB() { return rf("-2*z^2/(z^4+1)"); }
inline RatFunc quasiA() { return rf("(z^2-1)/(z^2+1)"); }
inline RatFunc x27() { return rf("z + 27/z^3"); }
inline RatFunc d12fixture() { return rf("z*(z^6-2)/(2*z^6-1)"); }
inline RatFunc kott3() { return rf("z*(z^2-2)/(2*z^2-1)"); }

// deterministic xorshift for the property suites
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : s(seed) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long range(long lo, long hi) { // inclusive
        return lo + long(next() % std::uint64_t(hi - lo + 1));
    }
};

inline Rat random_rat(Rng& rng, long spread = 5) {
    long num = rng.range(-spread, spread);
    long den = rng.range(1, 3);
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline TowerElement random_element(Rng& rng, const Tower& t, long spread = 5) {
    TowerElement x(random_rat(rng, spread), t);
    for (unsigned b = 0; b < t.mask_bits(); ++b) {
        if (b == 0 && !t.has_imaginary()) continue;
        if (rng.range(0, 1))
            x = x + TowerElement::monomial(t, 1u << b, random_rat(rng, spread));
    }
    return x;
}

inline Poly random_poly(Rng& rng, const Tower& t, int deg, long spread = 4) {
    std::vector<TowerElement> cs;
    for (int i = 0; i <= deg; ++i) cs.emplace_back(random_rat(rng, spread), t);
    if (cs.back().is_zero()) cs.back() = TowerElement(Rat(1), t);
    return Poly::from_coeffs(cs);
}

inline MoebiusMap random_moebius(Rng& rng, const Tower& t) {
    while (true) {
        TowerElement a(random_rat(rng, 3), t), b(random_rat(rng, 3), t);
        TowerElement c(random_rat(rng, 3), t), d(random_rat(rng, 3), t);
        if ((a * d - b * c).is_zero()) continue;
        return MoebiusMap(a, b, c, d);
    }
}

} // namespace rt

#endif
