#ifndef RATSYM_RATFUNC_HPP
#define RATSYM_RATFUNC_HPP

#include "ratsym/options.hpp"
#include "ratsym/poly.hpp"

#include <string>

namespace ratsym {

// Point of the Riemann sphere in projective coordinates (x : y), canonical
// form y = 1 for finite points and (1 : 0) for infinity.
class SpherePoint {
public:
    SpherePoint(); // 0
    explicit SpherePoint(const TowerElement& finite);
    explicit SpherePoint(const Rat& finite);
    SpherePoint(const TowerElement& x, const TowerElement& y); // not both zero
    static SpherePoint infinity(const Tower& t = Tower());

    bool is_infinity() const { return infinite_; }
    const TowerElement& finite_value() const; // requires !is_infinity()
    TowerElement x() const;
    TowerElement y() const;
    const Tower& tower() const { return value_.tower(); }

    bool operator==(const SpherePoint& o) const;
    bool operator!=(const SpherePoint& o) const { return !(*this == o); }
    bool operator<(const SpherePoint& o) const; // infinity sorts last

    std::string str() const;

private:
    TowerElement value_; // finite value; ignored when infinite_
    bool infinite_ = false;
};

// Rational function in lowest terms with canonical scaling: when the
// denominator is nonconstant its leading coefficient is 1, otherwise the
// denominator is the constant 1.
class RatFunc {
public:
    RatFunc(); // zero function 0/1
    RatFunc(Poly num, Poly den); // rf_make: reduces and rescales
    explicit RatFunc(const Poly& num);
    static RatFunc variable(const Tower& t = Tower());
    static RatFunc constant(const TowerElement& c);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const Tower& tower() const { return num_.tower(); }
    int degree() const; // max(deg num, deg den); constants give 0
    bool is_constant() const { return degree() == 0; }
    bool is_polynomial() const { return den_.degree() == 0; }

    RatFunc promoted_to(const Tower& t) const;

    // Field operations (used by the expression parser).
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;

    bool operator==(const RatFunc& o) const;
    bool operator!=(const RatFunc& o) const { return !(*this == o); }
    bool operator<(const RatFunc& o) const;

    SpherePoint eval(const SpherePoint& p) const;

    // this after inner: (*this)(inner(z)).  No reduction is needed: composing
    // lowest-terms functions cannot produce a common factor.
    RatFunc compose(const RatFunc& inner) const;
    RatFunc iterate(int k, long degree_budget) const; // A^(k) = A^(k-1) . A

    Poly derivative_numerator() const; // P'Q - PQ'
    RatFunc derivative() const;

    // Local multiplicity of the map at a point (1 = unramified).
    int local_multiplicity(const SpherePoint& p) const;

    std::string str() const;

private:
    Poly num_, den_;
    void canonicalize(bool reduce);
};

// Fiber polynomial of A over v: the monic-free poly whose finite roots are
// A^{-1}{v}; infinity belongs to the fiber iff the degree drops below deg A,
// with multiplicity equal to the drop.
Poly fiber_poly(const RatFunc& a, const SpherePoint& v);

} // namespace ratsym

#endif
