#ifndef RATSYM_POLY_HPP
#define RATSYM_POLY_HPP

#include "ratsym/tower.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ratsym {

// Dense univariate polynomial over a tower, lowest degree first, trimmed.
class Poly {
public:
    Poly() = default; // zero
    explicit Poly(const TowerElement& c);
    explicit Poly(const Rat& c, Tower t = Tower());
    static Poly variable(const Tower& t = Tower());
    static Poly from_coeffs(std::vector<TowerElement> cs);
    static Poly monomial(int deg, const TowerElement& c);

    int degree() const { return int(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const Tower& tower() const { return tower_; }
    TowerElement coeff(int i) const;
    const std::vector<TowerElement>& coeffs() const { return c_; }
    TowerElement leading() const;
    std::vector<int> support() const;
    int valuation() const; // largest v with z^v | p; 0 for zero poly

    Poly promoted_to(const Tower& t) const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const TowerElement& s) const;
    Poly operator/(const TowerElement& s) const;
    Poly pow(unsigned e) const;
    Poly shifted(int k) const; // multiply by z^k (k >= 0)

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    TowerElement eval(const TowerElement& x) const;
    Poly derivative() const;
    Poly compose(const Poly& inner) const;
    // z^target_deg * p(1/z); requires target_deg >= degree()
    Poly reversed(int target_deg) const;

    Poly monic() const;

    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    static Poly exact_div(const Poly& a, const Poly& b);
    static Poly gcd(const Poly& a, const Poly& b); // monic (or zero)
    Poly squarefree_part() const;                  // monic
    // f = prod parts[i].first ^ parts[i].second with squarefree coprime parts
    static std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f);
    static TowerElement resultant(const Poly& a, const Poly& b);

    std::string str(const std::string& var = "z") const;

private:
    Tower tower_;
    std::vector<TowerElement> c_;
    void trim();
    void promote_all();
};

// Polynomial in a main variable whose coefficients are polynomials in a
// second variable; just enough for small resultant eliminations.
struct BiPoly {
    std::vector<Poly> c; // main-variable coefficients, lowest first, trimmed
    int degree() const { return int(c.size()) - 1; }
    void trim();
};

// Resultant with respect to the main variable; result is a polynomial in the
// coefficient variable.  Sylvester determinant, fraction-free elimination.
Poly bipoly_resultant(const BiPoly& f, const BiPoly& g);

} // namespace ratsym

#endif
