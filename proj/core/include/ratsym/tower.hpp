#ifndef RATSYM_TOWER_HPP
#define RATSYM_TOWER_HPP

#include "ratsym/errors.hpp"
#include "ratsym/rational.hpp"

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ratsym {

// A multiquadratic extension of Q: at most one imaginary unit plus square
// roots of pairwise multiplicatively independent positive integers.  A
// requested sqrt(d) with d < 0 splits into i * sqrt(|d|).  Towers are
// immutable values; adjunction produces a new tower.
//
// Monomial masks: bit 0 is the imaginary unit, bits 1.. are the radicands in
// ascending order.  Independence invariant: no nonempty subset of radicands
// has a perfect-square product.
class Tower {
public:
    Tower();

    int depth() const { return (data_->has_i ? 1 : 0) + int(data_->radicands.size()); }
    bool has_imaginary() const { return data_->has_i; }
    const std::vector<Int>& radicands() const { return data_->radicands; }

    // Number of usable mask bits (radicands occupy bits 1..count).
    unsigned mask_bits() const { return 1u + unsigned(data_->radicands.size()); }

    // Square of the generator at `bit` (-1 for i, d for sqrt(d)).
    Int generator_square(unsigned bit) const;

    bool operator==(const Tower& o) const;
    bool operator!=(const Tower& o) const { return !(*this == o); }

    // True when every generator of `o` is a generator of *this.
    bool contains(const Tower& o) const;

    std::string name() const; // e.g. "Q(i, sqrt(2), sqrt(3))"

private:
    struct Data {
        bool has_i = false;
        std::vector<Int> radicands; // ascending, pairwise independent
    };
    std::shared_ptr<const Data> data_;
    explicit Tower(Data d);
    friend class TowerBuilder;
    friend struct AdjoinOps;
};

class TowerElement;

// Result of trying to adjoin a generator.
struct AdjoinResult {
    Tower tower;            // possibly extended
    // Representation of the requested radical in `tower`; for sqrt(d) this is
    // an element whose square is d.
    std::unique_ptr<TowerElement> value;
    bool extended = false;  // true if `tower` grew
    bool dependent = false; // true if representable in the *input* tower via a
                            // nontrivial combination (e.g. sqrt(8) = 2 sqrt(2))
};

// Adjoin the imaginary unit / sqrt(d).  Never throws DependentGenerator; the
// spec-level tower_adjoin front-end turns `dependent` into that error.
AdjoinResult adjoin_imaginary(const Tower& t, int depth_cap);
AdjoinResult adjoin_sqrt(const Tower& t, const Int& d, int depth_cap);

// Spec-level adjunction: i or sqrt(d); throws DependentGenerator for radicals
// representable through other generators and DepthCapExceeded past the cap.
Tower tower_adjoin_imaginary(const Tower& t, int depth_cap);
Tower tower_adjoin_sqrt(const Tower& t, const Int& d, int depth_cap);

// An element of a tower: map from generator-subset masks to rationals.
// Canonical form: no zero coefficients, every exponent 0 or 1.
class TowerElement {
public:
    TowerElement() = default; // zero over Q
    TowerElement(const Rat& r, Tower t = Tower());
    TowerElement(long v, Tower t = Tower());
    static TowerElement imaginary_unit(const Tower& t);
    static TowerElement monomial(const Tower& t, unsigned mask, const Rat& c);

    const Tower& tower() const { return tower_; }
    bool is_zero() const { return coeff_.empty(); }
    bool is_rational() const;
    Rat rational_value() const; // requires is_rational()
    const std::map<unsigned, Rat>& coefficients() const { return coeff_; }

    // Re-express over a tower containing this one's generators.
    TowerElement promoted_to(const Tower& t) const;

    TowerElement operator-() const;
    TowerElement operator+(const TowerElement& o) const;
    TowerElement operator-(const TowerElement& o) const;
    TowerElement operator*(const TowerElement& o) const;
    TowerElement operator/(const TowerElement& o) const; // throws DivisionByZero
    TowerElement& operator+=(const TowerElement& o) { return *this = *this + o; }
    TowerElement& operator-=(const TowerElement& o) { return *this = *this - o; }
    TowerElement& operator*=(const TowerElement& o) { return *this = *this * o; }
    TowerElement& operator/=(const TowerElement& o) { return *this = *this / o; }

    TowerElement inverse() const; // norm method, throws DivisionByZero

    bool operator==(const TowerElement& o) const;
    bool operator!=(const TowerElement& o) const { return !(*this == o); }
    // Total order for use in ordered containers (promotes if towers differ).
    bool operator<(const TowerElement& o) const;

    // Flip the sign of every monomial containing the generator at `bit`.
    TowerElement conjugated(unsigned bit) const;

    std::string str() const;          // re-parseable by the expression grammar
    std::complex<double> approx() const;

private:
    Tower tower_;
    std::map<unsigned, Rat> coeff_;
    void set(unsigned mask, Rat c);
    friend TowerElement mul_impl(const TowerElement& a, const TowerElement& b);
};

// Binary-op tower reconciliation: smallest common tower plus both operands
// re-expressed over it.  Merging may reorder radicand bits but never adjoins
// anything new unless one side has a generator the other lacks.
std::pair<TowerElement, TowerElement> promote(const TowerElement& a, const TowerElement& b);
Tower merge_towers(const Tower& a, const Tower& b);

enum class SqrtPolicy {
    NoAdjoin,       // witness only when the root lies in the current tower
    AdjoinRational, // adjoin sqrt(squarefree part) when the base case hits Q
};

// Square root inside a (possibly extended) tower.  On success the returned
// element satisfies result^2 == x (re-verified internally); `tower_out`
// receives the tower the result lives in.  Returns nullopt when no
// representation exists within the policy.
std::optional<TowerElement> sqrt_in_tower(const TowerElement& x, SqrtPolicy policy,
                                          int depth_cap, Tower* tower_out = nullptr);

// Spec-level sqrt: strict, same tower, throws SqrtNotInTower.
TowerElement field_sqrt(const TowerElement& x);

} // namespace ratsym

#endif
