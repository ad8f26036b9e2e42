#ifndef RATSYM_MOEBIUS_HPP
#define RATSYM_MOEBIUS_HPP

#include "ratsym/ratfunc.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ratsym {

// Degree-one map (az+b)/(cz+d) as a projective 2x2 matrix, scaled so the
// first nonzero entry in (a, b, c, d) order is 1.
class MoebiusMap {
public:
    MoebiusMap(); // identity
    MoebiusMap(TowerElement a, TowerElement b, TowerElement c, TowerElement d);
    static MoebiusMap identity(const Tower& t = Tower());
    static MoebiusMap scaling(const TowerElement& c);        // cz
    static MoebiusMap inversion_scaled(const TowerElement& c); // c/z

    const TowerElement& a() const { return e_[0]; }
    const TowerElement& b() const { return e_[1]; }
    const TowerElement& c() const { return e_[2]; }
    const TowerElement& d() const { return e_[3]; }
    const Tower& tower() const { return e_[0].tower(); }

    bool is_identity() const;
    TowerElement determinant() const;

    SpherePoint apply(const SpherePoint& p) const;
    MoebiusMap inverse() const;

    RatFunc to_ratfunc() const;
    static MoebiusMap from_ratfunc(const RatFunc& f); // requires degree 1

    // Order in PSL2: least k >= 1 with m^k = id, up to cap.
    std::optional<int> order(int cap) const;

    bool operator==(const MoebiusMap& o) const;
    bool operator!=(const MoebiusMap& o) const { return !(*this == o); }
    bool operator<(const MoebiusMap& o) const;

    std::string str() const;

private:
    std::array<TowerElement, 4> e_;
    void canonicalize();
};

// f . g : apply g first.
MoebiusMap moeb_compose(const MoebiusMap& f, const MoebiusMap& g);

// Unique Moebius map with src[i] -> dst[i]; triples must be pairwise distinct.
MoebiusMap moebius_from_three_points(const std::array<SpherePoint, 3>& src,
                                     const std::array<SpherePoint, 3>& dst);

// m^{-1} . a . m and the one-sided variants.
RatFunc conjugate_rf(const RatFunc& a, const MoebiusMap& m);
RatFunc pre_compose(const RatFunc& a, const MoebiusMap& m);  // a . m
RatFunc post_compose(const MoebiusMap& m, const RatFunc& a); // m . a

enum class GroupClass { Cyclic, Dihedral, A4, S4, A5 };

std::string group_class_name(GroupClass cls, int l); // "C3", "D8", "S4", ...

struct FiniteMoebiusGroup {
    std::vector<MoebiusMap> elements; // sorted, canonical, closed
    GroupClass cls = GroupClass::Cyclic;
    int l = 1; // order parameter: |G| = l (cyclic) or 2l (dihedral)
    std::vector<MoebiusMap> generators;

    std::size_t order() const { return elements.size(); }
    bool contains(const MoebiusMap& m) const;
    std::string class_name() const { return group_class_name(cls, l); }
    bool same_elements(const FiniteMoebiusGroup& o) const { return elements == o.elements; }
};

// Closure of a seed set under composition; throws ClosureCapExceeded when the
// closure grows past `cap` elements (non-finite or oversized seed).
FiniteMoebiusGroup group_closure(const std::vector<MoebiusMap>& seed, std::size_t cap);

// Classification by order and element-order multiset; input must be closed.
std::pair<GroupClass, int> classify_group(const std::vector<MoebiusMap>& elements);

struct InvariantFunction {
    RatFunc theta;
    MoebiusMap witness; // conjugates the group's maximal cyclic part to fix {0, inf}
};

// Invariant function for cyclic and dihedral groups (degree = |G|); throws
// UnsupportedClass for A4/S4/A5.
InvariantFunction invariant_function(const FiniteMoebiusGroup& g);

// Fixed points of a nonidentity Moebius map, when representable in the tower.
std::vector<SpherePoint> moebius_fixed_points(const MoebiusMap& m);

} // namespace ratsym

#endif
