#ifndef RATSYM_CRITICAL_HPP
#define RATSYM_CRITICAL_HPP

#include "ratsym/moebius.hpp"
#include "ratsym/roots.hpp"

#include <map>
#include <vector>

namespace ratsym {

// Full fiber of A over one value with local multiplicities.
struct FiberProfile {
    SpherePoint value;
    std::vector<std::pair<SpherePoint, int>> points; // representable points
    std::vector<int> signature;                      // full multiplicity multiset, sorted
    int cardinality = 0;                             // number of distinct points in the fiber
    bool exact = true;                               // every point representable
};

struct CriticalData {
    std::vector<std::pair<SpherePoint, int>> critical_points; // representable, local mult
    bool points_exact = true;
    std::vector<FiberProfile> fibers; // one per representable critical value
    bool exact = true;                // points and all fibers representable
    std::map<int, int> profile;       // local multiplicity (>=2) -> point count; always exact
};

// Local multiplicity profile over all of CP^1 (entries with multiplicity >= 2
// only); exact regardless of root representability.
std::map<int, int> ramification_profile(const RatFunc& a);

// Exactly two critical values <=> two critical points of full multiplicity.
bool is_quasi_power(const RatFunc& a);

CriticalData critical_data(const RatFunc& a, int depth_cap);

// Fiber of A over v, with multiplicities; infinity enters via degree drop.
FiberProfile fiber_profile(const RatFunc& a, const SpherePoint& v, int depth_cap);

struct FixedPointList {
    std::vector<std::pair<SpherePoint, int>> points;
    bool complete = true;
};
FixedPointList fixed_points(const RatFunc& a, int depth_cap);

// The set of critical values as a symbolic locus: a monic squarefree
// polynomial whose complex roots are the finite critical values, plus a flag
// for infinity.  Exact even when the values are not tower-representable.
struct ValueLocus {
    Poly finite;           // monic squarefree (constant 1 when empty)
    bool infinite = false; // infinity belongs to the set
    int count() const { return std::max(finite.degree(), 0) + (infinite ? 1 : 0); }
    bool contains(const SpherePoint& v) const;
};

ValueLocus critical_value_locus(const RatFunc& a);
int critical_value_count(const RatFunc& a);
bool is_critical_value(const RatFunc& a, const SpherePoint& v);

ValueLocus locus_union(const ValueLocus& a, const ValueLocus& b);
// Image of a locus under a rational map: { f(r) : r in locus }.
ValueLocus image_locus(const RatFunc& f, const ValueLocus& src);
// c(A^(k)) via the chain rule c(F.G) = c(F) u F(c(G)); never materializes A^(k).
ValueLocus iterate_critical_locus(const RatFunc& a, int k);

// nu(src) subseteq dst, decided exactly (symbolic roots included).
bool moebius_maps_locus_into(const MoebiusMap& nu, const ValueLocus& src, const ValueLocus& dst);

// Proof of indecomposability via local multiplicities: for every split of the
// degree some critical multiplicity cannot factor accordingly.  False means
// "no proof", not "decomposable".
bool indecomposable_by_multiplicity(const RatFunc& a);

} // namespace ratsym

#endif
