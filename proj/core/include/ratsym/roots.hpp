#ifndef RATSYM_ROOTS_HPP
#define RATSYM_ROOTS_HPP

#include "ratsym/ratfunc.hpp"

#include <utility>
#include <vector>

namespace ratsym {

struct NeedsExtension : Error {
    Poly factor; // smallest squarefree factor that resisted resolution
    explicit NeedsExtension(Poly f)
        : Error("roots need a field extension; unresolved factor " + f.str()),
          factor(std::move(f)) {}
};

struct RootList {
    std::vector<std::pair<SpherePoint, int>> roots; // finite roots, multiplicity
    std::vector<std::pair<Poly, int>> unresolved;   // squarefree factors, multiplicity
    bool complete = true;
};

// Finite roots of p resolvable inside the tower: square-free factorization,
// rational-root extraction, z^2-compression of even supports, and quadratics
// with automatic sqrt(d) adjunction up to the depth cap.
RootList find_roots(const Poly& p, int depth_cap);

// Strict version per the critical module contract: throws NeedsExtension
// carrying the smallest unresolved factor.
std::vector<std::pair<SpherePoint, int>> roots_in_tower(const Poly& p, int depth_cap);

} // namespace ratsym

#endif
