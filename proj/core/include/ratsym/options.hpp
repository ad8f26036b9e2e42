#ifndef RATSYM_OPTIONS_HPP
#define RATSYM_OPTIONS_HPP

#include <algorithm>
#include <cstddef>

namespace ratsym {

// Caps shared by the whole engine.  All defaults are desk-scale: iterates of
// degree up to 4096, towers of at most 6 adjoined square roots.
struct EngineOptions {
    long degree_budget = 4096;
    int tower_depth_cap = 6;
    std::size_t closure_cap = 256;
    std::size_t correspondence_cap = 100000;
    int max_kmax = 6;

    // Largest k with deg^k within budget, capped at max_kmax.
    int default_kmax(int degree) const {
        if (degree < 2) return 1;
        int k = 0;
        long pow = 1;
        while (pow <= degree_budget / degree) {
            pow *= degree;
            ++k;
            if (k >= max_kmax) break;
        }
        return std::max(1, k);
    }
};

} // namespace ratsym

#endif
