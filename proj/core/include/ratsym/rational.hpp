#ifndef RATSYM_RATIONAL_HPP
#define RATSYM_RATIONAL_HPP

#include <gmpxx.h>
#include <string>
#include <utility>

namespace ratsym {

using Int = mpz_class;
using Rat = mpq_class;

inline bool is_perfect_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// n = multiplier^2 * radicand with |radicand| square-free as far as trial
// division by primes below 10^4 can tell; very large square factors with no
// small prime part are still caught by the perfect-square fold at the end.
std::pair<Int, Int> squarefree_decompose(const Int& n);

// Exact m-th root of a rational, if it exists (principal sign conventions:
// even m requires x >= 0 and returns the positive root).
bool rational_nth_root(const Rat& x, unsigned m, Rat& out);

std::string rat_to_string(const Rat& q);

} // namespace ratsym

#endif
