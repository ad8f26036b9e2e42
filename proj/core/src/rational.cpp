#include "ratsym/rational.hpp"

#include <vector>

namespace ratsym {

namespace {

const std::vector<unsigned>& small_primes() {
    static const std::vector<unsigned> primes = [] {
        std::vector<unsigned> ps;
        std::vector<bool> sieve(10000, true);
        for (unsigned p = 2; p < sieve.size(); ++p) {
            if (!sieve[p]) continue;
            ps.push_back(p);
            for (unsigned q = p * p; q < sieve.size(); q += p) sieve[q] = false;
        }
        return ps;
    }();
    return primes;
}

} // namespace

std::pair<Int, Int> squarefree_decompose(const Int& n) {
    if (n == 0) return {0, 0};
    Int mult = 1;
    Int rad = 1;
    Int rest = abs(n);
    for (unsigned p : small_primes()) {
        if (rest == 1) break;
        if (Int(p) * p > rest) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            rest /= p;
            ++e;
        }
        if (e == 0) continue;
        for (unsigned k = 0; k + 1 < e; k += 2) mult *= p;
        if (e % 2 == 1) rad *= p;
    }
    if (rest > 1) {
        if (is_perfect_square(rest)) {
            mult *= isqrt(rest);
        } else {
            rad *= rest;
        }
    }
    if (n < 0) rad = -rad;
    return {mult, rad};
}

bool rational_nth_root(const Rat& x, unsigned m, Rat& out) {
    if (m == 0) return false;
    if (m == 1) {
        out = x;
        return true;
    }
    if (x == 0) {
        out = 0;
        return true;
    }
    if (x < 0 && m % 2 == 0) return false;
    Int num = x.get_num();
    Int den = x.get_den();
    Int rn, rd;
    bool exact_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), m) != 0;
    bool exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), m) != 0;
    if (!exact_n || !exact_d) return false;
    out = Rat(rn, rd);
    out.canonicalize();
    return true;
}

std::string rat_to_string(const Rat& q) {
    return q.get_str();
}

} // namespace ratsym
