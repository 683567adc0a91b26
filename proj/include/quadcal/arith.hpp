#ifndef QUADCAL_ARITH_HPP
#define QUADCAL_ARITH_HPP

#include <gmpxx.h>

#include <utility>

namespace quadcal {

// All integer arithmetic in this project is exact. Int is arbitrary
// precision even where 64 bits would do: fundamental-unit coefficients
// grow exponentially in sqrt(D).
using Int = mpz_class;

inline int signum(const Int& x) { return mpz_sgn(x.get_mpz_t()); }

inline Int gcd_int(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int abs_int(const Int& a) {
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

// x mod 4 in {0,1,2,3}, also for negative x.
inline int mod4(const Int& x) {
    return static_cast<int>(mpz_fdiv_ui(x.get_mpz_t(), 4));
}

// Floor square root: r with r^2 <= n < (r+1)^2. Negative input is a
// domain error.
Int isqrt(const Int& n);

// True iff n = r^2 for some integer r >= 0. Negatives are never squares.
bool is_perfect_square(const Int& n);

// Kronecker symbol (a|n), full extension: multiplicative in n, with
// (a|2) = 0 for even a, +1 for a = +-1 (mod 8), -1 for a = +-3 (mod 8),
// and (a|-1) = sign of a. Restricts to the Legendre symbol for odd
// prime n not dividing a.
int kronecker(Int a, Int n);

// Deterministic primality test (strong pseudoprime test to the twelve
// prime bases 2..37, preceded by small trial division). The base set is
// proven correct for all n < 3317044064679887385961981; larger inputs
// throw std::domain_error so a verdict is never probabilistic.
bool is_prime(const Int& n);

// For a prime p = 1 (mod 4): the unique (x, y) with x^2 + y^2 = p and
// 0 < x < y. Brute force over x <= floor(sqrt(p/2)); instant at the
// scales the scanners use. Any other input is a domain error.
std::pair<Int, Int> two_squares(const Int& p);

}  // namespace quadcal

#endif
