#include "quadcal/arith.hpp"

#include <array>
#include <stdexcept>

namespace quadcal {

Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt: negative input");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

int kronecker(Int a, Int n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    if (mpz_even_p(n.get_mpz_t())) {
        if (mpz_even_p(a.get_mpz_t())) return 0;
        auto e = mpz_scan1(n.get_mpz_t(), 0);
        mpz_fdiv_q_2exp(n.get_mpz_t(), n.get_mpz_t(), e);
        if (e & 1) {
            unsigned long am8 = mpz_fdiv_ui(a.get_mpz_t(), 8);
            if (am8 == 3 || am8 == 5) result = -result;
        }
    }
    // n odd positive from here: the standard Jacobi reciprocity loop.
    mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    while (a != 0) {
        while (mpz_even_p(a.get_mpz_t())) {
            a >>= 1;
            unsigned long nm8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(a, n);
        if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3)
            result = -result;
        mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    }
    return (n == 1) ? result : 0;
}

namespace {

// Largest n for which the base set below is a proven deterministic test.
const Int kPrimeProofBound("3317044064679887385961981");

constexpr std::array<unsigned long, 12> kBases = {2,  3,  5,  7,  11, 13,
                                                  17, 19, 23, 29, 31, 37};

bool strong_probable_prime(const Int& n, unsigned long base) {
    // n odd, n > 3, base < n assumed by caller.
    Int d = n - 1;
    auto s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Int b(base), x;
    mpz_powm(x.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (decltype(s) i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (unsigned long p : kBases) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    if (n >= kPrimeProofBound)
        throw std::domain_error("is_prime: input beyond the proven deterministic range");
    for (unsigned long base : kBases)
        if (!strong_probable_prime(n, base)) return false;
    return true;
}

std::pair<Int, Int> two_squares(const Int& p) {
    if (!is_prime(p) || mod4(p) != 1)
        throw std::domain_error("two_squares: p must be a prime = 1 (mod 4)");
    for (Int x = 1; 2 * x * x < p; ++x) {
        Int y2 = p - x * x;
        if (is_perfect_square(y2)) return {x, isqrt(y2)};
    }
    throw std::logic_error("two_squares: no decomposition found");
}

}  // namespace quadcal
