#ifndef QUADCAL_ENUMERATE_HPP
#define QUADCAL_ENUMERATE_HPP

#include <vector>

#include "quadcal/surd.hpp"

namespace quadcal {

// Exactly the reduced quadratic irrationals of discriminant D, sorted by
// (P, Q). Scheme: w = (B + sqrt(D))/(2a) with B = D (mod 2),
// 1 <= B <= floor(sqrt(D)), sqrt(D)-B < 2a < sqrt(D)+B (compared by
// squaring), 4a | B^2 - D and GCD(a, B, (B^2-D)/(4a)) = 1. Imprimitive
// triples are skipped, not rescaled.
std::vector<QuadSurd> enumerate_reduced(const Int& D);

// Exactly the m-reduced numbers of discriminant D, sorted by (P, Q):
// w = (B + sqrt(D))/(2a) with c = (B^2-D)/(4a) a positive integer,
// GCD(a,B,c) = 1, B > sqrt(D) and (B-2a)^2 < D. Finiteness comes from
// a + c <= (D-1)/2: with B = a+c+k, k >= 1, the identity
// D = (a-c)^2 + 2k(a+c) + k^2 bounds a+c. The loop walks u = a-c and
// factors D - u^2 = (B-s)(B+s) over s = a+c.
std::vector<QuadSurd> enumerate_m_reduced(const Int& D);

// One continued-fraction cycle: the orbit of the shift map, members in
// walk order from the least seed, plus its canonical digit word.
struct CFCycle {
    std::vector<QuadSurd> members;
    std::vector<Int> word;  // lexicographically least rotation
};

// Partition of Q(D) (plus) resp. Q+(D) (minus) into shift-map cycles,
// sorted by canonical word. Every enumerated element lands in exactly
// one cycle; a step leaving the enumerated set is an invariant
// violation and throws.
std::vector<CFCycle> classes(const Int& D, CFKind kind);

struct DiscriminantProfile {
    Int D;
    Int kappa;       // |Q(D)|  == sum of plus-cycle lengths
    Int kappa_plus;  // |Q+(D)| == sum of plus-cycle digit sums
    Int h;           // number of plus cycles (wide class number)
    Int h_plus;      // number of minus cycles (narrow class number)
    std::vector<std::vector<Int>> cycles_plus;
    std::vector<std::vector<Int>> cycles_minus;
};

// Computes kappa and kappa_plus both ways -- direct cardinalities from
// the enumerators and the cycle sums -- and throws std::logic_error if
// the two routes ever disagree. Never reconciled silently.
DiscriminantProfile profile(const Int& D);

}  // namespace quadcal

#endif
