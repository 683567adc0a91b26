#ifndef QUADCAL_UNITS_HPP
#define QUADCAL_UNITS_HPP

#include "quadcal/surd.hpp"

namespace quadcal {

// epsilon_D = (t + u*sqrt(D))/2, the smallest unit > 1 of the order of
// discriminant D: t, u > 0 minimal with t^2 - D u^2 = +-4.
struct FundamentalUnit {
    Int t, u;
    int norm;  // sign of t^2 - D u^2, i.e. N(epsilon_D)
};

// Extracted from the period matrix M = (p q; r s) of the principal
// cycle: u = GCD(r, s-p, q), t = p + s, norm = det M = (-1)^l. The
// naive ascending Pell search lives in the tests as the oracle.
FundamentalUnit fundamental_unit(const Int& D);

// D = f^2 * D0 with D0 fundamental (D0 = 1 mod 4 squarefree, or 4m with
// m = 2,3 mod 4 squarefree).
struct ConductorSplit {
    Int D0;
    Int f;
};

ConductorSplit conductor_split(const Int& D);

// Smallest k >= 1 with f | u_k, where epsilon_D0^k = (t_k + u_k sqrt(D0))/2;
// then epsilon_{f^2 D0} = epsilon_D0^mu. Cross-asserted against
// fundamental_unit(f^2 D0). The search is capped at 6*f*log2(D0) steps
// and throws rather than looping on a logic bug.
Int unit_index_mu(const Int& D0, const Int& f);

// h(D) = h(D0) * f / mu * prod_{p | f} (1 - chi_D0(p)/p), evaluated in
// exact arithmetic; a non-integral or non-positive result throws.
Int class_number_formula(const Int& D, const Int& h_D0);

}  // namespace quadcal

#endif
