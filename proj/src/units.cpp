#include "quadcal/units.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace quadcal {

namespace {

// Principal reduced surd (B0 + sqrt(D))/2 with B0 the largest value
// <= floor(sqrt(D)) of the right parity.
QuadSurd principal_surd(const Int& D) {
    Int r = isqrt(D);
    Int B0 = (mpz_odd_p(r.get_mpz_t()) == mpz_odd_p(D.get_mpz_t())) ? r : Int(r - 1);
    return QuadSurd(B0, 2, D);
}

std::vector<std::pair<Int, Int>> factorize(Int n) {
    std::vector<std::pair<Int, Int>> out;
    for (Int k = 2; k * k <= n; ++k) {
        if (n % k != 0) continue;
        Int e = 0;
        while (n % k == 0) {
            n /= k;
            ++e;
        }
        out.emplace_back(k, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

}  // namespace

FundamentalUnit fundamental_unit(const Int& D) {
    if (!is_valid_discriminant(D))
        throw std::domain_error("fundamental_unit: invalid discriminant");
    auto e = expand(principal_surd(D), CFKind::plus);
    if (!e.preperiod.empty())
        throw std::logic_error("fundamental_unit: principal surd not purely periodic");
    PeriodMatrix m = period_matrix(e.period);
    FundamentalUnit fu;
    fu.t = m.p + m.s;
    fu.u = gcd_int(m.r, gcd_int(abs_int(m.s - m.p), m.q));
    fu.norm = (e.period.size() % 2 == 0) ? 1 : -1;
    if (m.det() != fu.norm || fu.t * fu.t - D * fu.u * fu.u != 4 * fu.norm) {
        std::ostringstream os;
        os << "fundamental_unit: extraction failed at D=" << D;
        throw std::logic_error(os.str());
    }
    return fu;
}

ConductorSplit conductor_split(const Int& D) {
    if (!is_valid_discriminant(D))
        throw std::domain_error("conductor_split: invalid discriminant");
    Int s = 1, m = 1;
    for (const auto& [p, e] : factorize(D)) {
        for (Int i = 0; i < e / 2; ++i) s *= p;
        if (e % 2 == 1) m *= p;
    }
    if (mod4(m) == 1) return {m, s};
    // m = 2,3 (mod 4): the fundamental discriminant is 4m, and s must be
    // even since D = s^2 m = 0 (mod 4).
    return {4 * m, s / 2};
}

Int unit_index_mu(const Int& D0, const Int& f) {
    if (!is_valid_discriminant(D0) || conductor_split(D0).f != 1)
        throw std::domain_error("unit_index_mu: D0 must be a fundamental discriminant");
    if (f < 1) throw std::domain_error("unit_index_mu: f must be positive");
    if (f == 1) return 1;

    FundamentalUnit e1 = fundamental_unit(D0);
    Int cap = 6 * f * static_cast<long>(mpz_sizeinbase(D0.get_mpz_t(), 2));
    Int t = e1.t, u = e1.u;
    for (Int k = 1; k <= cap; ++k) {
        if (u % f == 0) {
            // epsilon_{f^2 D0} must equal epsilon_D0^k exactly.
            FundamentalUnit big = fundamental_unit(f * f * D0);
            if (big.t != t || big.u * f != u) {
                std::ostringstream os;
                os << "unit_index_mu: epsilon_" << f * f * D0 << " != epsilon_" << D0 << "^" << k;
                throw std::logic_error(os.str());
            }
            return k;
        }
        Int tn = (e1.t * t + D0 * e1.u * u) / 2;
        Int un = (e1.t * u + e1.u * t) / 2;
        t = tn;
        u = un;
    }
    throw std::runtime_error("unit_index_mu: search cap exceeded");
}

Int class_number_formula(const Int& D, const Int& h_D0) {
    auto [D0, f] = conductor_split(D);
    if (f == 1) return h_D0;
    Int mu = unit_index_mu(D0, f);
    Int num = h_D0 * f;
    Int den = mu;
    for (const auto& [p, e] : factorize(f)) {
        (void)e;
        num *= p - kronecker(D0, p);
        den *= p;
    }
    if (num % den != 0 || num <= 0) {
        std::ostringstream os;
        os << "class_number_formula: non-integral result at D=" << D << " (" << num << "/" << den
           << ")";
        throw std::logic_error(os.str());
    }
    return num / den;
}

}  // namespace quadcal
