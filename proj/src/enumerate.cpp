#include "quadcal/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace quadcal {

namespace {

// Almost every discriminant the scanners touch fits comfortably in 64
// bits, where the divisor loops below are an order of magnitude faster
// than with mpz. The generic Int path keeps correctness unconditional.

long ll_isqrt(long n) {
    if (n < 0) throw std::domain_error("ll_isqrt: negative");
    auto r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

template <class T>
T t_isqrt(const T& n) {
    if constexpr (std::is_same_v<T, long>)
        return ll_isqrt(n);
    else
        return isqrt(n);
}

template <class T>
T t_gcd(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, long>)
        return std::gcd(a, b);
    else
        return gcd_int(a, b);
}

// (B, 2a) pairs of the reduced enumeration, any order.
template <class T>
std::vector<std::pair<T, T>> reduced_pairs(const T& D) {
    std::vector<std::pair<T, T>> out;
    T r = t_isqrt(D);
    T B = (D % 2 == 0) ? 2 : 1;
    for (; B <= r; B += 2) {
        T M = (D - B * B) / 4;  // exact: B = D (mod 2)
        for (T d = 1; d * d <= M; ++d) {
            if (M % d != 0) continue;
            T cands[2] = {d, M / d};
            int ncand = (cands[0] == cands[1]) ? 1 : 2;
            for (int i = 0; i < ncand; ++i) {
                const T& a = cands[i];
                T twoa = 2 * a;
                if ((twoa + B) * (twoa + B) <= D) continue;  // need sqrt(D) - B < 2a
                if (twoa > B && (twoa - B) * (twoa - B) >= D) continue;  // 2a < sqrt(D) + B
                T c = M / a;
                if (t_gcd(a, t_gcd(B, c)) != 1) continue;
                out.emplace_back(B, twoa);
            }
        }
    }
    return out;
}

// (B, 2a) pairs of the m-reduced enumeration via u = a - c.
template <class T>
std::vector<std::pair<T, T>> m_reduced_pairs(const T& D) {
    std::vector<std::pair<T, T>> out;
    T r = t_isqrt(D);
    for (T u = 0; u <= r; ++u) {
        T K = D - u * u;  // = (B - s)(B + s) with s = a + c
        for (T e = 1; e * e <= K; ++e) {
            if (K % e != 0) continue;
            T f = K / e;
            if ((f - e) % 2 != 0) continue;
            T s = (f - e) / 2;
            if (s < u + 2) continue;
            if ((s - u) % 2 != 0) continue;
            T B = (e + f) / 2;
            T a = (s + u) / 2;
            T c = (s - u) / 2;
            if (t_gcd(a, t_gcd(B, c)) != 1) continue;
            out.emplace_back(B, 2 * a);
            if (u > 0) out.emplace_back(B, 2 * c);
        }
    }
    return out;
}

constexpr long kFastPathBound = 1L << 31;

std::vector<QuadSurd> pairs_to_surds(const Int& D,
                                     std::vector<std::pair<Int, Int>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    std::vector<QuadSurd> out;
    out.reserve(pairs.size());
    for (auto& [B, Q] : pairs) out.emplace_back(std::move(B), std::move(Q), D);
    return out;
}

std::vector<QuadSurd> enumerate_impl(const Int& D, bool m_reduced) {
    if (!is_valid_discriminant(D))
        throw std::domain_error("enumerate: invalid discriminant");
    std::vector<std::pair<Int, Int>> pairs;
    if (D < kFastPathBound) {
        long d = mpz_get_si(D.get_mpz_t());
        auto fast = m_reduced ? m_reduced_pairs<long>(d) : reduced_pairs<long>(d);
        pairs.reserve(fast.size());
        for (auto [B, Q] : fast) pairs.emplace_back(B, Q);
    } else {
        pairs = m_reduced ? m_reduced_pairs<Int>(D) : reduced_pairs<Int>(D);
    }
    return pairs_to_surds(D, std::move(pairs));
}

}  // namespace

std::vector<QuadSurd> enumerate_reduced(const Int& D) { return enumerate_impl(D, false); }

std::vector<QuadSurd> enumerate_m_reduced(const Int& D) { return enumerate_impl(D, true); }

std::vector<CFCycle> classes(const Int& D, CFKind kind) {
    auto elems = (kind == CFKind::plus) ? enumerate_reduced(D) : enumerate_m_reduced(D);
    std::map<std::pair<Int, Int>, bool> visited;  // (P,Q) -> walked
    for (const auto& w : elems) visited.emplace(std::make_pair(w.P(), w.Q()), false);

    std::vector<CFCycle> cycles;
    for (const auto& seed : elems) {
        auto it = visited.find(std::make_pair(seed.P(), seed.Q()));
        if (it->second) continue;
        CFCycle cyc;
        QuadSurd cur = seed;
        do {
            auto cur_it = visited.find(std::make_pair(cur.P(), cur.Q()));
            if (cur_it == visited.end()) {
                std::ostringstream os;
                os << "classes: shift map left the enumerated set at " << to_string(cur);
                throw std::logic_error(os.str());
            }
            cur_it->second = true;
            CFStep st = (kind == CFKind::plus) ? cf_step_plus(cur) : cf_step_minus(cur);
            cyc.members.push_back(std::move(cur));
            cyc.word.push_back(st.digit);
            cur = st.next;
        } while (!(cur == seed));
        cyc.word = lex_min_rotation(cyc.word);
        cycles.push_back(std::move(cyc));
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const CFCycle& a, const CFCycle& b) { return a.word < b.word; });
    return cycles;
}

DiscriminantProfile profile(const Int& D) {
    DiscriminantProfile p;
    p.D = D;

    auto reduced = enumerate_reduced(D);
    auto m_reduced = enumerate_m_reduced(D);
    auto plus = classes(D, CFKind::plus);
    auto minus = classes(D, CFKind::minus);

    Int kappa_cycles = 0, kappa_plus_cycles = 0, kappa_plus_minus_route = 0;
    for (const auto& c : plus) {
        kappa_cycles += static_cast<long>(c.word.size());
        for (const Int& a : c.word) kappa_plus_cycles += a;
    }
    for (const auto& c : minus) kappa_plus_minus_route += static_cast<long>(c.word.size());

    Int kappa_direct(static_cast<long>(reduced.size()));
    Int kappa_plus_direct(static_cast<long>(m_reduced.size()));

    if (kappa_direct != kappa_cycles || kappa_plus_direct != kappa_plus_cycles ||
        kappa_plus_direct != kappa_plus_minus_route) {
        std::ostringstream os;
        os << "profile: dual-route mismatch at D=" << D << ": |Q(D)|=" << kappa_direct
           << " vs cycle lengths " << kappa_cycles << "; |Q+(D)|=" << kappa_plus_direct
           << " vs plus-cycle digit sums " << kappa_plus_cycles << " vs minus-cycle lengths "
           << kappa_plus_minus_route;
        throw std::logic_error(os.str());
    }

    p.kappa = kappa_direct;
    p.kappa_plus = kappa_plus_direct;
    p.h = static_cast<long>(plus.size());
    p.h_plus = static_cast<long>(minus.size());
    for (auto& c : plus) p.cycles_plus.push_back(std::move(c.word));
    for (auto& c : minus) p.cycles_minus.push_back(std::move(c.word));
    return p;
}

}  // namespace quadcal
