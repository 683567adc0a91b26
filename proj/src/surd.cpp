#include "quadcal/surd.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace quadcal {

bool is_valid_discriminant(const Int& D) {
    if (D <= 0) return false;
    int m = mod4(D);
    if (m != 0 && m != 1) return false;
    return !is_perfect_square(D);
}

QuadSurd::QuadSurd(Int P, Int Q, Int D) {
    if (Q == 0) throw std::domain_error("QuadSurd: Q must be nonzero");
    if (!is_valid_discriminant(D)) throw std::domain_error("QuadSurd: invalid discriminant");
    Int excess = D - P * P;
    if (excess % Q != 0) {
        // Rescale by the least g with Q | g*(D - P^2): the triple
        // (P*g, Q*g, D*g^2) names the same real number.
        Int g = abs_int(Q) / gcd_int(Q, excess);
        P *= g;
        Q *= g;
        D *= g * g;
        // Pull square factors back out where validity and divisibility
        // survive, so the representation stays small.
        Int common = gcd_int(P, Q);
        for (Int k = 2; k * k <= common; ++k) {
            while (common % k == 0) {
                Int D2 = D / (k * k);
                if (D % (k * k) == 0 && is_valid_discriminant(D2) &&
                    (D2 - (P / k) * (P / k)) % (Q / k) == 0) {
                    P /= k;
                    Q /= k;
                    D = D2;
                    common = gcd_int(P, Q);
                } else {
                    break;
                }
            }
        }
    }
    P_ = std::move(P);
    Q_ = std::move(Q);
    D_ = std::move(D);
}

QuadSurd make_surd(Int P, Int Q, Int D) {
    return QuadSurd(std::move(P), std::move(Q), std::move(D));
}

std::string to_string(const QuadSurd& w) {
    std::ostringstream os;
    os << "(" << w.P() << "+sqrt(" << w.D() << "))/" << w.Q();
    return os.str();
}

QuadSurd from_poly(const QuadPoly& f) {
    if (f.a <= 0) throw std::domain_error("from_poly: leading coefficient must be positive");
    if (gcd_int(gcd_int(f.a, f.b), f.c) != 1)
        throw std::domain_error("from_poly: coefficients must be primitive");
    Int D = f.disc();
    if (!is_valid_discriminant(D)) throw std::domain_error("from_poly: invalid discriminant");
    return QuadSurd(-f.b, 2 * f.a, D);
}

QuadPoly to_poly(const QuadSurd& w) {
    // Q^2 w^2 - 2PQ w + (P^2 - D) = 0, divided by its content.
    Int a = w.Q() * w.Q();
    Int b = -2 * w.P() * w.Q();
    Int c = w.P() * w.P() - w.D();
    Int g = gcd_int(gcd_int(a, b), c);
    return QuadPoly{a / g, b / g, c / g};
}

namespace {

// Sign of sqrt(D) - t for positive non-square D (never zero).
int cmp_sqrt_minus(const Int& D, const Int& t) {
    if (t <= 0) return 1;
    return (D > t * t) ? 1 : -1;
}

}  // namespace

int compare_with(const QuadSurd& w, const Int& m) {
    // w - m = (sqrt(D) - (mQ - P))/Q
    int s = cmp_sqrt_minus(w.D(), m * w.Q() - w.P());
    return signum(w.Q()) > 0 ? s : -s;
}

int compare_conj_with(const QuadSurd& w, const Int& m) {
    // w' - m = -(sqrt(D) - (P - mQ))/Q
    int s = cmp_sqrt_minus(w.D(), w.P() - m * w.Q());
    return signum(w.Q()) > 0 ? -s : s;
}

bool is_reduced(const QuadSurd& w) {
    return compare_with(w, 1) > 0 && compare_conj_with(w, -1) > 0 &&
           compare_conj_with(w, 0) < 0;
}

bool is_m_reduced(const QuadSurd& w) {
    return compare_with(w, 1) > 0 && compare_conj_with(w, 0) > 0 &&
           compare_conj_with(w, 1) < 0;
}

Int floor_of(const QuadSurd& w) {
    Int r = isqrt(w.D());
    // sqrt(D) lies strictly between r and r+1, so the floor is a floor
    // division of an integer numerator.
    Int num = (w.Q() > 0) ? Int(w.P() + r) : Int(-(w.P() + r + 1));
    Int res;
    Int q = abs_int(w.Q());
    mpz_fdiv_q(res.get_mpz_t(), num.get_mpz_t(), q.get_mpz_t());
    return res;
}

Int ceil_of(const QuadSurd& w) {
    return floor_of(w) + 1;  // w is irrational, never an integer
}

QuadSurd neg_inv_conj(const QuadSurd& w) {
    return QuadSurd(w.P(), (w.D() - w.P() * w.P()) / w.Q(), w.D());
}

CFStep cf_step_plus(const QuadSurd& w) {
    Int d = floor_of(w);
    Int Pn = d * w.Q() - w.P();
    Int Qn = (w.D() - Pn * Pn) / w.Q();
    return CFStep{d, QuadSurd(Pn, Qn, w.D())};
}

CFStep cf_step_minus(const QuadSurd& w) {
    Int d = ceil_of(w);
    Int Pn = d * w.Q() - w.P();
    Int Qn = (Pn * Pn - w.D()) / w.Q();
    return CFStep{d, QuadSurd(Pn, Qn, w.D())};
}

namespace {

// The first repeated (P,Q) state already yields the minimal period; the
// divisor-rotation check below is a cheap guard, not a reduction that is
// expected to fire.
std::vector<Int> minimal_period(const std::vector<Int>& word) {
    std::size_t n = word.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) ok = (word[i] == word[i - d]);
        if (ok) return std::vector<Int>(word.begin(), word.begin() + d);
    }
    return word;
}

constexpr std::size_t kExpandCap = 1u << 20;

}  // namespace

CFExpansion expand(const QuadSurd& w, CFKind kind) {
    std::map<std::pair<Int, Int>, std::size_t> seen;
    std::vector<Int> digits;
    QuadSurd cur = w;
    for (std::size_t i = 0;; ++i) {
        auto key = std::make_pair(cur.P(), cur.Q());
        if (auto it = seen.find(key); it != seen.end()) {
            CFExpansion e;
            e.kind = kind;
            e.preperiod.assign(digits.begin(), digits.begin() + it->second);
            e.period.assign(digits.begin() + it->second, digits.end());
            e.period = minimal_period(e.period);
            Int least_digit = (kind == CFKind::plus) ? 1 : 2;
            for (const Int& a : e.period)
                if (a < least_digit)
                    throw std::logic_error("expand: period digit below the kind's minimum");
            return e;
        }
        if (i >= kExpandCap) throw std::runtime_error("expand: no cycle within the step cap");
        seen.emplace(std::move(key), i);
        CFStep st = (kind == CFKind::plus) ? cf_step_plus(cur) : cf_step_minus(cur);
        digits.push_back(st.digit);
        cur = st.next;
    }
}

CFStats stats(const CFExpansion& e) {
    CFStats out;
    out.l = static_cast<long>(e.period.size());
    if (e.kind == CFKind::plus) {
        Int sum = 0;
        for (const Int& a : e.period) sum += a;
        out.S = sum;
    } else {
        Int count = 0;
        for (const Int& b : e.period)
            if (b >= 3) ++count;
        out.S_plus = count;
    }
    return out;
}

PeriodMatrix period_matrix(const std::vector<Int>& word) {
    if (word.empty()) throw std::domain_error("period_matrix: empty word");
    PeriodMatrix m{1, 0, 0, 1};
    for (const Int& a : word) {
        if (a < 1) throw std::domain_error("period_matrix: digits must be >= 1");
        // m := m * (a 1; 1 0)
        Int p = m.p * a + m.q;
        Int r = m.r * a + m.s;
        m.q = m.p;
        m.s = m.r;
        m.p = p;
        m.r = r;
    }
    return m;
}

bool matrix_parity_class(const std::vector<Int>& word) {
    if (word.empty()) throw std::domain_error("matrix_parity_class: empty word");
    // Entries of the F_2 product as bools: (p q; r s).
    bool p = true, q = false, r = false, s = true;
    for (const Int& a : word) {
        bool odd = mpz_odd_p(a.get_mpz_t()) != 0;
        // multiply by (a 1; 1 0) mod 2, i.e. (odd 1; 1 0)
        bool np = (p && odd) != q;
        bool nr = (r && odd) != s;
        q = p;
        s = r;
        p = np;
        r = nr;
    }
    // {I, O, O^2} = {(1 0; 0 1), (1 1; 1 0), (0 1; 1 1)}
    if (p && !q && !r && s) return true;
    if (p && q && r && !s) return true;
    if (!p && q && r && s) return true;
    return false;
}

namespace {

bool is_palindrome(const std::vector<Int>& v) {
    for (std::size_t i = 0, j = v.size(); i + 1 < j; ++i, --j)
        if (v[i] != v[j - 1]) return false;
    return true;
}

std::vector<Int> rotated(const std::vector<Int>& v, std::size_t k) {
    std::vector<Int> out;
    out.reserve(v.size());
    out.insert(out.end(), v.begin() + k, v.end());
    out.insert(out.end(), v.begin(), v.begin() + k);
    return out;
}

}  // namespace

AmbiguousShape shape_of_word(const std::vector<Int>& word) {
    if (word.empty()) return AmbiguousShape::none;
    if (is_palindrome(word))
        return (word.size() % 2 == 1) ? AmbiguousShape::odd_palindrome
                                      : AmbiguousShape::even_palindrome;
    if (word.size() % 2 == 0) {
        std::vector<Int> tail(word.begin() + 1, word.end());
        if (is_palindrome(tail)) return AmbiguousShape::offset_palindrome;
    }
    return AmbiguousShape::none;
}

AmbiguousShape ambiguous_shape(const std::vector<Int>& period) {
    if (period.empty()) return AmbiguousShape::none;
    bool offset_seen = false;
    for (std::size_t k = 0; k < period.size(); ++k) {
        auto rot = rotated(period, k);
        switch (shape_of_word(rot)) {
            case AmbiguousShape::odd_palindrome:
                return AmbiguousShape::odd_palindrome;
            case AmbiguousShape::even_palindrome:
                return AmbiguousShape::even_palindrome;
            case AmbiguousShape::offset_palindrome:
                offset_seen = true;
                break;
            case AmbiguousShape::none:
                break;
        }
    }
    return offset_seen ? AmbiguousShape::offset_palindrome : AmbiguousShape::none;
}

std::vector<Int> lex_min_rotation(const std::vector<Int>& word) {
    std::size_t n = word.size();
    if (n <= 1) return word;
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const Int& a = word[(k + i) % n];
            const Int& b = word[(best + i) % n];
            if (a != b) {
                if (a < b) best = k;
                break;
            }
        }
    }
    return rotated(word, best);
}

}  // namespace quadcal
