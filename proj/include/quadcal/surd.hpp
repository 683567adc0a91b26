#ifndef QUADCAL_SURD_HPP
#define QUADCAL_SURD_HPP

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "quadcal/arith.hpp"

namespace quadcal {

// D > 0, D = 0 or 1 (mod 4), D not a perfect square.
bool is_valid_discriminant(const Int& D);

// The real quadratic irrational (P + sqrt(D))/Q, held exactly. The
// canonical form satisfies Q | (D - P^2); the plus/minus continued
// fraction step recurrences need that for integrality. Construction
// rescales a representation that violates it (same real value).
class QuadSurd {
  public:
    QuadSurd(Int P, Int Q, Int D);

    const Int& P() const { return P_; }
    const Int& Q() const { return Q_; }
    const Int& D() const { return D_; }

    // Representation equality, not value equality: two triples can name
    // the same real number. Everything the enumerators hand out is in
    // primitive-form representation, where the two notions coincide.
    friend bool operator==(const QuadSurd& a, const QuadSurd& b) {
        return a.P_ == b.P_ && a.Q_ == b.Q_ && a.D_ == b.D_;
    }
    friend bool operator<(const QuadSurd& a, const QuadSurd& b) {
        if (a.P_ != b.P_) return a.P_ < b.P_;
        if (a.Q_ != b.Q_) return a.Q_ < b.Q_;
        return a.D_ < b.D_;
    }

  private:
    Int P_, Q_, D_;
};

QuadSurd make_surd(Int P, Int Q, Int D);

std::string to_string(const QuadSurd& w);

// Primitive integral quadratic a w^2 + b w + c = 0 with a > 0,
// GCD(a,b,c) = 1 and positive non-square discriminant b^2 - 4ac.
struct QuadPoly {
    Int a, b, c;
    Int disc() const { return b * b - 4 * a * c; }
    friend bool operator==(const QuadPoly&, const QuadPoly&) = default;
};

// Larger root (-b + sqrt(disc))/(2a) of a valid QuadPoly.
QuadSurd from_poly(const QuadPoly& f);
// Primitive minimal polynomial of the value of w. Mutually inverse with
// from_poly on larger roots.
QuadPoly to_poly(const QuadSurd& w);

// Exact sign of w - m resp. conj(w) - m, where conj flips sqrt(D).
// Decided by sign-aware squaring only; no floating point anywhere.
int compare_with(const QuadSurd& w, const Int& m);
int compare_conj_with(const QuadSurd& w, const Int& m);

// w > 1 and -1 < w' < 0.
bool is_reduced(const QuadSurd& w);
// w > 1 and 0 < w' < 1.
bool is_m_reduced(const QuadSurd& w);

Int floor_of(const QuadSurd& w);
Int ceil_of(const QuadSurd& w);

// -1/w', same discriminant; reduced surds map to reduced surds.
QuadSurd neg_inv_conj(const QuadSurd& w);

struct CFStep {
    Int digit;
    QuadSurd next;
};

// digit = floor(w), next = 1/(w - digit):
//   P' = digit*Q - P,  Q' = (D - P'^2)/Q   (exact by the invariant).
CFStep cf_step_plus(const QuadSurd& w);
// digit = ceil(w), next = 1/(digit - w):
//   P' = digit*Q - P,  Q' = (P'^2 - D)/Q.
CFStep cf_step_minus(const QuadSurd& w);

enum class CFKind { plus, minus };

struct CFExpansion {
    CFKind kind;
    std::vector<Int> preperiod;
    std::vector<Int> period;  // minimal, nonempty
};

// Iterates the step map, detecting the cycle by the first repeated
// (P, Q) state. preperiod is empty exactly when w is reduced (plus) /
// m-reduced (minus). Deterministic.
CFExpansion expand(const QuadSurd& w, CFKind kind);

struct CFStats {
    Int l;                  // minimal period length
    std::optional<Int> S;       // sum of period digits (plus kind)
    std::optional<Int> S_plus;  // count of period digits >= 3 (minus kind)
};

CFStats stats(const CFExpansion& e);

// 2x2 integer matrix; for a plus digit word the product of (a_i 1; 1 0)
// has determinant (-1)^(word length).
struct PeriodMatrix {
    Int p, q, r, s;
    Int det() const { return p * s - q * r; }
    friend bool operator==(const PeriodMatrix&, const PeriodMatrix&) = default;
};

// Left-to-right product of (digit 1; 1 0) over the word. Word must be
// nonempty with digits >= 1.
PeriodMatrix period_matrix(const std::vector<Int>& word);

// Reduce each digit matrix mod 2 (odd digit -> O = (1 1; 1 0), even
// digit -> E = (0 1; 1 0)), multiply over F_2 and return membership of
// the product in {I, O, O^2}. Equivalent to: the number of even digits
// is even.
bool matrix_parity_class(const std::vector<Int>& word);

enum class AmbiguousShape { odd_palindrome, even_palindrome, offset_palindrome, none };

// Classify a minimal period, searching all rotations, as
//   [c1..c_{l-1}, c_l, c_{l-1}..c1]        (odd-length palindrome)
//   [c1..c_l, c_l..c1]                     (even-length palindrome)
//   [c0, c1..c_l, c_{l+1}, c_l..c1]        (even length, tail palindromic)
// or none.
AmbiguousShape ambiguous_shape(const std::vector<Int>& period);

// Shape of one fixed rotation (no rotation search); the two palindrome
// shapes take precedence over the offset reading.
AmbiguousShape shape_of_word(const std::vector<Int>& word);

// Lexicographically least rotation: the canonical representative of a
// cycle's digit word.
std::vector<Int> lex_min_rotation(const std::vector<Int>& word);

}  // namespace quadcal

#endif
