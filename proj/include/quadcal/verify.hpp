#ifndef QUADCAL_VERIFY_HPP
#define QUADCAL_VERIFY_HPP

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "quadcal/enumerate.hpp"
#include "quadcal/units.hpp"

namespace quadcal {

// The per-discriminant numbers a congruence check consumes. Predictions
// never read these; computed values never read the prediction.
struct DiscSummary {
    Int kappa, kappa_plus, h, h_plus;
    Int t, u;
    int unit_norm;
};

DiscSummary compute_summary(const Int& D);

// Pluggable provider so scans can run against a persistent cache. Must
// be safe for concurrent use.
class SummarySource {
  public:
    virtual ~SummarySource() = default;
    virtual DiscSummary summary(const Int& D) = 0;
};

// Memoizing in-process provider; the memo map is the only shared state.
class ComputingSummarySource final : public SummarySource {
  public:
    DiscSummary summary(const Int& D) override;

  private:
    std::mutex mu_;
    std::map<Int, DiscSummary> memo_;
};

// One congruence-instance check. pass iff computed_mod4 == predicted_mod4.
struct VerdictRecord {
    std::string theorem_id;
    std::map<std::string, Int> params;
    Int D;
    int predicted_mod4 = 0;
    Int computed;
    int computed_mod4 = 0;
    bool pass = false;
};

// Each check validates its precondition and returns no records when the
// parameters do not qualify (callers count those as skips, never as
// failures). Predictions are pure functions of residues and symbols of
// the parameters.

// kappa+(8p) = 1 - (-1)^{x_p} (mod 4), p = 1 (mod 4).
std::vector<VerdictRecord> thm_3_1(const Int& p, SummarySource& src);
// kappa+(pq) = 1 - (q|p) (mod 4), p < q, both = 3 (mod 4).
std::vector<VerdictRecord> thm_3_2(const Int& p, const Int& q, SummarySource& src);
// kappa+(4pq) = 2 (mod 4), p < q, both = 3 (mod 4).
std::vector<VerdictRecord> thm_3_3(const Int& p, const Int& q, SummarySource& src);
// kappa(p) - kappa(4p) = 2 (mod 4) if p = 1 (mod 8), 0 if p = 5 (mod 8).
std::vector<VerdictRecord> thm_3_4(const Int& p, SummarySource& src);
// kappa(8p) = 2 (mod 4) if p = 1 (mod 8), 0 if p = 5 (mod 8).
std::vector<VerdictRecord> thm_3_5(const Int& p, SummarySource& src);
// kappa(4p) = kappa(8p) = 2 (mod 4) if p = 3 (mod 8), 0 if p = 7 (mod 8).
std::vector<VerdictRecord> thm_3_6(const Int& p, SummarySource& src);
// kappa(9p) = 2 (mod 4) if p = 5 or p = 1 (mod 3), else 0.
std::vector<VerdictRecord> thm_3_7(const Int& p, SummarySource& src);
// kappa(16p) = 2 (mod 4) if p = 3 or p = 1 (mod 4), else 0.
std::vector<VerdictRecord> thm_3_8(const Int& p, SummarySource& src);
// kappa(pq) = 1 + (q|p) (mod 4), p < q, both = 3 (mod 4).
std::vector<VerdictRecord> thm_3_9(const Int& p, const Int& q, SummarySource& src);
// kappa(4pq) = 1 + (q|p) (mod 4), p < q, both = 3 (mod 4).
std::vector<VerdictRecord> thm_3_10(const Int& p, const Int& q, SummarySource& src);
// kappa(4pq) = 0 (mod 4), p = 1 (mod 4), q = 3 (mod 4).
std::vector<VerdictRecord> thm_3_11(const Int& p, const Int& q, SummarySource& src);

// Eventual period lengths of the named surds, same residue predictions
// as the theorems they accompany. cor_3_7 checks both readings of
// (1 + sqrt(3p))/2, over discriminants 12p and 9p.
std::vector<VerdictRecord> cor_3_6(const Int& p);
std::vector<VerdictRecord> cor_3_7(const Int& p);
std::vector<VerdictRecord> cor_3_8(const Int& p);
std::vector<VerdictRecord> cor_3_9(const Int& p, const Int& q);
std::vector<VerdictRecord> cor_3_10(const Int& p, const Int& q);

// Parity laws over the full cycle data of D: odd D forces l = S (mod 2)
// per plus cycle; even D with unit norm -1 forces every S even.
bool check_lemma_2_3(const Int& D);
// Ambiguous classes (cycle of -1/w' equals the cycle of w) have
// palindromic period shape, with a = -c for the fully palindromic
// shapes and a | b for the offset shape.
bool check_lemma_2_5(const Int& D);
// Dual-route caliber identity: enumerator cardinalities equal the cycle
// sums.
bool check_prop_2_1(const Int& D);

struct ConjectureRecord {
    Int p, q;
    Int x_p, y_p, x_q, y_q;
    int legendre_qp = 0;
    int unit_norm = 0;
    int kappa_plus_mod4 = 0;
    int predicted_mod4 = 0;  // (1 - (-1)^{x_p} (q|p)) mod 4
    int cross_det_sign = 0;  // sign of x_p y_q - y_p x_q
    bool aux_equiv_holds = false;
    bool pass = false;
};

// All pairs p < q <= limit with p = q = 1 (mod 4) and x_p != x_q (mod 2).
// Counterexamples come back as records with pass = false; they are
// findings, not errors. aux_equiv_holds records, for norm -1, whether
//   l((1+sqrt(pq))/2) = l((p+sqrt(pq))/(2p)) (mod 4)  <=>  x_p y_q - y_p x_q < 0
// and, for norm +1, whether
//   kappa(pq) = 0 (mod 4)  <=>  x_p y_q - y_p x_q < 0.
std::vector<ConjectureRecord> scan_conjecture(const Int& limit, SummarySource& src);

// ---- scan driver ---------------------------------------------------------

// One parameter tuple of a named check: primes for the theorems, a
// discriminant for the lemma/proposition sweeps.
struct CheckTask {
    std::string id;
    Int p, q;  // q = 0 for unary checks
    Int D;     // nonzero only for lemma/prop sweeps
};

extern const std::vector<std::string> kCheckIds;  // valid ids, "all" not included

// Tuple spaces: every prime (or unordered prime pair) <= max for the
// theorems and corollaries, every valid discriminant <= max for
// lemma-2.3 / lemma-2.5 / prop-2.1.
std::vector<CheckTask> tasks_for(const std::string& id, const Int& max);

// Empty result = the tuple was skipped by a precondition.
std::vector<VerdictRecord> run_task(const CheckTask& task, SummarySource& src);

}  // namespace quadcal

#endif
