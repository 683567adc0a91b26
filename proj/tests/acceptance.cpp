// Acceptance suite: prints one pass/fail line per criterion and exits
// nonzero if any criterion fails.
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "cli_runner.hpp"
#include "oracles.hpp"
#include "quadcal/io.hpp"

using namespace quadcal;
using namespace quadcal::testing;

namespace {

struct Outcome {
    bool pass;
    std::string note;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

// Everything criteria 4-7 need about one discriminant, computed once.
struct DiscData {
    DiscriminantProfile prof;
    FundamentalUnit unit;
};

constexpr long kSweepBound = 5000;

const std::map<long, DiscData>& sweep() {
    static std::map<long, DiscData> data = [] {
        std::map<long, DiscData> m;
        for (long D = 5; D <= kSweepBound; ++D) {
            if (!is_valid_discriminant(Int(D))) continue;
            m.emplace(D, DiscData{profile(Int(D)), fundamental_unit(Int(D))});
        }
        return m;
    }();
    return data;
}

// ---- criteria --------------------------------------------------------------

Outcome criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    auto r45 = run_cli("profile 45 --no-cache");
    double s45 = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto r48 = run_cli("profile 48 --no-cache");
    double s48 = seconds_since(t0);
    bool ok = r45.exit_code == 0 && contains(r45.out, "kappa = 2") && r48.exit_code == 0 &&
              contains(r48.out, "kappa = 2") && s45 < 1.0 && s48 < 1.0;
    std::ostringstream note;
    note << "profile 45/48 report kappa = 2 in " << s45 << "s / " << s48 << "s";
    return {ok, note.str()};
}

Outcome criterion_2() {
    auto t0 = std::chrono::steady_clock::now();
    auto r = run_cli("cf --sqrt 12");
    double secs = seconds_since(t0);
    // count entries in the "period: [...]" line
    std::size_t len = 0;
    std::istringstream is(r.out);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("period: [", 0) == 0) {
            len = 1;
            for (char c : line)
                if (c == ',') ++len;
        }
    }
    bool ok = r.exit_code == 0 && len == 2 && secs < 1.0;
    std::ostringstream note;
    note << "eventual period length of sqrt(12) is " << len << " in " << secs << "s";
    return {ok, note.str()};
}

Outcome criterion_3(const std::filesystem::path& dir) {
    auto csv = (dir / "verify200.csv").string();
    auto t0 = std::chrono::steady_clock::now();
    auto r = run_cli("verify all --max 200 --format csv --out " + csv + " --cache " +
                     (dir / "cache.jsonl").string());
    double secs = seconds_since(t0);

    const std::set<std::string> required = {"3.1", "3.2", "3.3",     "3.4",     "3.5",
                                            "3.6", "3.7", "3.8",     "3.9",     "3.10",
                                            "3.11", "cor-3.6", "cor-3.8", "cor-3.9", "cor-3.10"};
    std::map<std::string, long> counts;
    long required_failures = 0, other_failures = 0;
    std::ifstream f(csv);
    std::string line;
    std::getline(f, line);  // header
    while (std::getline(f, line)) {
        auto cells = split_csv(line);
        if (cells.size() != 8) return {false, "malformed csv row: " + line};
        const std::string& id = cells[0];
        bool pass = (cells[7] == "true");
        ++counts[id];
        if (!pass) (required.count(id) ? required_failures : other_failures)++;
    }
    bool all_present = true;
    for (const auto& id : required)
        if (counts[id] == 0) all_present = false;
    bool ok = (required_failures == 0) && all_present && r.exit_code == 0 && secs < 300.0;
    std::ostringstream note;
    note << "verify all --max 200: exit " << r.exit_code << ", " << required_failures
         << " failures among required ids, " << other_failures << " elsewhere, " << secs << "s";
    return {ok, note.str()};
}

Outcome criterion_4() {
    long checked = 0;
    for (const auto& [D, data] : sweep()) {
        // profile() already enforces the identity; re-verify from the
        // returned cycle data against the enumerator cardinalities.
        Int sum_l = 0, sum_S = 0;
        for (const auto& w : data.prof.cycles_plus) {
            sum_l += static_cast<long>(w.size());
            for (const Int& a : w) sum_S += a;
        }
        Int direct_kappa(static_cast<long>(enumerate_reduced(Int(D)).size()));
        Int direct_kappa_plus(static_cast<long>(enumerate_m_reduced(Int(D)).size()));
        if (direct_kappa != sum_l || direct_kappa_plus != sum_S) {
            std::ostringstream note;
            note << "dual-route mismatch at D=" << D;
            return {false, note.str()};
        }
        ++checked;
    }
    // the library-level check on a subrange ties in the public operation
    for (long D = 5; D <= 1000; ++D)
        if (is_valid_discriminant(Int(D)) && !check_prop_2_1(Int(D)))
            return {false, "check_prop_2_1 failed below 1000"};
    std::ostringstream note;
    note << "both caliber routes equal on " << checked << " discriminants <= " << kSweepBound;
    return {true, note.str()};
}

Outcome criterion_5() {
    long checked = 0;
    for (const auto& [D, data] : sweep()) {
        bool odd_D = (D % 2 != 0);
        for (const auto& w : data.prof.cycles_plus) {
            Int S = 0;
            for (const Int& a : w) S += a;
            if (odd_D && mod4(S - static_cast<long>(w.size())) % 2 != 0) {
                std::ostringstream note;
                note << "l != S (mod 2) at D=" << D;
                return {false, note.str()};
            }
            if (!odd_D && data.unit.norm == -1 && S % 2 != 0) {
                std::ostringstream note;
                note << "odd S with norm -1 at D=" << D;
                return {false, note.str()};
            }
        }
        ++checked;
    }
    for (long D = 5; D <= 1000; ++D)
        if (is_valid_discriminant(Int(D)) && !check_lemma_2_3(Int(D)))
            return {false, "check_lemma_2_3 failed below 1000"};
    std::ostringstream note;
    note << "parity laws hold on " << checked << " discriminants <= " << kSweepBound;
    return {true, note.str()};
}

Outcome criterion_6() {
    long checked = 0;
    for (const auto& [D, data] : sweep()) {
        if (!oracles::pell_oracle_confirms(D, data.unit.t, data.unit.u, data.unit.norm,
                                           1000000)) {
            std::ostringstream note;
            note << "unit mismatch with the ascending oracle at D=" << D;
            return {false, note.str()};
        }
        for (const auto& w : data.prof.cycles_plus) {
            if ((w.size() % 2 == 0 ? 1 : -1) != data.unit.norm) {
                std::ostringstream note;
                note << "cycle parity disagrees with the unit norm at D=" << D;
                return {false, note.str()};
            }
        }
        ++checked;
    }
    std::ostringstream note;
    note << "units confirmed on " << checked << " discriminants <= " << kSweepBound;
    return {true, note.str()};
}

Outcome criterion_7() {
    long checked = 0;
    for (const auto& [D, data] : sweep()) {
        auto split = conductor_split(Int(D));
        if (split.f == 1) continue;
        Int h0 = sweep().at(mpz_get_si(split.D0.get_mpz_t())).prof.h;
        if (class_number_formula(Int(D), h0) != data.prof.h) {
            std::ostringstream note;
            note << "class number formula disagrees at D=" << D;
            return {false, note.str()};
        }
        ++checked;
    }
    std::ostringstream note;
    note << "formula equals the direct count on " << checked << " non-fundamental D <= "
         << kSweepBound;
    return {true, note.str()};
}

Outcome criterion_8() {
    auto t0 = std::chrono::steady_clock::now();
    long checked = 0;
    std::vector<Int> w;
    for (int len = 1; len <= 8; ++len) {
        std::vector<int> idx(len, 1);
        for (;;) {
            w.clear();
            int odd = 0;
            for (int v : idx) {
                w.emplace_back(v);
                if (v % 2 == 1) ++odd;
            }
            bool expected = ((len - odd) % 2 == 0);  // n = k (mod 2)
            if (matrix_parity_class(w) != expected) {
                std::ostringstream note;
                note << "parity-class mismatch at word length " << len;
                return {false, note.str()};
            }
            ++checked;
            int pos = len - 1;
            while (pos >= 0 && idx[pos] == 4) idx[pos--] = 1;
            if (pos < 0) break;
            ++idx[pos];
        }
    }
    double secs = seconds_since(t0);
    std::ostringstream note;
    note << checked << " digit words checked in " << secs << "s";
    return {checked == 87380 && secs < 10.0, note.str()};
}

Outcome criterion_9(const std::filesystem::path& dir) {
    auto csv = (dir / "scan200.csv").string();
    auto r = run_cli("scan-conjecture --max 200 --format csv --out " + csv + " --cache " +
                     (dir / "cache.jsonl").string());
    if (r.exit_code != 0) return {false, "scan-conjecture exited with " + std::to_string(r.exit_code)};

    // independently derived eligible pair set
    std::set<std::pair<long, long>> expected;
    std::vector<long> ps;
    for (long n = 5; n <= 200; ++n)
        if (oracles::prime_by_trial_division(n) && n % 4 == 1) ps.push_back(n);
    auto brute_x = [](long p) {
        for (long x = 1; 2 * x * x < p; ++x) {
            long y2 = p - x * x;
            long y = static_cast<long>(std::sqrt(static_cast<double>(y2)));
            while (y * y > y2) --y;
            while ((y + 1) * (y + 1) <= y2) ++y;
            if (y * y == y2) return x;
        }
        return 0L;
    };
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j)
            if ((brute_x(ps[i]) - brute_x(ps[j])) % 2 != 0) expected.emplace(ps[i], ps[j]);

    std::set<std::pair<long, long>> got;
    long counterexamples = 0, malformed = 0;
    std::ifstream f(csv);
    std::string line;
    std::getline(f, line);
    if (line != conjecture_csv_header()) return {false, "csv header mismatch"};
    while (std::getline(f, line)) {
        auto cells = split_csv(line);
        if (cells.size() != 13) {
            ++malformed;
            continue;
        }
        long p = std::stol(cells[0]), q = std::stol(cells[1]);
        got.emplace(p, q);
        long xp = std::stol(cells[2]);
        int legendre = std::stoi(cells[6]);
        int predicted = std::stoi(cells[9]);
        if (legendre != oracles::legendre_by_squares(q, p)) ++malformed;
        int sign_term = (xp % 2 == 0) ? 1 : -1;
        if (predicted != ((1 - sign_term * legendre) % 4 + 4) % 4) ++malformed;
        if (cells[12] != "true") ++counterexamples;
    }
    bool ok = (got == expected) && malformed == 0 && counterexamples == 0;
    std::ostringstream note;
    note << got.size() << " eligible pairs (expected " << expected.size() << "), " << malformed
         << " malformed, " << counterexamples << " counterexamples";
    return {ok, note.str()};
}

Outcome criterion_10() {
    auto a = run_cli("verify all --max 100 --jobs 1 --no-cache");
    auto b = run_cli("verify all --max 100 --jobs 8 --no-cache");
    bool ok = a.exit_code == 0 && b.exit_code == 0 && a.out == b.out && !a.out.empty();
    std::ostringstream note;
    note << "stdout " << (a.out == b.out ? "byte-identical" : "DIFFERS") << " across --jobs 1/8 ("
         << a.out.size() << " bytes)";
    return {ok, note.str()};
}

}  // namespace

int main() {
    auto dir = fresh_dir("quadcal-acceptance");
    int failures = 0;
    auto report = [&](int id, const char* label, const Outcome& o, double secs) {
        std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " — " << label
                  << " — " << o.note << " [" << secs << "s]" << std::endl;
        if (!o.pass) ++failures;
    };

    auto timed = [&](int id, const char* label, auto fn) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o = fn();
        report(id, label, o, seconds_since(t0));
    };

    timed(1, "kappa(45) and kappa(48) via the CLI", [] { return criterion_1(); });
    timed(2, "eventual period length of sqrt(12)", [] { return criterion_2(); });
    timed(3, "congruence suite over primes <= 200", [&] { return criterion_3(dir); });
    timed(4, "dual-route caliber identity, D <= 5000", [] { return criterion_4(); });
    timed(5, "cycle parity laws, D <= 5000", [] { return criterion_5(); });
    timed(6, "fundamental units vs ascending oracle, D <= 5000", [] { return criterion_6(); });
    timed(7, "class number formula vs direct count, D <= 5000", [] { return criterion_7(); });
    timed(8, "parity-class words over {1,2,3,4} up to length 8", [] { return criterion_8(); });
    timed(9, "conjecture scan over primes <= 200", [&] { return criterion_9(dir); });
    timed(10, "parallel equivalence of verify all", [] { return criterion_10(); });

    if (failures) std::cout << failures << " criterion(s) failed" << std::endl;
    return failures == 0 ? 0 : 1;
}
