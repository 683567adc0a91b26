#include "quadcal/cli.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "quadcal/io.hpp"

namespace quadcal::cli {

namespace {

Int parse_int(const std::string& s) {
    try {
        return Int(s);
    } catch (const std::exception&) {
        throw CLI::ValidationError("'" + s + "' is not an integer");
    }
}

std::string digits_str(const std::vector<Int>& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i];
    }
    os << ']';
    return os.str();
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr first_error;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (!first_error) first_error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int count = std::min<int>(jobs, static_cast<int>(n));
    pool.reserve(count);
    for (int k = 0; k < count; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// ---- cf ------------------------------------------------------------------

int cmd_cf(const std::vector<std::string>& surd_spec, const std::string& sqrt_spec,
           const std::vector<std::string>& poly_spec, bool minus) {
    QuadSurd w(1, 2, 5);
    if (!surd_spec.empty()) {
        w = make_surd(parse_int(surd_spec[0]), parse_int(surd_spec[1]), parse_int(surd_spec[2]));
    } else if (!sqrt_spec.empty()) {
        Int n = parse_int(sqrt_spec);
        if (n < 2 || is_perfect_square(n))
            throw std::domain_error("--sqrt expects a non-square integer >= 2");
        w = make_surd(0, 2, 4 * n);
    } else if (!poly_spec.empty()) {
        w = from_poly(
            QuadPoly{parse_int(poly_spec[0]), parse_int(poly_spec[1]), parse_int(poly_spec[2])});
    } else {
        throw CLI::ValidationError("one of --surd, --sqrt, --poly is required");
    }

    CFKind kind = minus ? CFKind::minus : CFKind::plus;
    CFExpansion e = expand(w, kind);
    CFStats st = stats(e);
    std::cout << "surd: " << to_string(w) << "\n";
    std::cout << "kind: " << (minus ? "minus" : "plus") << "\n";
    std::cout << "preperiod: " << digits_str(e.preperiod) << "\n";
    std::cout << "period: " << digits_str(e.period) << "\n";
    if (kind == CFKind::plus) {
        std::cout << "l = " << st.l << "\n";
        std::cout << "S = " << *st.S << "\n";
    } else {
        std::cout << "l+ = " << st.l << "\n";
        std::cout << "S+ = " << *st.S_plus << "\n";
    }
    return 0;
}

// ---- profile ---------------------------------------------------------------

int cmd_profile(const std::string& d_str, bool as_json, bool no_cache,
                const std::string& cache_flag) {
    Int D = parse_int(d_str);
    if (!is_valid_discriminant(D)) throw std::domain_error("not a valid discriminant");

    if (as_json) {
        // Cycle words are not cached, so the JSON view always computes.
        DiscriminantProfile prof = profile(D);
        FundamentalUnit fu = fundamental_unit(D);
        std::cout << profile_json(prof, fu).dump() << "\n";
        if (!no_cache) {
            ProfileCache cache(resolve_cache_path(cache_flag));
            cache.append({to_cache_record(
                D, DiscSummary{prof.kappa, prof.kappa_plus, prof.h, prof.h_plus, fu.t, fu.u,
                               fu.norm})});
        }
        return 0;
    }

    std::optional<ProfileCache> cache;
    if (!no_cache) cache.emplace(resolve_cache_path(cache_flag));
    CachedSummarySource src(cache ? &*cache : nullptr);
    DiscSummary s = src.summary(D);
    src.flush();
    std::cout << "D = " << D << "\n";
    std::cout << "kappa = " << s.kappa << "\n";
    std::cout << "kappa+ = " << s.kappa_plus << "\n";
    std::cout << "h = " << s.h << "\n";
    std::cout << "h+ = " << s.h_plus << "\n";
    std::cout << "t = " << s.t << "\n";
    std::cout << "u = " << s.u << "\n";
    std::cout << "norm = " << s.unit_norm << "\n";
    return 0;
}

// ---- verify ----------------------------------------------------------------

std::string verdict_line(const VerdictRecord& r) {
    std::ostringstream os;
    os << r.theorem_id;
    if (auto it = r.params.find("p"); it != r.params.end()) os << " p=" << it->second;
    if (auto it = r.params.find("q"); it != r.params.end()) os << " q=" << it->second;
    os << " D=" << r.D << " predicted=" << r.predicted_mod4 << " computed=" << r.computed
       << " mod4=" << r.computed_mod4 << (r.pass ? " PASS" : " FAIL");
    return os.str();
}

void write_verdicts(const std::filesystem::path& out, const std::string& format,
                    const std::vector<VerdictRecord>& records) {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open output file " + out.string());
    if (format == "csv") {
        f << verdict_csv_header() << "\n";
        for (const auto& r : records) f << verdict_csv_row(r) << "\n";
    } else {
        for (const auto& r : records) f << verdict_json(r).dump() << "\n";
    }
    if (!f) throw std::runtime_error("write failed for " + out.string());
}

void print_failure_bundle(const VerdictRecord& r) {
    // Everything needed to replay the instance by hand.
    ojson bundle;
    bundle["record"] = verdict_json(r);
    DiscriminantProfile prof = profile(r.D);
    bundle["profile"] = profile_json(prof, fundamental_unit(r.D));
    ojson reduced = ojson::array();
    for (const auto& w : enumerate_reduced(r.D)) reduced.push_back(surd_json(w));
    bundle["reduced"] = std::move(reduced);
    ojson m_reduced = ojson::array();
    for (const auto& w : enumerate_m_reduced(r.D)) m_reduced.push_back(surd_json(w));
    bundle["m_reduced"] = std::move(m_reduced);
    std::cerr << "counterexample bundle:\n" << bundle.dump(2) << "\n";
}

int cmd_verify(const std::string& id, const std::string& max_str, int jobs, bool no_cache,
               const std::string& cache_flag, const std::string& out, const std::string& format) {
    Int max = parse_int(max_str);
    std::vector<std::string> ids;
    if (id == "all")
        ids = kCheckIds;
    else
        ids = {id};

    std::vector<CheckTask> tasks;
    for (const auto& one : ids) {
        auto t = tasks_for(one, max);
        tasks.insert(tasks.end(), t.begin(), t.end());
    }

    std::optional<ProfileCache> cache;
    if (!no_cache) cache.emplace(resolve_cache_path(cache_flag));
    CachedSummarySource src(cache ? &*cache : nullptr);

    std::vector<std::vector<VerdictRecord>> results(tasks.size());
    parallel_for(tasks.size(), jobs, [&](std::size_t i) { results[i] = run_task(tasks[i], src); });
    src.flush();

    std::vector<VerdictRecord> records;
    long skipped = 0;
    for (auto& chunk : results) {
        if (chunk.empty()) {
            ++skipped;
            continue;
        }
        for (auto& r : chunk) records.push_back(std::move(r));
    }
    auto param_or_zero = [](const VerdictRecord& r, const char* key) {
        auto it = r.params.find(key);
        return it == r.params.end() ? Int(0) : it->second;
    };
    std::sort(records.begin(), records.end(),
              [&](const VerdictRecord& a, const VerdictRecord& b) {
                  if (a.theorem_id != b.theorem_id) return a.theorem_id < b.theorem_id;
                  Int ap = param_or_zero(a, "p"), bp = param_or_zero(b, "p");
                  if (ap != bp) return ap < bp;
                  Int aq = param_or_zero(a, "q"), bq = param_or_zero(b, "q");
                  if (aq != bq) return aq < bq;
                  return a.D < b.D;
              });

    long passed = 0, failed = 0;
    for (const auto& r : records) (r.pass ? passed : failed)++;

    for (const auto& r : records) std::cout << verdict_line(r) << "\n";
    std::cout << "summary: " << records.size() << "/" << passed << "/" << failed << "/" << skipped
              << " (checked/passed/failed/skipped)\n";

    if (!out.empty()) write_verdicts(out, format, records);

    if (failed > 0) {
        int shown = 0;
        for (const auto& r : records) {
            if (!r.pass && shown < 3) {
                print_failure_bundle(r);
                ++shown;
            }
        }
        return 1;
    }
    return 0;
}

// ---- scan-conjecture ---------------------------------------------------------

int cmd_scan_conjecture(const std::string& max_str, int jobs, bool no_cache,
                        const std::string& cache_flag, const std::string& out,
                        const std::string& format) {
    Int max = parse_int(max_str);
    if (max < 13) throw CLI::ValidationError("--max must be >= 13");

    std::optional<ProfileCache> cache;
    if (!no_cache) cache.emplace(resolve_cache_path(cache_flag));
    CachedSummarySource src(cache ? &*cache : nullptr);

    // Warm the per-discriminant summaries in parallel; the scan itself
    // is then a cheap deterministic pass.
    std::vector<Int> discs;
    {
        std::vector<Int> ps;
        for (Int n = 5; n <= max; ++n)
            if (mod4(n) == 1 && is_prime(n)) ps.push_back(n);
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = i + 1; j < ps.size(); ++j) {
                auto [xp, yp] = two_squares(ps[i]);
                auto [xq, yq] = two_squares(ps[j]);
                if ((xp - xq) % 2 != 0) discs.push_back(ps[i] * ps[j]);
            }
    }
    parallel_for(discs.size(), jobs, [&](std::size_t i) { (void)src.summary(discs[i]); });

    auto records = scan_conjecture(max, src);
    src.flush();

    std::ostream* sink = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        if (!file) throw std::runtime_error("cannot open output file " + out);
        sink = &file;
    }
    if (format == "csv") {
        *sink << conjecture_csv_header() << "\n";
        for (const auto& r : records) *sink << conjecture_csv_row(r) << "\n";
    } else {
        for (const auto& r : records) *sink << conjecture_json(r).dump() << "\n";
    }
    if (!out.empty() && !file) throw std::runtime_error("write failed for " + out);

    long counterexamples = 0;
    // Contingency cells [left][det<0] for the two unit-norm regimes.
    long cells_neg[2][2] = {{0, 0}, {0, 0}};
    long cells_pos[2][2] = {{0, 0}, {0, 0}};
    for (const auto& r : records) {
        if (!r.pass) ++counterexamples;
        bool det_negative = r.cross_det_sign < 0;
        bool left = r.aux_equiv_holds ? det_negative : !det_negative;
        (r.unit_norm == -1 ? cells_neg : cells_pos)[left ? 1 : 0][det_negative ? 1 : 0]++;
    }
    std::cout << "pairs checked: " << records.size() << "\n";
    std::cout << "counterexamples: " << counterexamples << "\n";
    std::cout << "aux table, norm -1 (rows: l((1+sqrt(pq))/2) = l((p+sqrt(pq))/(2p)) mod 4; "
                 "cols: x_p*y_q - y_p*x_q < 0):\n";
    std::cout << "  yes/yes=" << cells_neg[1][1] << " yes/no=" << cells_neg[1][0]
              << " no/yes=" << cells_neg[0][1] << " no/no=" << cells_neg[0][0] << "\n";
    std::cout << "aux table, norm +1 (rows: kappa(pq) = 0 mod 4; cols: x_p*y_q - y_p*x_q < 0):\n";
    std::cout << "  yes/yes=" << cells_pos[1][1] << " yes/no=" << cells_pos[1][0]
              << " no/yes=" << cells_pos[0][1] << " no/no=" << cells_pos[0][0] << "\n";
    return 0;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"exact caliber, class number and fundamental unit engine for real quadratic "
                 "discriminants"};
    app.require_subcommand(1);

    // cf
    auto* cf = app.add_subcommand("cf", "continued fraction expansion of a quadratic irrational");
    std::vector<std::string> surd_spec, poly_spec;
    std::string sqrt_spec;
    bool minus = false;
    cf->add_option("--surd", surd_spec, "P Q D for (P+sqrt(D))/Q")->expected(3);
    cf->add_option("--sqrt", sqrt_spec, "n for sqrt(n), i.e. (0+sqrt(4n))/2");
    cf->add_option("--poly", poly_spec, "a b c for the larger root of a x^2 + b x + c")
        ->expected(3);
    cf->add_flag("--minus", minus, "minus continued fraction instead of the plus one");

    // profile
    auto* prof = app.add_subcommand("profile", "kappa, kappa+, h, h+ and unit of a discriminant");
    std::string d_str;
    bool prof_json = false, prof_no_cache = false;
    std::string prof_cache;
    prof->add_option("D", d_str, "discriminant")->required();
    prof->add_flag("--json", prof_json, "emit the full JSON profile including cycles");
    prof->add_flag("--no-cache", prof_no_cache, "do not read or write the profile cache");
    prof->add_option("--cache", prof_cache, "cache file path");

    // verify
    auto* ver = app.add_subcommand("verify", "run a congruence check over all primes <= max");
    std::string ver_id, ver_max = "100", ver_out, ver_format = "json", ver_cache;
    int ver_jobs = 1;
    bool ver_no_cache = false;
    std::vector<std::string> valid_ids = kCheckIds;
    valid_ids.push_back("all");
    ver->add_option("id", ver_id, "check id (3.1 .. 3.11, cor-3.6 .. cor-3.10, lemma-2.3, "
                                  "lemma-2.5, prop-2.1, all)")
        ->required()
        ->check(CLI::IsMember(valid_ids));
    ver->add_option("--max", ver_max, "prime (or discriminant) bound");
    ver->add_option("--jobs", ver_jobs, "worker threads")->check(CLI::PositiveNumber);
    ver->add_flag("--no-cache", ver_no_cache, "do not read or write the profile cache");
    ver->add_option("--cache", ver_cache, "cache file path");
    ver->add_option("--out", ver_out, "write records to this file");
    ver->add_option("--format", ver_format, "record format for --out")
        ->check(CLI::IsMember({"json", "csv"}));

    // scan-conjecture
    auto* scan = app.add_subcommand("scan-conjecture",
                                    "scan the kappa+(pq) congruence over eligible prime pairs");
    std::string scan_max = "100", scan_out, scan_format = "json", scan_cache;
    int scan_jobs = 1;
    bool scan_no_cache = false;
    scan->add_option("--max", scan_max, "prime bound (>= 13)");
    scan->add_option("--jobs", scan_jobs, "worker threads")->check(CLI::PositiveNumber);
    scan->add_flag("--no-cache", scan_no_cache, "do not read or write the profile cache");
    scan->add_option("--cache", scan_cache, "cache file path");
    scan->add_option("--out", scan_out, "write records to this file");
    scan->add_option("--format", scan_format, "record format")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cf->parsed()) return cmd_cf(surd_spec, sqrt_spec, poly_spec, minus);
        if (prof->parsed()) return cmd_profile(d_str, prof_json, prof_no_cache, prof_cache);
        if (ver->parsed())
            return cmd_verify(ver_id, ver_max, ver_jobs, ver_no_cache, ver_cache, ver_out,
                              ver_format);
        if (scan->parsed())
            return cmd_scan_conjecture(scan_max, scan_jobs, scan_no_cache, scan_cache, scan_out,
                                       scan_format);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        // Invariant violations are implementation bugs by policy.
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace quadcal::cli
