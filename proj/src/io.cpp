#include "quadcal/io.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace quadcal {

long long to_i64(const Int& x) {
    if (!x.fits_slong_p())
        throw std::overflow_error("to_i64: value does not fit in a signed 64-bit integer");
    return mpz_get_si(x.get_mpz_t());
}

namespace {

ojson digit_words_json(const std::vector<std::vector<Int>>& words) {
    ojson arr = ojson::array();
    for (const auto& w : words) {
        ojson inner = ojson::array();
        for (const Int& d : w) inner.push_back(to_i64(d));
        arr.push_back(std::move(inner));
    }
    return arr;
}

std::string params_cell(const VerdictRecord& r, const char* key) {
    auto it = r.params.find(key);
    return it == r.params.end() ? std::string() : it->second.get_str();
}

}  // namespace

ojson surd_json(const QuadSurd& w) {
    return ojson{{"P", w.P().get_str()}, {"Q", w.Q().get_str()}, {"D", w.D().get_str()}};
}

ojson profile_json(const DiscriminantProfile& p, const FundamentalUnit& fu) {
    ojson j;
    j["D"] = to_i64(p.D);
    j["kappa"] = to_i64(p.kappa);
    j["kappa_plus"] = to_i64(p.kappa_plus);
    j["h"] = to_i64(p.h);
    j["h_plus"] = to_i64(p.h_plus);
    j["t"] = fu.t.get_str();
    j["u"] = fu.u.get_str();
    j["unit_norm"] = fu.norm;
    j["cycles_plus"] = digit_words_json(p.cycles_plus);
    j["cycles_minus"] = digit_words_json(p.cycles_minus);
    return j;
}

ojson verdict_json(const VerdictRecord& r) {
    ojson params;
    for (const auto& [k, v] : r.params) params[k] = to_i64(v);
    ojson j;
    j["theorem_id"] = r.theorem_id;
    j["params"] = std::move(params);
    j["D"] = to_i64(r.D);
    j["predicted_mod4"] = r.predicted_mod4;
    j["computed"] = to_i64(r.computed);
    j["computed_mod4"] = r.computed_mod4;
    j["pass"] = r.pass;
    return j;
}

std::string verdict_csv_header() {
    return "theorem_id,p,q,D,predicted_mod4,computed,computed_mod4,pass";
}

std::string verdict_csv_row(const VerdictRecord& r) {
    std::ostringstream os;
    os << r.theorem_id << ',' << params_cell(r, "p") << ',' << params_cell(r, "q") << ','
       << r.D << ',' << r.predicted_mod4 << ',' << r.computed << ',' << r.computed_mod4 << ','
       << (r.pass ? "true" : "false");
    return os.str();
}

ojson conjecture_json(const ConjectureRecord& r) {
    ojson j;
    j["p"] = to_i64(r.p);
    j["q"] = to_i64(r.q);
    j["x_p"] = to_i64(r.x_p);
    j["y_p"] = to_i64(r.y_p);
    j["x_q"] = to_i64(r.x_q);
    j["y_q"] = to_i64(r.y_q);
    j["legendre_qp"] = r.legendre_qp;
    j["unit_norm"] = r.unit_norm;
    j["kappa_plus_mod4"] = r.kappa_plus_mod4;
    j["predicted_mod4"] = r.predicted_mod4;
    j["cross_det_sign"] = r.cross_det_sign;
    j["aux_equiv_holds"] = r.aux_equiv_holds;
    j["pass"] = r.pass;
    return j;
}

std::string conjecture_csv_header() {
    return "p,q,x_p,y_p,x_q,y_q,legendre_qp,unit_norm,kappa_plus_mod4,predicted_mod4,"
           "cross_det_sign,aux_equiv_holds,pass";
}

std::string conjecture_csv_row(const ConjectureRecord& r) {
    std::ostringstream os;
    os << r.p << ',' << r.q << ',' << r.x_p << ',' << r.y_p << ',' << r.x_q << ',' << r.y_q
       << ',' << r.legendre_qp << ',' << r.unit_norm << ',' << r.kappa_plus_mod4 << ','
       << r.predicted_mod4 << ',' << r.cross_det_sign << ','
       << (r.aux_equiv_holds ? "true" : "false") << ',' << (r.pass ? "true" : "false");
    return os.str();
}

CacheRecord to_cache_record(const Int& D, const DiscSummary& s) {
    return CacheRecord{D,   s.kappa, s.kappa_plus, s.h, s.h_plus,
                       s.t, s.u,     s.unit_norm,  kEngineVersion};
}

DiscSummary to_summary(const CacheRecord& r) {
    return DiscSummary{r.kappa, r.kappa_plus, r.h, r.h_plus, r.t, r.u, r.unit_norm};
}

namespace {

ojson cache_record_json(const CacheRecord& r) {
    ojson j;
    j["D"] = to_i64(r.D);
    j["kappa"] = to_i64(r.kappa);
    j["kappa_plus"] = to_i64(r.kappa_plus);
    j["h"] = to_i64(r.h);
    j["h_plus"] = to_i64(r.h_plus);
    j["t"] = r.t.get_str();
    j["u"] = r.u.get_str();
    j["unit_norm"] = r.unit_norm;
    j["engine_version"] = r.engine_version;
    return j;
}

std::optional<CacheRecord> parse_cache_line(const std::string& line) {
    ojson j = ojson::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    try {
        CacheRecord r;
        r.D = Int(j.at("D").get<long>());
        r.kappa = Int(j.at("kappa").get<long>());
        r.kappa_plus = Int(j.at("kappa_plus").get<long>());
        r.h = Int(j.at("h").get<long>());
        r.h_plus = Int(j.at("h_plus").get<long>());
        r.t = Int(j.at("t").get<std::string>());
        r.u = Int(j.at("u").get<std::string>());
        r.unit_norm = j.at("unit_norm").get<int>();
        r.engine_version = j.at("engine_version").get<std::string>();
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// Minimal single-writer lock: O_EXCL creation of a sibling file, held
// for the duration of one append.
class LockFile {
  public:
    explicit LockFile(const std::filesystem::path& target)
        : path_(target.string() + ".lock") {
        for (int attempt = 0; attempt < 100; ++attempt) {
            fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
            if (fd_ >= 0) return;
            std::this_thread::sleep_for(std::chrono::milliseconds(50));
        }
        throw std::runtime_error("cache lock: could not acquire " + path_);
    }
    ~LockFile() {
        if (fd_ >= 0) {
            ::close(fd_);
            ::unlink(path_.c_str());
        }
    }
    LockFile(const LockFile&) = delete;
    LockFile& operator=(const LockFile&) = delete;

  private:
    std::string path_;
    int fd_ = -1;
};

}  // namespace

ProfileCache::ProfileCache(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) return;  // absent file = empty cache
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto rec = parse_cache_line(line);
        if (!rec || rec->engine_version != kEngineVersion) continue;
        records_.insert_or_assign(rec->D, std::move(*rec));
    }
}

std::optional<CacheRecord> ProfileCache::lookup(const Int& D) const {
    auto it = records_.find(D);
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

void ProfileCache::append(const std::vector<CacheRecord>& fresh) {
    if (fresh.empty()) return;
    LockFile lock(path_);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cache: cannot open " + path_.string() + " for append");
    for (const auto& r : fresh) out << cache_record_json(r).dump() << '\n';
    out.flush();
    if (!out) throw std::runtime_error("cache: write failed for " + path_.string());
    for (const auto& r : fresh) records_.insert_or_assign(r.D, r);
}

CachedSummarySource::CachedSummarySource(ProfileCache* cache) : cache_(cache) {}

DiscSummary CachedSummarySource::summary(const Int& D) {
    {
        std::lock_guard lock(mu_);
        if (auto it = memo_.find(D); it != memo_.end()) return it->second;
        if (cache_) {
            if (auto rec = cache_->lookup(D)) {
                auto s = to_summary(*rec);
                memo_.emplace(D, s);
                return s;
            }
        }
    }
    DiscSummary s = compute_summary(D);
    std::lock_guard lock(mu_);
    auto [it, inserted] = memo_.emplace(D, std::move(s));
    if (inserted) fresh_.push_back(D);
    return it->second;
}

void CachedSummarySource::flush() {
    if (!cache_) return;
    std::lock_guard lock(mu_);
    std::vector<CacheRecord> recs;
    recs.reserve(fresh_.size());
    for (const Int& D : fresh_) recs.push_back(to_cache_record(D, memo_.at(D)));
    cache_->append(recs);
    fresh_.clear();
}

std::filesystem::path resolve_cache_path(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("QUADCAL_CACHE"); env && *env) return env;
    return "quadcal-cache.jsonl";
}

}  // namespace quadcal
