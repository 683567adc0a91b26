#ifndef QUADCAL_IO_HPP
#define QUADCAL_IO_HPP

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "quadcal/verify.hpp"

namespace quadcal {

inline constexpr const char* kEngineVersion = "1.0.0";

using ojson = nlohmann::ordered_json;

// Big integers (t, u) serialize as decimal strings; everything else at
// desk scale serializes as JSON numbers.
long long to_i64(const Int& x);

ojson surd_json(const QuadSurd& w);  // {"P": "...", "Q": "...", "D": "..."}
ojson profile_json(const DiscriminantProfile& p, const FundamentalUnit& fu);

ojson verdict_json(const VerdictRecord& r);
std::string verdict_csv_header();
std::string verdict_csv_row(const VerdictRecord& r);

ojson conjecture_json(const ConjectureRecord& r);
std::string conjecture_csv_header();
std::string conjecture_csv_row(const ConjectureRecord& r);

// One cached discriminant summary. Cycle words are recomputed on
// demand; only the scalars persist.
struct CacheRecord {
    Int D;
    Int kappa, kappa_plus, h, h_plus;
    Int t, u;
    int unit_norm = 0;
    std::string engine_version;
};

CacheRecord to_cache_record(const Int& D, const DiscSummary& s);
DiscSummary to_summary(const CacheRecord& r);

// Append-only JSON-lines store, last record per D wins. Records from a
// different engine version and unparseable lines are ignored, so a
// corrupt or stale file degrades to recomputation, never to wrong data.
// Appends take a sibling .lock file (single writer).
class ProfileCache {
  public:
    explicit ProfileCache(std::filesystem::path path);

    const std::filesystem::path& path() const { return path_; }
    std::size_t size() const { return records_.size(); }
    std::optional<CacheRecord> lookup(const Int& D) const;
    void append(const std::vector<CacheRecord>& fresh);

  private:
    std::filesystem::path path_;
    std::map<Int, CacheRecord> records_;
};

// Summary provider backed by a cache snapshot loaded at construction.
// Misses are computed and memoized; flush() funnels everything new into
// one append.
class CachedSummarySource final : public SummarySource {
  public:
    explicit CachedSummarySource(ProfileCache* cache);  // cache may be null

    DiscSummary summary(const Int& D) override;
    void flush();

  private:
    ProfileCache* cache_;
    std::mutex mu_;
    std::map<Int, DiscSummary> memo_;
    std::vector<Int> fresh_;
};

// Default cache location: --cache flag beats QUADCAL_CACHE, which beats
// ./quadcal-cache.jsonl.
std::filesystem::path resolve_cache_path(const std::string& flag_value);

}  // namespace quadcal

#endif
