#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "tfc/shintani.hpp"

namespace tfc {

struct CacheRecord {
    std::int64_t D = 0;
    double L1 = 0.0;
    std::string method;
    int digits = 0;

    bool operator==(const CacheRecord&) const = default;
};

// Environment variable naming the default cache file.
inline constexpr const char* kCacheEnvVar = "TFCOEFF_CACHE";

// Value of TFCOEFF_CACHE, or the empty string.
std::string default_cache_path();

// Append-only JSON-lines store of L(1, chi_D), one record per line keyed by D.
// Among records for the same D the highest digits wins, ties go to the later line.
// Each put is a single write(2) on an O_APPEND descriptor, so concurrent writers
// never interleave partial lines.
class L1Cache {
public:
    explicit L1Cache(std::string path);

    std::optional<CacheRecord> get(std::int64_t D) const;
    void put(const CacheRecord& record);

    const std::string& path() const { return path_; }
    std::size_t size() const;
    std::size_t skipped_lines() const { return skipped_; }

private:
    void load();
    void absorb(const CacheRecord& record);

    std::string path_;
    std::map<std::int64_t, CacheRecord> records_;
    std::size_t skipped_ = 0;
    mutable std::mutex mutex_;
};

// Digits to which the double-precision L(1) methods are trusted.
inline constexpr int kL1Digits = 14;

// Looks D up in the cache, computing and storing on a miss.
L1Provider caching_L1_provider(std::shared_ptr<L1Cache> cache, L1Method method);

}  // namespace tfc
