#include "tfc/cache.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "tfc/characters.hpp"
#include "tfc/errors.hpp"

namespace tfc {

std::string default_cache_path() {
    const char* v = std::getenv(kCacheEnvVar);
    return v ? std::string(v) : std::string();
}

namespace {

void validate(const CacheRecord& r) {
    if (r.D == 1 || !is_fundamental_discriminant(r.D))
        throw DomainError("D = " + std::to_string(r.D) + " is not a fundamental discriminant");
    if (!std::isfinite(r.L1) || r.L1 <= 0) throw DomainError("L1 is not a positive number");
    if (r.digits <= 0) throw DomainError("digits must be positive");
}

}  // namespace

L1Cache::L1Cache(std::string path) : path_(std::move(path)) {
    if (path_.empty()) throw DomainError("cache path is empty");
    load();
}

void L1Cache::absorb(const CacheRecord& r) {
    auto it = records_.find(r.D);
    if (it == records_.end() || r.digits >= it->second.digits) records_[r.D] = r;
}

void L1Cache::load() {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            CacheRecord r;
            r.D = j.at("D").get<std::int64_t>();
            r.L1 = j.at("L1").get<double>();
            r.method = j.at("method").get<std::string>();
            r.digits = j.at("digits").get<int>();
            validate(r);
            absorb(r);
        } catch (const std::exception& e) {
            ++skipped_;
            std::cerr << "warning: " << path_ << ":" << lineno << ": skipping corrupt cache line (" << e.what()
                      << ")\n";
        }
    }
}

std::optional<CacheRecord> L1Cache::get(std::int64_t D) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = records_.find(D);
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

std::size_t L1Cache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return records_.size();
}

void L1Cache::put(const CacheRecord& record) {
    validate(record);
    const nlohmann::json j{{"D", record.D}, {"L1", record.L1}, {"method", record.method}, {"digits", record.digits}};
    const std::string line = j.dump() + "\n";
    std::lock_guard<std::mutex> lock(mutex_);
    const int fd = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
    if (fd < 0) throw std::runtime_error("cannot open cache " + path_ + ": " + std::strerror(errno));
    const ssize_t n = ::write(fd, line.data(), line.size());
    ::close(fd);
    if (n != static_cast<ssize_t>(line.size())) throw std::runtime_error("short write to cache " + path_);
    absorb(record);
}

L1Provider caching_L1_provider(std::shared_ptr<L1Cache> cache, L1Method method) {
    if (!cache) throw DomainError("caching provider needs a cache");
    L1Provider direct = direct_L1_provider(method);
    return [cache, direct, method](std::int64_t D) {
        if (auto r = cache->get(D); r && r->digits >= kL1Digits) return r->L1;
        const double v = direct(D);
        cache->put({D, v, to_string(method), kL1Digits});
        return v;
    };
}

}  // namespace tfc
