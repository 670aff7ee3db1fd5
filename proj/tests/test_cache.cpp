#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>
#include <unistd.h>

#include "tfc/cache.hpp"
#include "tfc/characters.hpp"
#include "tfc/errors.hpp"
#include "tfc/lfun.hpp"

using namespace tfc;
namespace fs = std::filesystem;

namespace {

class CacheTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("tfc_cache_test_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string file(const std::string& name = "l1.jsonl") const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::size_t line_count(const std::string& path) {
    std::ifstream in(path);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) ++n;
    return n;
}

}  // namespace

TEST_F(CacheTest, PutThenGetReturnsIdenticalRecord) {
    const CacheRecord rec{-4, 0.7853981633974483, "cnf", 14};
    {
        L1Cache cache(file());
        cache.put(rec);
        EXPECT_EQ(cache.get(-4), rec);
    }
    L1Cache reopened(file());
    ASSERT_TRUE(reopened.get(-4).has_value());
    EXPECT_EQ(*reopened.get(-4), rec);
    EXPECT_EQ(reopened.size(), 1u);
}

TEST_F(CacheTest, ColdCacheMissesThenComputesAndStores) {
    auto cache = std::make_shared<L1Cache>(file());
    EXPECT_FALSE(cache->get(-8).has_value());
    const auto provider = caching_L1_provider(cache, L1Method::ClassNumberFormula);
    const double v = provider(-8);
    EXPECT_NEAR(v, L1_class_number_formula(-8), 0.0);
    ASSERT_TRUE(cache->get(-8).has_value());
    EXPECT_EQ(cache->get(-8)->digits, kL1Digits);
    EXPECT_EQ(line_count(file()), 1u);
    provider(-8);
    EXPECT_EQ(line_count(file()), 1u);  // second lookup is a hit
}

TEST_F(CacheTest, HighestDigitsWins) {
    {
        L1Cache cache(file());
        cache.put({5, 0.43, "cnf", 20});
        cache.put({5, 0.42, "cnf", 14});
    }
    L1Cache reopened(file());
    EXPECT_EQ(reopened.get(5)->digits, 20);
    EXPECT_DOUBLE_EQ(reopened.get(5)->L1, 0.43);
}

TEST_F(CacheTest, LaterLineWinsOnEqualDigits) {
    {
        L1Cache cache(file());
        cache.put({5, 0.41, "cnf", 14});
        cache.put({5, 0.42, "smoothed", 14});
    }
    L1Cache reopened(file());
    EXPECT_DOUBLE_EQ(reopened.get(5)->L1, 0.42);
    EXPECT_EQ(reopened.get(5)->method, "smoothed");
}

TEST_F(CacheTest, CorruptLinesAreSkipped) {
    {
        std::ofstream out(file());
        out << "{\"D\":-4,\"L1\":0.7853981633974483,\"method\":\"cnf\",\"digits\":14}\n";
        out << "not json at all\n";
        out << "{\"D\":6,\"L1\":1.0,\"method\":\"cnf\",\"digits\":14}\n";     // not a discriminant
        out << "{\"D\":-3,\"L1\":-1.0,\"method\":\"cnf\",\"digits\":14}\n";    // nonpositive value
        out << "{\"D\":8,\"L1\":0.6232252401402305,\"method\":\"cnf\"}\n";    // missing field
        out << "{\"D\":-8,\"L1\":1.1107207345395915,\"method\":\"cnf\",\"digits\":14}\n";
    }
    L1Cache cache(file());
    EXPECT_EQ(cache.size(), 2u);
    EXPECT_EQ(cache.skipped_lines(), 4u);
    EXPECT_TRUE(cache.get(-4).has_value());
    EXPECT_TRUE(cache.get(-8).has_value());
    EXPECT_FALSE(cache.get(8).has_value());
}

TEST_F(CacheTest, RejectsInvalidRecords) {
    L1Cache cache(file());
    EXPECT_THROW(cache.put({6, 1.0, "cnf", 14}), DomainError);
    EXPECT_THROW(cache.put({-4, 0.0, "cnf", 14}), DomainError);
    EXPECT_THROW(cache.put({-4, 1.0, "cnf", 0}), DomainError);
}

TEST_F(CacheTest, ConcurrentWritersProduceWholeLines) {
    auto cache = std::make_shared<L1Cache>(file());
    const auto provider = caching_L1_provider(cache, L1Method::ClassNumberFormula);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t)
        threads.emplace_back([&, t] {
            for (std::int64_t D = -4 - t; D > -400; D -= 4)
                if (is_fundamental_discriminant(D)) provider(D);
        });
    for (auto& th : threads) th.join();
    L1Cache reopened(file());
    EXPECT_EQ(reopened.skipped_lines(), 0u);
    EXPECT_EQ(reopened.size(), cache->size());
}

TEST_F(CacheTest, EnvironmentVariableNamesDefaultPath) {
    ::setenv(kCacheEnvVar, file("env.jsonl").c_str(), 1);
    EXPECT_EQ(default_cache_path(), file("env.jsonl"));
    ::unsetenv(kCacheEnvVar);
    EXPECT_EQ(default_cache_path(), "");
}
