#include "doctest.h"
#include "trisum/arith.hpp"
#include "trisum/errors.hpp"
#include "trisum/sieve.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>

using namespace trisum;

TEST_CASE("sieve matches pointwise d3 up to 10^4") {
    auto t = arith::D3Table::build(10000);
    REQUIRE(t.size() == 10000);
    for (std::uint64_t n = 1; n <= 10000; ++n) CHECK(t(n) == arith::d3_pointwise(n));
}

TEST_CASE("small values") {
    auto t = arith::D3Table::build(12);
    CHECK(t(1) == 1);
    CHECK(t(2) == 3);
    CHECK(t(4) == 6);
    CHECK(t(8) == 10);
    CHECK(t(12) == 18);
}

TEST_CASE("save and load round trip") {
    auto path = std::filesystem::temp_directory_path() / "trisum_test_d3.bin";
    auto t = arith::D3Table::build(5000);
    t.save(path.string());
    auto u = arith::D3Table::load(path.string());
    CHECK(u.values() == t.values());
    std::filesystem::remove(path);
}

TEST_CASE("budget guard") {
    CHECK_THROWS_AS(arith::D3Table::build(1000000, 1000), ResourceError);
}

TEST_CASE("cache directory is reused") {
    auto dir = std::filesystem::temp_directory_path() / "trisum_test_cache";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    setenv("TRISUM_SIEVE_CACHE", dir.string().c_str(), 1);
    auto a = arith::D3Table::cached(3000);
    CHECK(!std::filesystem::is_empty(dir));
    auto b = arith::D3Table::cached(2000);
    CHECK(b.size() >= 2000);
    for (std::uint64_t n = 1; n <= 2000; ++n) CHECK(b(n) == a(n));
    unsetenv("TRISUM_SIEVE_CACHE");
    std::filesystem::remove_all(dir);
}
