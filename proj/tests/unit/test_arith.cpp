#include "doctest.h"
#include "trisum/arith.hpp"
#include "trisum/constants.hpp"
#include "trisum/errors.hpp"

#include <numeric>

using namespace trisum;
using namespace trisum::arith;

namespace {

u64 count_divisors_brute(u64 n) {
    u64 c = 0;
    for (u64 d = 1; d <= n; ++d)
        if (n % d == 0) ++c;
    return c;
}

u64 d3_brute(u64 n) {
    u64 c = 0;
    for (u64 a = 1; a <= n; ++a)
        if (n % a == 0)
            for (u64 b = 1; b <= n / a; ++b)
                if ((n / a) % b == 0) ++c;
    return c;
}

} // namespace

TEST_CASE("gcd, mod and inverses") {
    CHECK(gcd(12, 18) == 6);
    CHECK(gcd(-12, 18) == 6);
    CHECK(gcd(0, 7) == 7);
    CHECK(mod(-3, 7) == 4);
    for (i64 m = 2; m < 60; ++m)
        for (i64 a = 1; a < m; ++a) {
            auto e = ext_gcd(a, m);
            CHECK(a * e.x + m * e.y == e.g);
            if (std::gcd(a, m) == 1) CHECK(mod(a * mod_inverse(a, m), m) == 1);
            else CHECK_THROWS_AS(mod_inverse(a, m), DomainError);
        }
}

TEST_CASE("modular power and primality") {
    CHECK(pow_mod(2, 10, 1000) == 24);
    CHECK(mul_mod(0xFFFFFFFFFFFFFFull, 0xFFFFFFFFFFFFFFull, 1000000007ull) ==
          static_cast<u64>((static_cast<unsigned __int128>(0xFFFFFFFFFFFFFFull) * 0xFFFFFFFFFFFFFFull) % 1000000007ull));
    int primes = 0;
    for (u64 n = 1; n <= 10000; ++n)
        if (is_prime(n)) ++primes;
    CHECK(primes == 1229);
    CHECK(is_prime(1000000007ull));
    CHECK_FALSE(is_prime(3215031751ull));
}

TEST_CASE("factorisation reproduces n") {
    for (u64 n : {2ull, 360ull, 9973ull, 600851475143ull, 1000000016000000063ull}) {
        u64 prod = 1;
        for (auto [p, e] : factorize(n)) {
            CHECK(is_prime(p));
            for (int i = 0; i < e; ++i) prod *= p;
        }
        CHECK(prod == n);
    }
    CHECK(factorize(1).empty());
}

TEST_CASE("multiplicative functions against brute force") {
    for (u64 n = 1; n <= 400; ++n) {
        CHECK(num_divisors(n) == count_divisors_brute(n));
        CHECK(d3_pointwise(n) == d3_brute(n));
        u64 phi = 0;
        for (u64 k = 1; k <= n; ++k)
            if (std::gcd(k, n) == 1) ++phi;
        CHECK(euler_phi(n) == phi);
        int mu_sum = 0;
        for (auto d : divisors(n)) mu_sum += mobius(d);
        CHECK(mu_sum == (n == 1 ? 1 : 0));
    }
    CHECK(d3_prime_power(0) == 1);
    CHECK(d3_prime_power(3) == 10);
}

TEST_CASE("sigma00 closed form matches the double loop") {
    for (u64 i = 1; i <= 30; ++i)
        for (u64 j = 1; j <= 60; ++j) CHECK(sigma00(i, j) == sigma00_fast(i, j));
    for (u64 j = 1; j <= 100; ++j) CHECK(sigma00(1, j) == d3_pointwise(j));
}

TEST_CASE("Jacobi symbol agrees with Euler's criterion at primes") {
    for (i64 p : {3, 5, 7, 11, 13, 101}) {
        for (i64 a = 0; a < p; ++a) {
            const auto e = static_cast<i64>(pow_mod(static_cast<u64>(a), static_cast<u64>((p - 1) / 2), static_cast<u64>(p)));
            const int expect = a == 0 ? 0 : (e == 1 ? 1 : -1);
            CHECK(jacobi(a, p) == expect);
        }
    }
    // multiplicative in the modulus
    for (i64 a = -20; a <= 20; ++a) CHECK(jacobi(a, 15) == jacobi(a, 3) * jacobi(a, 5));
    CHECK(jacobi_and_eps(1, 5).eps_power == 0);
    CHECK(jacobi_and_eps(1, 7).eps_power == 1);
}

TEST_CASE("Stieltjes constants by Euler-Maclaurin") {
    CHECK(stieltjes_em(0) == doctest::Approx(0.577215664901532860606512090082).epsilon(1e-12));
    CHECK(stieltjes_em(1) == doctest::Approx(-0.0728158454836767248605863758749).epsilon(1e-11));
    CHECK(Constants::euler_gamma == doctest::Approx(stieltjes_em(0)).epsilon(1e-12));
}
