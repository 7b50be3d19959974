#include "doctest.h"
#include "trisum/arith.hpp"
#include "trisum/errors.hpp"
#include "trisum/voronoi.hpp"

#include <cmath>
#include <numeric>

using namespace trisum;
using namespace trisum::voronoi;

TEST_CASE("coefficients of the divisor instance") {
    D3Coefficients B;
    for (std::uint64_t n = 1; n <= 30; ++n)
        for (std::uint64_t m = 1; m <= 12; ++m) {
            std::uint64_t ref = 0;
            for (std::uint64_t m1 = 1; m1 <= n; ++m1) {
                if (n % m1) continue;
                for (std::uint64_t m2 = 1; m2 <= n / m1; ++m2)
                    if ((n / m1) % m2 == 0) ref += arith::sigma00(n / (m1 * m2), m);
            }
            CHECK(B(n, m) == double(ref));
        }
    CHECK(B(1, 1) == 1.0);
    CHECK_THROWS_AS(B(0, 1), DomainError);
    GL3Coefficients g;
    CHECK_THROWS_AS(g(1, 1), DomainError);
}

TEST_CASE("twisted sum for q = 1 is the plain weighted divisor sum") {
    auto h = standard_bump(50, 100);
    double ref = 0;
    for (std::uint64_t n = 50; n <= 100; ++n) ref += double(arith::d3_pointwise(n)) * h(double(n));
    auto v = voronoi_lhs(h, 1, 1);
    CHECK(v.real() == doctest::Approx(ref).epsilon(1e-13));
    CHECK(v.imag() == doctest::Approx(0).scale(1e-12));
    CHECK_THROWS_AS(voronoi_lhs(h, 2, 4), DomainError);
}

TEST_CASE("main terms match the residue of the twisted zeta cube") {
    auto h = standard_bump(100, 200);
    for (std::int64_t q : {1, 2, 3, 4, 5, 6, 9, 10})
        for (std::int64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            auto f = main_terms_formula(h, a, q);
            auto r = main_terms_residue(h, a, q);
            CHECK(std::abs(f - r) <= 1e-9 * std::abs(r));
        }
}

TEST_CASE("printed main-term scale misses the residue by a factor of two") {
    auto h = standard_bump(100, 200);
    auto half = main_terms_formula(h, 1, 3, kPrintedMainTermScale);
    auto r = main_terms_residue(h, 1, 3);
    CHECK(std::abs(2.0 * half - r) <= 1e-9 * std::abs(r));
    CHECK(std::abs(half - r) > 0.4 * std::abs(r));
}

TEST_CASE("P polynomials") {
    CHECK_THROWS_AS(P1(0, 1), DomainError);
    auto pp = P_polynomials(3, 9);
    CHECK(pp.P1 == P1(3, 9));
    CHECK(pp.P2 == P2(3, 9));
}

TEST_CASE("summation formula for small moduli") {
    auto h = standard_bump(200, 400);
    VoronoiEngine eng(h, 6);
    for (std::int64_t q : {1, 2, 3, 5, 6})
        for (std::int64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            auto r = verify_voronoi(eng, a, q, 1e-4);
            CHECK_MESSAGE(r.pass, "q=" << q << " a=" << a << " rel=" << r.rel_err);
        }
    CHECK_THROWS_AS(eng.rhs(1, 7, D3Coefficients{}), DomainError);
}
