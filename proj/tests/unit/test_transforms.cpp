#include "doctest.h"
#include "trisum/errors.hpp"
#include "trisum/transforms.hpp"

#include <cmath>
#include <numbers>

using namespace trisum;
using namespace trisum::osc;

TEST_CASE("log-weighted Mellin transforms of the unit bump") {
    // high-precision quadrature references
    struct Case {
        cplx s;
        int j;
        cplx v;
    } cases[] = {
        {{1, 0}, 0, {0.603450161218938087668118998165, 0}},
        {{1, 0}, 1, {0.239275223436766169690314228796, 0}},
        {{1, 0}, 2, {0.10580572599629416439038446579, 0}},
        {{1, 1}, 0, {0.551584800266492692397141267859, 0.231002208225968780228832519004}},
        {{1, 1}, 2, {0.0935271363520073152298224341582, 0.0481447603393323820516645516624}},
        {{0.5, 3}, 1, {0.0466506153296427106913574557675, 0.173363162236240141092466108913}},
    };
    auto h = standard_bump(1, 2);
    for (const auto& c : cases) CHECK(std::abs(mellin_logj(h, c.j, c.s) - c.v) < 1e-11);
}

TEST_CASE("G and H variants agree for the divisor parameters") {
    auto h = standard_bump(1, 2);
    for (double y : {0.1, 1.0, 10.0})
        for (int sign : {1, -1}) {
            auto g = G_pm(sign, y, divisor_params(), h, Variant::G);
            auto k = G_pm(sign, y, divisor_params(), h, Variant::H);
            CHECK(std::abs(g.value - k.value) <= 1e-6 * std::abs(g.value));
        }
}

TEST_CASE("contour shift leaves the transform unchanged") {
    auto h = standard_bump(1, 2);
    for (Variant v : {Variant::G, Variant::H})
        for (double y : {0.1, 1.0, 10.0})
            for (int l : {0, 1}) {
                ContourOptions a, b;
                b.sigma = a.sigma + 0.2;
                auto va = G_transform(l, y, divisor_params(), h, v, a);
                auto vb = G_transform(l, y, divisor_params(), h, v, b);
                CHECK(std::abs(va.value - vb.value) <= 1e-8 * std::max(1.0, std::abs(va.value)));
                CHECK(std::abs(va.value.imag()) < 1e-9 * std::max(1.0, std::abs(va.value)));
            }
}

TEST_CASE("H_1 is pi^3 y times G_1 for the divisor parameters") {
    const double pi3 = std::pow(std::numbers::pi, 3);
    auto h = standard_bump(1, 2);
    for (double y : {0.1, 1.0, 10.0}) {
        auto g = G_transform(1, y, divisor_params(), h, Variant::G).value;
        auto k = G_transform(1, y, divisor_params(), h, Variant::H).value;
        CHECK(std::abs(k - pi3 * y * g) <= 1e-9 * std::abs(k));
    }
}

TEST_CASE("zero weight and domain guards") {
    CHECK(std::abs(G_transform(0, 1.0, divisor_params(), BumpFunction::zero(), Variant::G).value) == 0);
    CHECK_THROWS_AS(G_transform(2, 1.0, divisor_params(), standard_bump(1, 2), Variant::G), DomainError);
    CHECK_THROWS_AS(G_transform(0, -1.0, divisor_params(), standard_bump(1, 2), Variant::G), DomainError);
    ContourOptions bad;
    bad.sigma = -5;
    CHECK_THROWS_AS(G_transform(0, 1.0, divisor_params(), standard_bump(1, 2), Variant::G, bad), DomainError);
    CHECK_THROWS_AS(G0_asymptotic(1.0, standard_bump(1, 2), 4), DomainError);
    CHECK(std::abs(G0_asymptotic(100.0, BumpFunction::zero(), 4).value) == 0);
}

TEST_CASE("four-term expansion against the contour integral") {
    for (double M : {1.0, 10.0})
        for (double yM : {1e2, 1e3}) {
            auto g = standard_bump(M, 2 * M);
            const double y = yM / M;
            auto ref = G_transform(0, y, divisor_params(), g, Variant::H).value;
            auto a = G0_asymptotic(y, g, 4).value;
            const double rel = std::abs(a - ref) / std::abs(ref);
            CHECK(rel <= 50 * std::pow(yM, -2.0 / 3));
            CHECK(rel < 1e-8);
        }
}

TEST_CASE("interpolated table matches direct transforms") {
    auto h = standard_bump(1, 2);
    HTable t(h, 0.05, 500);
    for (double y : {0.07, 1.3, 42.0, 350.0}) {
        auto h0 = G_transform(0, y, divisor_params(), h, Variant::H).value;
        auto h1 = G_transform(1, y, divisor_params(), h, Variant::H).value;
        CHECK(std::abs(t.H0(y) - h0) <= 1e-9 * std::max(1.0, std::abs(h0)));
        CHECK(std::abs(t.H1(y) - h1) <= 1e-9 * std::max(1.0, std::abs(h1)));
    }
}

TEST_CASE("leading asymptotic coefficients") {
    auto c = asymptotic_coefficients(4);
    REQUIRE(c.c.size() == 4);
    CHECK(c.c[0] == 0);
    CHECK(c.d[0] == doctest::Approx(-2.0 / std::sqrt(3.0 * std::numbers::pi)));
    for (int j = 0; j < 4; j += 2) CHECK(c.c[j] == 0);
    for (int j = 1; j < 4; j += 2) CHECK(std::abs(c.d[j]) < 1e-15);
    LanglandsParams p = divisor_params();
    p.alpha = {0.1, -0.1, 0.0};
    CHECK_THROWS_AS(asymptotic_coefficients(4, p), DomainError);
}
