#include "doctest.h"
#include "trisum/bump.hpp"
#include "trisum/errors.hpp"

#include <cmath>

using namespace trisum;

TEST_CASE("standard bump: support, peak and symmetry") {
    auto b = standard_bump(1, 2);
    CHECK(b(1.0) == 0);
    CHECK(b(2.0) == 0);
    CHECK(b(0.5) == 0);
    CHECK(b(1.5) == doctest::Approx(1.0));
    for (double t : {0.1, 0.2, 0.37, 0.49}) CHECK(b(1.5 - t) == doctest::Approx(b(1.5 + t)).epsilon(1e-14));
}

TEST_CASE("jet derivatives match finite differences") {
    auto b = plateau_bump(0.5, 1.0, 2.0, 3.0);
    for (double x : {0.7, 0.9, 2.3, 2.8}) {
        const double h = 1e-5;
        CHECK(b.derivative(1, x) == doctest::Approx((b(x + h) - b(x - h)) / (2 * h)).epsilon(1e-6));
        CHECK(b.derivative(2, x) == doctest::Approx((b.derivative(1, x + h) - b.derivative(1, x - h)) / (2 * h)).epsilon(1e-5));
    }
    CHECK_THROWS_AS(b.derivative(7, 1.0), DomainError);
}

TEST_CASE("plateau is one on its flat part") {
    auto v = weight_V();
    for (double x = 1.0; x <= 2.0; x += 0.05) CHECK(v(x) == doctest::Approx(1.0));
    CHECK(v.lo() == 0.5);
    CHECK(v.hi() == 3.0);
    CHECK(v(0.75) > 0);
    CHECK(v(0.75) < 1);
}

TEST_CASE("dilation, scaling and powers") {
    auto b = standard_bump(1, 2);
    auto d = b.dilated(10);
    CHECK(d.lo() == 10);
    CHECK(d(15) == doctest::Approx(b(1.5)));
    CHECK(b.scaled(3)(1.3) == doctest::Approx(3 * b(1.3)));
    CHECK(b.times_power(2)(1.3) == doctest::Approx(1.69 * b(1.3)));
    CHECK(BumpFunction::zero().is_zero());
    CHECK(BumpFunction::zero()(1.5) == 0);
    CHECK_THROWS_AS(standard_bump(2, 1), DomainError);
    CHECK_THROWS_AS(plateau_bump(1, 0.5, 2, 3), DomainError);
}
