#include "doctest.h"
#include "trisum/bump.hpp"
#include "trisum/cgamma.hpp"
#include "trisum/errors.hpp"
#include "trisum/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace trisum;
using namespace trisum::quad;

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    for (int n : {4, 8, 16, 24}) {
        const auto& r = gauss_legendre(n);
        for (int k = 0; k < 2 * n; ++k) {
            double s = 0;
            for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(r.x[i], k);
            const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
            CHECK(s == doctest::Approx(exact).epsilon(1e-13));
        }
    }
}

TEST_CASE("adaptive quadrature on smooth and oscillatory integrands") {
    CHECK(adaptive_quad_real([](double x) { return std::exp(x); }, 0, 1) == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-12));
    auto r = adaptive_quad([](double x) { return std::polar(1.0, 200 * x); }, 0, std::numbers::pi);
    CHECK(std::abs(r.value - cplx(0, 0)) < 1e-10);
    QuadOptions o;
    o.initial_panels = panels_for_frequency(0, 10, 50);
    CHECK(adaptive_quad_real([](double x) { return std::cos(2 * std::numbers::pi * 50 * x); }, 0, 10, o) ==
          doctest::Approx(0).epsilon(1e-9));
    CHECK(adaptive_quad_real([](double x) { return 1 / std::sqrt(x); }, 1e-12, 1) == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("budget exhaustion reports a best estimate") {
    QuadOptions o;
    o.max_panels = 3;
    o.rel_tol = 1e-12;
    o.abs_tol = 0;
    try {
        adaptive_quad([](double x) { return cplx(std::sin(1 / (x + 1e-3)), 0); }, 0, 1, o);
        FAIL("expected QuadratureFailure");
    } catch (const QuadratureFailure& e) {
        CHECK(std::isfinite(e.best_estimate.real()));
    }
}

TEST_CASE("trapezoid on a compactly supported bump is spectrally accurate") {
    auto b = standard_bump(0, 1);
    auto nodes = uniform_nodes(0, 1, 200);
    double s = 0;
    for (double x : nodes) s += b(x);
    s *= nodes[1] - nodes[0];
    CHECK(s == doctest::Approx(adaptive_quad_real([&](double x) { return b(x); }, 0, 1)).epsilon(1e-10));
}

TEST_CASE("complex Gamma against reference values") {
    struct Case {
        cplx z, g;
    } cases[] = {
        {{0.3, 2}, {0.0574653375695880334598999936647, -0.0749849125826461381758161169924}},
        {{5, -3}, {0.0160418827416523250315696368011, 9.43329328975598699932042881834}},
        {{-2.5, 0.7}, {-0.159818716362932930154404941645, -0.157566549081515283784737389624}},
        {{0.5, 40}, {9.52955104943115883133805380076e-28, 8.73756820183844179010527831971e-28}},
    };
    for (const auto& c : cases) {
        const cplx g = std::exp(log_gamma(c.z));
        CHECK(std::abs(g - c.g) <= 1e-12 * std::abs(c.g));
    }
    CHECK(std::exp(log_gamma(cplx(6, 0))).real() == doctest::Approx(120.0).epsilon(1e-13));
}
