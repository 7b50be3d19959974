#include "doctest.h"
#include "trisum/delta.hpp"
#include "trisum/errors.hpp"
#include "trisum/phase_integrals.hpp"

#include <cmath>
#include <numbers>

using namespace trisum;
using namespace trisum::phase;

namespace {

// Trapezoid rule; exponentially accurate for smooth integrands vanishing at both ends.
template <class F>
cplx trap(F f, double a, double b, int n) {
    const double h = (b - a) / n;
    cplx acc = 0;
    for (int i = 1; i < n; ++i) acc += f(a + i * h);
    return acc * h;
}

const double kPre = -2.0 * std::pow(std::numbers::pi, 3) / std::sqrt(3.0 * std::numbers::pi);

} // namespace

TEST_CASE("thresholds and envelopes") {
    CHECK(K_threshold(4, 8.0, 0.5) == doctest::Approx(64.0 / 64 + 8.0 / 8));
    CHECK(K_threshold(3, 2.0, -1.0) == doctest::Approx(27.0 / 4 + 2.0));
    CHECK(M1_threshold(2, 3, 5, 7, 10.0) == doctest::Approx(21.0));
    CHECK(P_envelope(64.0, 4, 8.0) == doctest::Approx(2.0 / (2.0 * 2.0)));
}

TEST_CASE("J at u = 0 factorises into one-dimensional transforms") {
    auto ps = make_setup({1, 1, 0}, 16.0);
    for (auto [m1, m2] : {std::pair{0, 0}, {1, 0}, {2, -3}, {-1, 5}}) {
        const std::int64_t q = 5;
        auto f1 = trap([&](double x) { return ps.W1(x) * e_real(-m1 * ps.X * x / q); }, ps.W1.lo(), ps.W1.hi(), 4000);
        auto f2 = trap([&](double x) { return ps.W2(x) * e_real(-m2 * ps.X * x / q); }, ps.W2.lo(), ps.W2.hi(), 4000);
        auto j = J_transform(m1, m2, 0.0, q, ps);
        CHECK(std::abs(j - f1 * f2) < 1e-11);
    }
}

TEST_CASE("J grid agrees with tensor Gauss-Legendre") {
    auto ps = make_setup({2, 1, 1}, 20.0);
    for (double u : {0.0, 0.3, -0.6})
        for (std::int64_t q : {1, 7}) {
            JGrid g(ps, q, u);
            for (auto [m1, m2] : {std::pair{0, 0}, {1, -1}, {3, 2}}) CHECK(std::abs(g(m1, m2) - J_transform(m1, m2, u, q, ps)) < 1e-10);
        }
    CHECK_THROWS_AS(J_transform(0, 0, 0.1, 0, ps), DomainError);
}

TEST_CASE("J decays in the dual frequencies") {
    auto ps = make_setup({1, 1, 0}, 16.0);
    const double peak = std::abs(J_transform(0, 0, 0.0, 1, ps));
    CHECK(peak > 0.1);
    CHECK(std::abs(J_transform(4, 0, 0.0, 1, ps)) < 1e-6 * peak);
    CHECK(std::abs(J_transform(3, 3, 0.0, 1, ps)) < 1e-6 * peak);
    CHECK(std::abs(J_transform(0, 0, 0.2, 1, ps)) < 1e-3 * peak);
}

TEST_CASE("I_pm against the trapezoid rule") {
    auto ps = make_setup({1, 1, 0}, 12.0);
    for (int sign : {1, -1})
        for (double u : {0.0, 0.4})
            for (std::int64_t q : {1, 3}) {
                const double n2m = 5.0;
                const double a = ps.X * ps.X * u / (q * ps.Qcal), b = sign * 3.0 * std::cbrt(ps.X * ps.X * n2m) / q;
                auto ref = kPre * double(sign) *
                           trap([&](double z) { return ps.V(z) / std::cbrt(z) * e_real(a * z + b * std::cbrt(z)); },
                                ps.V.lo(), ps.V.hi(), 20000);
                CHECK(std::abs(I_pm(sign, n2m, u, q, ps) - ref) < 1e-9 * std::max(1.0, std::abs(ref)));
            }
}

TEST_CASE("I_pm is negligible beyond the calibrated threshold") {
    for (double X : {16.0, 64.0}) {
        auto ps = make_setup({1, 1, 0}, X);
        for (std::int64_t q : {1, 5, 20})
            for (double u : {0.0, 0.5}) {
                const double K = K_threshold(q, X, u);
                if (u == 0) CHECK(std::abs(I_pm(1, 10 * K, u, q, ps)) > 0.1);
                for (double t : {1.0, 1.3, 2.0})
                    for (int sign : {1, -1}) CHECK(std::abs(I_pm(sign, 3e5 * K * t, u, q, ps)) <= 1e-8);
            }
    }
}

TEST_CASE("P integral against the trapezoid rule and its envelope") {
    auto ps = make_setup({1, 1, 0}, 16.0);
    for (double n2m : {1.0, 50.0, 400.0})
        for (std::int64_t q : {1, 3}) {
            const double vv = 1.4;
            const double Y = std::cbrt(ps.X * ps.X * n2m) / q;
            auto ref = trap([&](double x) { return ps.W1(x) * e_real(3.0 * Y * std::cbrt(ps.form.eval(x, vv)) - 2 * ps.X * x / q); },
                            ps.W1.lo(), ps.W1.hi(), 20000);
            auto p = P_integral(1, n2m, 2, vv, q, ps);
            CHECK(std::abs(p - ref) < 1e-9);
        }
    CHECK(std::abs(P_integral(1, 1e4, 0, 1.5, 1, ps)) < 5 * P_envelope(1e4, 1, ps.X));
}

TEST_CASE("M integral against a plane trapezoid with the window table") {
    auto ps = make_setup({1, 1, 0}, 8.0);
    auto scheme = delta::build_scheme(16);
    ps.Qcal = scheme.Q_cal;
    const std::int64_t q = 2;
    delta::PsiWindowTransform t(scheme, q, 2000);
    const double sc = ps.X * ps.X * scheme.Q_cal / ps.Qcal;
    for (auto [m1, m2] : {std::pair{0, 0}, {1, 0}, {1, 1}}) {
        const int n = 1200;
        const double a = ps.W1.lo(), h = (ps.W1.hi() - a) / n;
        cplx ref = 0;
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j) {
                const double x = a + i * h, y = a + j * h;
                const double r = ps.form.eval(x, y) * sc;
                if (std::abs(r) > t.r_max()) continue;
                ref += ps.W1(x) * ps.W2(y) * e_real(-(m1 * ps.X * x + m2 * ps.X * y) / q) * t(r);
            }
        ref *= h * h;
        auto m = M_integral(m1, m2, q, ps, scheme);
        CHECK(std::abs(m - ref) < 1e-6 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("Z with identical factors is a nonnegative real number") {
    auto ps = make_setup({1, 1, 0}, 8.0);
    auto scheme = delta::build_scheme(16);
    ps.Qcal = scheme.Q_cal;
    ZParams z;
    z.q = z.qp = 1;
    z.K = 1;
    auto v = Z_integral(z, ps, scheme);
    CHECK(v.real() >= 0);
    CHECK(std::abs(v.imag()) < 1e-9 * std::max(1.0, std::abs(v)));
    z.n = 0;
    CHECK_THROWS_AS(Z_integral(z, ps, scheme), DomainError);
}
