#include "doctest.h"
#include "trisum/errors.hpp"
#include "trisum/poisson.hpp"

#include <cmath>
#include <numeric>

using namespace trisum;
using namespace trisum::poisson;

TEST_CASE("direct and dual sides agree") {
    for (QuadraticForm f : {QuadraticForm{1, 1, 0}, QuadraticForm{2, 1, 1}, QuadraticForm{3, 2, -1}})
        for (std::int64_t q : {1, 3, 5, 8})
            for (double u : {0.0, 0.35}) {
                T1Params p;
                p.form = f;
                p.q = q;
                p.u = u;
                p.X = 24;
                DualSum dual(p);
                for (std::int64_t a = 1; a <= q; ++a) {
                    if (std::gcd(a, q) != 1) continue;
                    p.a = a;
                    auto r = verify_T1(p, dual, 1e-6);
                    CHECK_MESSAGE(r.pass, "q=" << q << " a=" << a << " err=" << r.abs_err);
                }
            }
}

TEST_CASE("closed-form characters reproduce the brute-force dual sum") {
    T1Params p;
    p.form = {2, 1, 1};
    p.q = 7;
    p.a = 3;
    p.u = 0.2;
    p.X = 20;
    DualSum dual(p);
    auto b = dual(3, expsums::Mode::Brute);
    auto c = dual(3, expsums::Mode::Closed);
    CHECK(std::abs(b.value - c.value) < 1e-9 * std::max(1.0, std::abs(b.value)));
}

TEST_CASE("q = 1 and u = 0 gives the untwisted lattice sum") {
    T1Params p;
    p.X = 10;
    double ref = 0;
    for (int n1 = 10; n1 <= 20; ++n1)
        for (int n2 = 10; n2 <= 20; ++n2) ref += p.W1(n1 / 10.0) * p.W2(n2 / 10.0);
    auto v = T1_direct(p);
    CHECK(v.real() == doctest::Approx(ref).epsilon(1e-13));
    CHECK(std::abs(v.imag()) < 1e-12);
}

TEST_CASE("parameter validation") {
    T1Params p;
    p.q = 0;
    CHECK_THROWS_AS(T1_direct(p), DomainError);
    p.q = 4;
    p.a = 2;
    CHECK_THROWS_AS(T1_direct(p), DomainError);
    p.a = 1;
    p.X = -1;
    CHECK_THROWS_AS(T1_direct(p), DomainError);
}

TEST_CASE("report JSON is deterministic") {
    T1Params p;
    p.q = 3;
    p.u = 0.1;
    auto a = verify_T1(p, 1e-6).to_json();
    auto b = verify_T1(p, 1e-6).to_json();
    CHECK(a == b);
    CHECK(a.find("\"pass\"") != std::string::npos);
}
