#pragma once

#include "trisum/kahan.hpp"
#include "trisum/quadratic_form.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace trisum::expsums {

using i64 = std::int64_t;

cplx kloosterman(i64 a, i64 b, i64 q);
// S(a, b; q) for b = 0..q-1 by one FFT of length q.
std::vector<cplx> kloosterman_row(i64 a, i64 q);

// Divisor formula sum_{d | (a,q)} d mu(q/d).
i64 ramanujan_sum(i64 a, i64 q);

// sum_{x,y mod q} e(a (Q(x,y) + m1 x + m2 y) / q); q <= 10^4.
cplx gauss_sum_brute(const QuadraticForm& f, i64 m1, i64 m2, i64 a, i64 q);

// Phase of the closed form: e(sign * unit * inv(divisor) * Q*(m) / q), unit being a or its inverse.
struct PhaseVariant {
    int sign = -1;
    bool use_inverse_of_a = true;
    enum Divisor { One, Two, Four, Det, TwoDet, FourDet } divisor = FourDet;
    std::string describe() const;
    bool operator==(const PhaseVariant&) const = default;
};

// Frozen after calibration against gauss_sum_brute.
PhaseVariant frozen_gauss_phase();
std::vector<PhaseVariant> all_phase_variants();
// Variants that reproduce gauss_sum_brute on every odd q <= qmax coprime to 2 det a, all m, all a.
std::vector<PhaseVariant> calibrate_gauss_phase(const std::vector<QuadraticForm>& forms, i64 qmax);

cplx gauss_sum_closed_variant(const QuadraticForm& f, i64 m1, i64 m2, i64 a, i64 q, const PhaseVariant& v);
// Requires q odd, gcd(q, 2 det a) = 1; DomainError otherwise.
cplx gauss_sum_closed(const QuadraticForm& f, i64 m1, i64 m2, i64 a, i64 q);

enum class Mode { Brute, Closed };

// sum_{alpha mod q} e((-a Q(alpha) + m . alpha) / q), gcd(a, q) = 1.
cplx char_C(const QuadraticForm& f, i64 m1, i64 m2, i64 a, i64 q, Mode mode);

// sum*_{a mod q} S(abar, sign m; q/n) C(m1, m2, a, q)
cplx char_C1_definition(const QuadraticForm& f, i64 m1, i64 m2, i64 m, i64 n, i64 q, int sign);
// Ramanujan-sum reduction; needs gcd(q, 2 det) = 1 and q odd.
cplx char_C1_reduced(const QuadraticForm& f, i64 m1, i64 m2, i64 m, i64 n, i64 q, int sign);
// Definition value; cross-checks the reduced form when it applies and throws on disagreement.
cplx char_C1(const QuadraticForm& f, i64 m1, i64 m2, i64 m, i64 n, i64 q, int sign);

// Log-Mellin moments v~(1), v~'(1), v~''(1).
struct MellinMoments {
    cplx v0, v1, v2;
};

// sum_{n | q} n d(n) S(abar, 0; q/n) [v0 P2(n,q) + v1 P1(n,q) + v2 / 2]
cplx V_tilde(const MellinMoments& mm, i64 a, i64 q);
// Kernel with S(abar,0;q/n) = mu(q/n): R_j(q) = sum_{n|q} n d(n) mu(q/n) P_j(n,q), P_0 = 1/2.
struct MainKernel {
    double R0, R1, R2;
};
MainKernel main_kernel(i64 q);

cplx char_C2(const QuadraticForm& f, i64 m1, i64 m2, i64 q, const MellinMoments& mm, Mode mode = Mode::Brute);

struct CharSumKey {
    i64 m1 = 0, m2 = 0, m1p = 0, m2p = 0;
    i64 m = 0;
    i64 n = 1;
    i64 q1 = 1, q2 = 1, q2p = 1;
    int sign = 1;

    i64 q() const { return q1 * q2; }
    i64 qp() const { return q1 * q2p; }
    i64 rho() const { return q1 * q2 * q2p / n; }
    void validate() const;
};

struct FrakSResult {
    cplx value;
    i64 admissible_pairs = 0;
    // Pairs (alpha, alpha') that satisfy the congruence with m = 0 but violate alpha = alpha', q2 = q2'.
    i64 case_one_counterexamples = 0;
};

FrakSResult frakS_enumerate(const CharSumKey& key, const QuadraticForm& f);
// (1/rho) sum_{j mod rho} e(m j / rho) C1(j) conj(C1'(j)).
cplx frakS_via_j(const CharSumKey& key, const QuadraticForm& f);

} // namespace trisum::expsums
