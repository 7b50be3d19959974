#include "trisum/expsums.hpp"
#include "trisum/parallel.hpp"
#include "trisum/arith.hpp"
#include "trisum/errors.hpp"
#include "trisum/voronoi.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numeric>

namespace trisum::expsums {

using arith::mod;
using arith::mod_inverse;

namespace {

void require_modulus(i64 q) {
    if (q < 1) throw DomainError("modulus must be positive");
}

i64 divisor_value(const QuadraticForm& f, PhaseVariant::Divisor d) {
    switch (d) {
    case PhaseVariant::One: return 1;
    case PhaseVariant::Two: return 2;
    case PhaseVariant::Four: return 4;
    case PhaseVariant::Det: return f.det();
    case PhaseVariant::TwoDet: return 2 * f.det();
    case PhaseVariant::FourDet: return 4 * f.det();
    }
    return 1;
}

// (det/q) eps_q^2 q, a real number.
double closed_amplitude(const QuadraticForm& f, i64 q) {
    auto je = arith::jacobi_and_eps(f.det(), q);
    const double eps2 = je.eps_power == 0 ? 1.0 : -1.0;
    return static_cast<double>(je.jacobi) * eps2 * static_cast<double>(q);
}

i64 adjoint_mod(const QuadraticForm& f, i64 m1, i64 m2, i64 q) {
    i64 x = mod(m1, q), y = mod(m2, q);
    __int128 v = static_cast<__int128>(f.B) * x * x + static_cast<__int128>(f.A) * y * y -
                 static_cast<__int128>(2 * f.C) * x * y;
    __int128 r = v % q;
    if (r < 0) r += q;
    return static_cast<i64>(r);
}

i64 form_mod(const QuadraticForm& f, i64 x, i64 y, i64 q) {
    __int128 v = static_cast<__int128>(f.A) * x * x + static_cast<__int128>(f.B) * y * y +
                 static_cast<__int128>(2 * f.C) * x * y;
    __int128 r = v % q;
    if (r < 0) r += q;
    return static_cast<i64>(r);
}

i64 mulmod(i64 a, i64 b, i64 q) {
    return static_cast<i64>(mod(static_cast<i64>((static_cast<__int128>(a) * b) % q), q));
}

} // namespace

cplx kloosterman(i64 a, i64 b, i64 q) {
    require_modulus(q);
    if (q == 1) return 1.0;
    RootTable e(q);
    KahanComplex acc;
    for (i64 x = 1; x < q; ++x) {
        if (std::gcd(x, q) != 1) continue;
        i64 xi = mod_inverse(x, q);
        acc += e(mulmod(a, x, q) + mulmod(b, xi, q));
    }
    return acc.value();
}

std::vector<cplx> kloosterman_row(i64 a, i64 q) {
    require_modulus(q);
    const int n = static_cast<int>(q);
    std::vector<cplx> in(q, 0.0), out(q);
    RootTable e(q);
    for (i64 y = 0; y < q; ++y) {
        if (std::gcd(y, q) != 1) continue;
        in[y] = e(mulmod(a, mod_inverse(y, q), q));
    }
    if (q == 1) return {1.0};
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lk(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lk(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

i64 ramanujan_sum(i64 a, i64 q) {
    require_modulus(q);
    i64 g = std::gcd(mod(a, q), q);
    if (g == 0) g = q;
    i64 s = 0;
    for (auto d : arith::divisors(static_cast<arith::u64>(g))) {
        s += static_cast<i64>(d) * arith::mobius(static_cast<arith::u64>(q / static_cast<i64>(d)));
    }
    return s;
}

cplx gauss_sum_brute(const QuadraticForm& f, i64 m1, i64 m2, i64 a, i64 q) {
    require_modulus(q);
    if (q > 10000) throw ResourceError("gauss_sum_brute: q exceeds 10^4");
    RootTable e(q);
    const i64 am1 = mulmod(a, mod(m1, q), q), am2 = mulmod(a, mod(m2, q), q);
    KahanComplex acc;
    for (i64 x = 0; x < q; ++x) {
        for (i64 y = 0; y < q; ++y) {
            i64 k = mulmod(a, form_mod(f, x, y, q), q) + mulmod(am1, x, q) + mulmod(am2, y, q);
            acc += e(k);
        }
    }
    return acc.value();
}

std::string PhaseVariant::describe() const {
    static const char* names[] = {"1", "2", "4", "det", "2det", "4det"};
    return std::string(sign < 0 ? "-" : "+") + (use_inverse_of_a ? "inv(a)" : "a") + "*inv(" +
           names[divisor] + ")*Q*(m)";
}

PhaseVariant frozen_gauss_phase() {
    return PhaseVariant{-1, false, PhaseVariant::FourDet};
}

std::vector<PhaseVariant> all_phase_variants() {
    std::vector<PhaseVariant> out;
    for (int s : {-1, 1})
        for (bool inv : {true, false})
            for (int d = 0; d < 6; ++d)
                out.push_back(PhaseVariant{s, inv, static_cast<PhaseVariant::Divisor>(d)});
    return out;
}

cplx gauss_sum_closed_variant(const QuadraticForm& f, i64 m1, i64 m2, i64 a, i64 q, const PhaseVariant& v) {
    require_modulus(q);
    if (q % 2 == 0 || (std::gcd(q, mod(2 * f.det() * a, q)) != 1 && q != 1))
        throw DomainError("gauss_sum_closed: requires q odd and gcd(q, 2 det a) = 1");
    if (q == 1) return 1.0;
    const i64 unit = v.use_inverse_of_a ? mod_inverse(a, q) : mod(a, q);
    const i64 dinv = mod_inverse(divisor_value(f, v.divisor), q);
    i64 k = mulmod(mulmod(unit, dinv, q), adjoint_mod(f, m1, m2, q), q);
    if (v.sign < 0) k = mod(-k, q);
    return closed_amplitude(f, q) * e_frac(k, q);
}

cplx gauss_sum_closed(const QuadraticForm& f, i64 m1, i64 m2, i64 a, i64 q) {
    return gauss_sum_closed_variant(f, m1, m2, a, q, frozen_gauss_phase());
}

std::vector<PhaseVariant> calibrate_gauss_phase(const std::vector<QuadraticForm>& forms, i64 qmax) {
    std::vector<PhaseVariant> survivors;
    for (const auto& v : all_phase_variants()) {
        bool ok = true;
        for (const auto& f : forms) {
            for (i64 q = 3; q <= qmax && ok; q += 2) {
                if (std::gcd(q, 2 * f.det()) != 1) continue;
                for (i64 a = 1; a < q && ok; ++a) {
                    if (std::gcd(a, q) != 1) continue;
                    for (i64 m1 = 0; m1 < q && ok; ++m1)
                        for (i64 m2 = 0; m2 < q && ok; ++m2)
                            if (std::abs(gauss_sum_closed_variant(f, m1, m2, a, q, v) -
                                         gauss_sum_brute(f, m1, m2, a, q)) > 1e-9)
                                ok = false;
                }
            }
            if (!ok) break;
        }
        if (ok) survivors.push_back(v);
    }
    return survivors;
}

cplx char_C(const QuadraticForm& f, i64 m1, i64 m2, i64 a, i64 q, Mode mode) {
    require_modulus(q);
    if (std::gcd(mod(a, q), q) != 1 && q != 1) throw DomainError("char_C: gcd(a, q) must be 1");
    if (mode == Mode::Closed) {
        // C(m, a, q) is the Gauss sum with -a in place of a and m scaled by -inv(a).
        if (q == 1) return 1.0;
        if (q % 2 == 0 || std::gcd(q, mod(2 * f.det(), q)) != 1)
            throw DomainError("char_C closed mode: requires q odd and gcd(q, 2 det) = 1");
        const i64 ai = mod_inverse(a, q);
        return gauss_sum_closed(f, mulmod(-ai, m1, q), mulmod(-ai, m2, q), -a, q);
    }
    if (q > 10000) throw ResourceError("char_C: q exceeds 10^4");
    RootTable e(q);
    KahanComplex acc;
    const i64 mm1 = mod(m1, q), mm2 = mod(m2, q);
    for (i64 x = 0; x < q; ++x)
        for (i64 y = 0; y < q; ++y)
            acc += e(-mulmod(a, form_mod(f, x, y, q), q) + mulmod(mm1, x, q) + mulmod(mm2, y, q));
    return acc.value();
}

cplx char_C1_definition(const QuadraticForm& f, i64 m1, i64 m2, i64 m, i64 n, i64 q, int sign) {
    require_modulus(q);
    if (n < 1 || q % n != 0) throw DomainError("char_C1: n must divide q");
    const i64 qn = q / n;
    KahanComplex acc;
    for (i64 a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        const i64 ai = q == 1 ? 0 : mod_inverse(a, q);
        acc += kloosterman(ai, sign * m, qn) * char_C(f, m1, m2, a, q, Mode::Brute);
    }
    return acc.value();
}

cplx char_C1_reduced(const QuadraticForm& f, i64 m1, i64 m2, i64 m, i64 n, i64 q, int sign) {
    require_modulus(q);
    if (n < 1 || q % n != 0) throw DomainError("char_C1: n must divide q");
    if (q == 1) return 1.0;
    if (q % 2 == 0 || std::gcd(q, mod(2 * f.det(), q)) != 1)
        throw DomainError("char_C1 reduced form: requires q odd and gcd(q, 2 det) = 1");
    const i64 qn = q / n;
    // n alpha = -inv(4 det) Q*(m) (mod d)
    const i64 target = mulmod(-mod_inverse(4 * f.det(), q), adjoint_mod(f, m1, m2, q), q);
    RootTable e(qn);
    KahanComplex acc;
    for (auto du : arith::divisors(static_cast<arith::u64>(q))) {
        const i64 d = static_cast<i64>(du);
        const int mu = arith::mobius(static_cast<arith::u64>(q / d));
        if (mu == 0) continue;
        KahanComplex inner;
        for (i64 alpha = 1; alpha <= qn; ++alpha) {
            if (std::gcd(alpha, qn) != 1) continue;
            if (mod(n * alpha - target, d) != 0) continue;
            const i64 ainv = qn == 1 ? 0 : mod_inverse(alpha, qn);
            inner += e(mulmod(sign * m, ainv, qn));
        }
        acc += static_cast<double>(d * mu) * inner.value();
    }
    return closed_amplitude(f, q) * acc.value();
}

cplx char_C1(const QuadraticForm& f, i64 m1, i64 m2, i64 m, i64 n, i64 q, int sign) {
    cplx def = char_C1_definition(f, m1, m2, m, n, q, sign);
    if (q % 2 == 1 && std::gcd(q, mod(2 * f.det(), q)) == 1) {
        cplx red = char_C1_reduced(f, m1, m2, m, n, q, sign);
        if (std::abs(def - red) > 1e-6 * std::max(1.0, std::abs(def)))
            throw DomainError("char_C1: definition and reduced forms disagree");
    }
    return def;
}

cplx V_tilde(const MellinMoments& mm, i64 a, i64 q) {
    require_modulus(q);
    const i64 ai = q == 1 ? 0 : mod_inverse(a, q);
    KahanComplex acc;
    for (auto nu : arith::divisors(static_cast<arith::u64>(q))) {
        const i64 n = static_cast<i64>(nu);
        const double w = static_cast<double>(n) * static_cast<double>(arith::num_divisors(nu));
        const cplx s = kloosterman(ai, 0, q / n);
        acc += w * s *
               (mm.v0 * voronoi::P2(n, q) + mm.v1 * voronoi::P1(n, q) + 0.5 * mm.v2);
    }
    return acc.value();
}

MainKernel main_kernel(i64 q) {
    require_modulus(q);
    KahanSum r0, r1, r2;
    for (auto nu : arith::divisors(static_cast<arith::u64>(q))) {
        const i64 n = static_cast<i64>(nu);
        const int mu = arith::mobius(static_cast<arith::u64>(q / n));
        if (mu == 0) continue;
        const double w = static_cast<double>(n) * static_cast<double>(arith::num_divisors(nu)) * mu;
        r0.add(0.5 * w);
        r1.add(w * voronoi::P1(n, q));
        r2.add(w * voronoi::P2(n, q));
    }
    return {r0.value(), r1.value(), r2.value()};
}

cplx char_C2(const QuadraticForm& f, i64 m1, i64 m2, i64 q, const MellinMoments& mm, Mode mode) {
    require_modulus(q);
    KahanComplex acc;
    for (i64 a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        acc += V_tilde(mm, a, q) * char_C(f, m1, m2, a, q, mode);
    }
    return acc.value();
}

void CharSumKey::validate() const {
    if (n < 1 || q1 < 1 || q2 < 1 || q2p < 1) throw DomainError("CharSumKey: moduli must be positive");
    if (q1 % n != 0) throw DomainError("CharSumKey: n must divide q1");
    if (std::gcd(n, q2) != 1 || std::gcd(n, q2p) != 1) throw DomainError("CharSumKey: n must be coprime to q2, q2'");
    if (sign != 1 && sign != -1) throw DomainError("CharSumKey: sign must be +1 or -1");
}

FrakSResult frakS_enumerate(const CharSumKey& k, const QuadraticForm& f) {
    k.validate();
    const i64 q = k.q(), qp = k.qp(), rho = k.rho();
    if (q > 1000 || qp > 1000 || rho > 1000) throw ResourceError("frakS_enumerate: moduli exceed 10^3");
    if (q % 2 == 0 || qp % 2 == 0 || std::gcd(q * qp, 2 * f.det()) != 1)
        throw DomainError("frakS_enumerate: requires odd moduli coprime to 2 det");
    const i64 qn = q / k.n, qpn = qp / k.n;
    const i64 t = q == 1 ? 0 : mulmod(-mod_inverse(4 * f.det(), q), adjoint_mod(f, k.m1, k.m2, q), q);
    const i64 tp = qp == 1 ? 0 : mulmod(-mod_inverse(4 * f.det(), qp), adjoint_mod(f, k.m1p, k.m2p, qp), qp);

    std::vector<i64> units, units_p, inv, inv_p;
    for (i64 a = 1; a <= qn; ++a)
        if (std::gcd(a, qn) == 1) { units.push_back(a); inv.push_back(qn == 1 ? 0 : mod_inverse(a, qn)); }
    for (i64 a = 1; a <= qpn; ++a)
        if (std::gcd(a, qpn) == 1) { units_p.push_back(a); inv_p.push_back(qpn == 1 ? 0 : mod_inverse(a, qpn)); }

    FrakSResult res;
    KahanSum acc;
    const auto divs = arith::divisors(static_cast<arith::u64>(q));
    const auto divs_p = arith::divisors(static_cast<arith::u64>(qp));
    for (std::size_t i = 0; i < units.size(); ++i) {
        for (std::size_t j = 0; j < units_p.size(); ++j) {
            const i64 lhs = k.sign * (inv[i] * k.q2p - inv_p[j] * k.q2);
            if (mod(lhs + k.m, rho) != 0) continue;
            double w = 0, wp = 0;
            for (auto du : divs) {
                const i64 d = static_cast<i64>(du);
                if (mod(k.n * units[i] - t, d) == 0)
                    w += static_cast<double>(d) * arith::mobius(static_cast<arith::u64>(q / d));
            }
            if (w == 0) continue;
            for (auto du : divs_p) {
                const i64 d = static_cast<i64>(du);
                if (mod(k.n * units_p[j] - tp, d) == 0)
                    wp += static_cast<double>(d) * arith::mobius(static_cast<arith::u64>(qp / d));
            }
            if (wp == 0) continue;
            ++res.admissible_pairs;
            if (k.m == 0 && (k.q2 != k.q2p || units[i] != units_p[j])) ++res.case_one_counterexamples;
            acc.add(w * wp);
        }
    }
    res.value = closed_amplitude(f, q) * closed_amplitude(f, qp) * acc.value();
    return res;
}

cplx frakS_via_j(const CharSumKey& k, const QuadraticForm& f) {
    k.validate();
    const i64 q = k.q(), qp = k.qp(), rho = k.rho();
    KahanComplex acc;
    RootTable e(rho);
    for (i64 j = 0; j < rho; ++j) {
        cplx c = char_C1_reduced(f, k.m1, k.m2, j, k.n, q, k.sign);
        cplx cp = char_C1_reduced(f, k.m1p, k.m2p, j, k.n, qp, k.sign);
        acc += e(k.m * j) * c * std::conj(cp);
    }
    return acc.value() / static_cast<double>(rho);
}

} // namespace trisum::expsums
