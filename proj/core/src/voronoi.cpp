#include "trisum/voronoi.hpp"
#include "trisum/arith.hpp"
#include "trisum/constants.hpp"
#include "trisum/errors.hpp"
#include "trisum/expsums.hpp"
#include "trisum/sieve.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace trisum::voronoi {

namespace {

struct DivisorLogs {
    double d;       // d(n1)
    double sum_log; // sum_{l | n1} log l
    double sum_log2;
};

DivisorLogs divisor_logs(i64 n1) {
    DivisorLogs r{0, 0, 0};
    for (auto l : arith::divisors(static_cast<arith::u64>(n1))) {
        const double lg = std::log(static_cast<double>(l));
        r.d += 1;
        r.sum_log += lg;
        r.sum_log2 += lg * lg;
    }
    return r;
}

void check_args(i64 n1, i64 q) {
    if (n1 < 1 || q < 1) throw DomainError("P polynomials: arguments must be positive");
}

} // namespace

double P1(i64 n1, i64 q) {
    check_args(n1, q);
    const double g = Constants::euler_gamma;
    const auto dl = divisor_logs(n1);
    return 5.0 / 3.0 * std::log(double(n1)) - 3.0 * std::log(double(q)) + 3.0 * g - dl.sum_log / (3.0 * dl.d);
}

double P2(i64 n1, i64 q) {
    check_args(n1, q);
    const double g = Constants::euler_gamma, g1 = Constants::stieltjes_gamma1;
    const double ln = std::log(double(n1)), lq = std::log(double(q));
    const auto dl = divisor_logs(n1);
    return ln * ln - 5.0 * lq * ln + 4.5 * lq * lq + 3.0 * g * g - 3.0 * g1 + 7.0 * g * ln - 9.0 * g * lq +
           ((ln + lq - 5.0 * g) * dl.sum_log - 1.5 * dl.sum_log2) / dl.d;
}

PPair P_polynomials(i64 n1, i64 q) { return {P1(n1, q), P2(n1, q)}; }

double D3Coefficients::operator()(std::uint64_t n, std::uint64_t m) const {
    if (n == 0 || m == 0) throw DomainError("B(n, m): arguments must be positive");
    double s = 0;
    for (auto m1 : arith::divisors(n))
        for (auto m2 : arith::divisors(n / m1)) s += static_cast<double>(arith::sigma00_fast(n / (m1 * m2), m));
    return s;
}

double GL3Coefficients::operator()(std::uint64_t, std::uint64_t) const {
    throw DomainError("GL(3) coefficients: no Hecke-Maass data available");
}

cplx voronoi_lhs(const BumpFunction& h, i64 a, i64 q) {
    if (q < 1) throw DomainError("voronoi_lhs: q must be positive");
    if (std::gcd(arith::mod(a, q), q) != 1 && q != 1) throw DomainError("voronoi_lhs: gcd(a, q) must be 1");
    if (h.is_zero()) return 0.0;
    const auto n_lo = static_cast<std::uint64_t>(std::max(1.0, std::ceil(h.lo())));
    const auto n_hi = static_cast<std::uint64_t>(std::floor(h.hi()));
    const auto table = arith::D3Table::cached(n_hi);
    KahanComplex acc;
    for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
        const double w = h(static_cast<double>(n));
        if (w == 0) continue;
        acc += static_cast<double>(table(n)) * w * e_frac(static_cast<i64>((static_cast<__int128>(a) * n) % q), q);
    }
    return acc.value();
}

namespace {

std::array<cplx, 3> log_moments(const BumpFunction& h) {
    return {osc::mellin_logj(h, 0, 1.0), osc::mellin_logj(h, 1, 1.0), osc::mellin_logj(h, 2, 1.0)};
}

std::array<cplx, 3> main_terms_from(const std::array<cplx, 3>& mom, i64 a, i64 q, double scale) {
    const i64 ai = q == 1 ? 0 : arith::mod_inverse(a, q);
    KahanComplex t0, t1, t2;
    for (auto nu : arith::divisors(static_cast<arith::u64>(q))) {
        const i64 n1 = static_cast<i64>(nu);
        const cplx w = static_cast<double>(n1) * static_cast<double>(arith::num_divisors(nu)) *
                       expsums::kloosterman(ai, 0, q / n1);
        t0 += w * P2(n1, q);
        t1 += w * P1(n1, q);
        t2 += w;
    }
    const double pre = scale / (static_cast<double>(q) * q);
    return {pre * mom[0] * t0.value(), pre * mom[1] * t1.value(), 0.5 * pre * mom[2] * t2.value()};
}

// Smallest-prime-factor table for fast B(n1, n2).
std::vector<std::uint32_t> spf_table(std::uint64_t n) {
    std::vector<std::uint32_t> spf(n + 1, 0);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (spf[i]) continue;
        for (std::uint64_t j = i; j <= n; j += i)
            if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

// sigma00(i, m) from the factorization of m.
double sigma00_spf(std::uint64_t i, std::uint64_t m, const std::vector<std::uint32_t>& spf) {
    double r = 1;
    while (m > 1) {
        const std::uint64_t p = spf[m];
        int e = 0;
        while (m % p == 0) { m /= p; ++e; }
        r *= (i % p == 0) ? (e + 1) : static_cast<double>(arith::d3_prime_power(e));
    }
    return r;
}

} // namespace

cplx main_terms_formula(const BumpFunction& h, i64 a, i64 q, double scale) {
    auto t = main_terms_from(log_moments(h), a, q, scale);
    return t[0] + t[1] + t[2];
}

VoronoiEngine::VoronoiEngine(const BumpFunction& h, i64 q_max, const VoronoiOptions& opt)
    : h_(h), opt_(opt), q_max_(q_max) {
    if (q_max < 1) throw DomainError("VoronoiEngine: q_max must be positive");
    if (h.is_zero()) return;
    const double y_min = 0.5 / (static_cast<double>(q_max) * q_max * q_max);
    const double y_max = 1.05 * opt.y_cut / h.lo();
    table_ = std::make_unique<osc::HTable>(h, y_min, y_max, opt.contour);
    moments_ = log_moments(h);
}

VoronoiRHS VoronoiEngine::rhs(i64 a, i64 q, const CoefficientOracle& oracle) const {
    if (q < 1 || q > q_max_) throw DomainError("voronoi_rhs: q outside engine range");
    if (std::gcd(arith::mod(a, q), q) != 1 && q != 1) throw DomainError("voronoi_rhs: gcd(a, q) must be 1");
    VoronoiRHS out;
    if (!table_) return out;
    const i64 ai = q == 1 ? 0 : arith::mod_inverse(a, q);
    const double q3 = static_cast<double>(q) * q * q;
    const bool is_d3 = dynamic_cast<const D3Coefficients*>(&oracle) != nullptr;
    const double y_top = opt_.y_cut / h_.lo();
    const auto n2_cap = static_cast<std::uint64_t>(std::floor(y_top * q3));
    const auto spf = is_d3 ? spf_table(n2_cap + 1) : std::vector<std::uint32_t>{};
    KahanComplex dual;
    for (auto nu : arith::divisors(static_cast<arith::u64>(q))) {
        const i64 n1 = static_cast<i64>(nu);
        const i64 qn = q / n1;
        std::vector<cplx> s_plus(qn), s_minus(qn);
        for (i64 b = 0; b < qn; ++b) {
            s_plus[b] = expsums::kloosterman(ai, b, qn);
            s_minus[b] = expsums::kloosterman(ai, -b, qn);
        }
        // m1 | n1, m2 | n1/m1: multiset of first arguments of sigma00
        std::vector<std::uint64_t> firsts;
        for (auto m1 : arith::divisors(nu))
            for (auto m2 : arith::divisors(nu / m1)) firsts.push_back(nu / (m1 * m2));
        const double n1sq = static_cast<double>(n1) * n1;
        const auto n2_max = static_cast<std::uint64_t>(std::floor(y_top * q3 / n1sq));
        double running = 0;
        int quiet = 0;
        KahanComplex part;
        for (std::uint64_t n2 = 1; n2 <= n2_max; ++n2) {
            const double y = n1sq * static_cast<double>(n2) / q3;
            double B = 0;
            if (is_d3) {
                for (auto f : firsts) B += sigma00_spf(f, n2, spf);
            } else {
                B = oracle(nu, n2);
            }
            const cplx sp = s_plus[n2 % qn], sm = s_minus[n2 % qn];
            const cplx term = B / (static_cast<double>(n1) * n2) *
                              (sp * table_->Hpm(+1, y) + sm * table_->Hpm(-1, y));
            part += term;
            ++out.n2_terms;
            out.y_max = std::max(out.y_max, y);
            running = std::abs(part.value());
            if (std::abs(term) < opt_.tail_rel * running) {
                if (++quiet >= opt_.quiet_terms && y * h_.lo() > 1e3) break;
            } else {
                quiet = 0;
            }
        }
        dual += part.value();
    }
    out.dual = static_cast<double>(q) * dual.value();
    out.main_terms = main_terms_from(moments_, a, q, opt_.main_scale);
    out.total = out.dual + out.main_terms[0] + out.main_terms[1] + out.main_terms[2];
    return out;
}

VoronoiRHS voronoi_rhs(const BumpFunction& h, i64 a, i64 q, const CoefficientOracle& oracle,
                       const VoronoiOptions& opt) {
    VoronoiEngine eng(h, q, opt);
    return eng.rhs(a, q, oracle);
}

VerificationReport verify_voronoi(const VoronoiEngine& eng, i64 a, i64 q, double tol) {
    VerificationReport rep;
    rep.identity = "voronoi_d3";
    rep.direct = voronoi_lhs(eng.bump(), a, q);
    const auto r = eng.rhs(a, q, D3Coefficients{});
    rep.dual = r.total;
    rep.abs_err = std::abs(rep.direct - rep.dual);
    rep.rel_err = rep.abs_err / (std::abs(rep.direct) + static_cast<double>(q));
    rep.tolerance = tol;
    rep.pass = rep.rel_err <= tol;
    rep.metadata["q"] = static_cast<double>(q);
    rep.metadata["a"] = static_cast<double>(a);
    rep.metadata["n2_terms"] = static_cast<double>(r.n2_terms);
    rep.metadata["y_max"] = r.y_max;
    rep.main_terms.assign(r.main_terms.begin(), r.main_terms.end());
    return rep;
}

VerificationReport verify_voronoi(const BumpFunction& h, i64 a, i64 q, double tol, const VoronoiOptions& opt) {
    VoronoiEngine eng(h, q, opt);
    return verify_voronoi(eng, a, q, tol);
}

namespace {

// Hurwitz zeta by Euler-Maclaurin.
cplx hurwitz_zeta(cplx s, double alpha) {
    constexpr double kB[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6};
    const int n = 30;
    KahanComplex acc;
    for (int k = 0; k < n; ++k) acc += std::pow(k + alpha, -s);
    const double a = n + alpha;
    acc += std::pow(a, 1.0 - s) / (s - 1.0);
    acc += 0.5 * std::pow(a, -s);
    cplx poch = s; // s (s+1) ... (s+2j-2)
    double fact = 2; // (2j)!
    for (int j = 1; j <= 7; ++j) {
        acc += kB[j - 1] / fact * poch * std::pow(a, -s - 2.0 * j + 1.0);
        poch *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        fact *= (2.0 * j + 1) * (2.0 * j + 2);
    }
    return acc.value();
}

} // namespace

cplx main_terms_residue(const BumpFunction& h, i64 a, i64 q) {
    if (q < 1) throw DomainError("main_terms_residue: q must be positive");
    const int points = 64;
    const double r = 0.5;
    RootTable e(q);
    KahanComplex acc;
    for (int k = 0; k < points; ++k) {
        const cplx z = std::polar(r, 2 * std::numbers::pi * (k + 0.5) / points);
        const cplx s = 1.0 + z;
        std::vector<cplx> zb(q);
        for (i64 b = 1; b <= q; ++b) zb[b - 1] = hurwitz_zeta(s, static_cast<double>(b) / q);
        KahanComplex d;
        for (i64 b1 = 1; b1 <= q; ++b1)
            for (i64 b2 = 1; b2 <= q; ++b2) {
                const cplx z12 = zb[b1 - 1] * zb[b2 - 1];
                for (i64 b3 = 1; b3 <= q; ++b3)
                    d += e(a * ((b1 * b2 % q) * b3 % q)) * z12 * zb[b3 - 1];
            }
        const cplx D = std::pow(static_cast<double>(q), -3.0 * s) * d.value();
        acc += D * osc::mellin_logj(h, 0, s) * z;
    }
    return acc.value() / static_cast<double>(points);
}

} // namespace trisum::voronoi
