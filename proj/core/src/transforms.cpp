#include "trisum/transforms.hpp"
#include "trisum/parallel.hpp"
#include "trisum/cgamma.hpp"
#include "trisum/errors.hpp"
#include "trisum/quadrature.hpp"

#include <Eigen/Dense>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <limits>

namespace trisum::osc {

namespace {

constexpr double kPi = std::numbers::pi;
const double kPi3 = kPi * kPi * kPi;
// Largest truncation height searched; the probe samples resolve frequencies up to kProbeT + 3000.
constexpr double kProbeT = 20000;

// Samples of h(e^v) on a trapezoid grid in v = log x, for Mellin transforms at many s.
class LogMellin {
public:
    LogMellin(const BumpFunction& h, double t_cap) {
        if (h.is_zero()) return;
        v0_ = std::log(h.lo());
        const double v1 = std::log(h.hi());
        const int n = static_cast<int>(std::ceil((t_cap + 3000.0) * (v1 - v0_) / (2 * kPi))) + 64;
        dv_ = (v1 - v0_) / n;
        v_.resize(n + 1);
        f_.resize(n + 1);
        for (int k = 0; k <= n; ++k) {
            v_[k] = v0_ + k * dv_;
            f_[k] = h(std::exp(v_[k])) * dv_;
        }
    }

    bool empty() const { return v_.empty(); }


    // int h(x) x^{w-1} dx = int h(e^v) e^{w v} dv
    cplx at(cplx w) const {
        KahanComplex acc;
        for (std::size_t k = 0; k < v_.size(); ++k) {
            if (f_[k] == 0) continue;
            acc += f_[k] * std::exp(w * v_[k]);
        }
        return acc.value();
    }

    // Values at w_j = w0 - i (t0 + j dt), j = 0..n-1.
    std::vector<cplx> on_grid(double re_w, double t0, double dt, std::size_t n) const {
        std::vector<cplx> out(n, 0.0);
        if (empty()) return out;
        const std::size_t reseed = 512;
        for (std::size_t k = 0; k < v_.size(); ++k) {
            if (f_[k] == 0) continue;
            const double amp = f_[k] * std::exp(re_w * v_[k]);
            const cplx step = std::polar(1.0, -dt * v_[k]);
            cplx cur;
            for (std::size_t j = 0; j < n; ++j) {
                if (j % reseed == 0) cur = std::polar(amp, -(t0 + j * dt) * v_[k]);
                out[j] += cur;
                cur *= step;
            }
        }
        return out;
    }

private:
    double v0_ = 0, dv_ = 0;
    std::vector<double> v_, f_;
};

cplx log_gamma_ratio(int l, cplx s, const LanglandsParams& p, Variant v) {
    if (v == Variant::H) {
        return 3.0 * (log_gamma((1.0 + s + 2.0 * l) / 2.0) - log_gamma(-s / 2.0));
    }
    cplx r = 0.0;
    for (const cplx& a : p.alpha) r += log_gamma((1.0 + s + a + double(l)) / 2.0) - log_gamma((-s - a + double(l)) / 2.0);
    return r;
}

// H_l is integrated on Re s = sigma - l, where the Gamma ratio stops growing for sigma = -1/2.
double line(int l, Variant v, double sigma) { return v == Variant::H ? sigma - l : sigma; }

void check_sigma(int l, const LanglandsParams& p, Variant v, double sigma) {
    if (v == Variant::H) {
        if (!(line(l, v, sigma) > -1.0 - 2.0 * l)) throw DomainError("H transform: sigma must exceed -1-l");
    } else {
        double m = -1e300;
        for (const cplx& a : p.alpha) m = std::max(m, -a.real());
        if (!(sigma > -1.0 + m)) throw DomainError("G transform: sigma below the admissible half-plane");
    }
}

// Integrand without (pi^3 y)^{-s}: ratio(s) * Mellin factor, s = sigma + i t.
struct KernelSampler {
    int l;
    LanglandsParams p;
    Variant v;
    double sigma;
    const LogMellin* mel;

    cplx mellin_arg_shift() const { return v == Variant::H ? double(l) : 0.0; }

    cplx at(double t) const {
        const cplx s(sigma, t);
        const cplx w = -s - mellin_arg_shift();
        return std::exp(log_gamma_ratio(l, s, p, v)) * mel->at(w);
    }

    // Smallest T with |F(t)| < tail * max|F| for t >= T, checked on a coarse grid both ways.
    // Samples at the round-off level of the Mellin factor also count as negligible; that level,
    // relative to the Gamma ratio, is read off the far tail where the exact transform is far smaller.
    double cutoff(double tail) const {
        auto ratio = [&](double t) { return std::abs(std::exp(log_gamma_ratio(l, cplx(sigma, t), p, v))); };
        auto mag = [&](double t) { return std::max(std::abs(at(t)), std::abs(at(-t))); };
        double noise = 0;
        for (double t = 0.75 * kProbeT; t < kProbeT; t += 4.0) noise = std::max(noise, mag(t) / ratio(t));
        double peak = 0, last_big = 0;
        int quiet = 0;
        for (double t = 0; t < kProbeT; t += 4.0) {
            const double m = mag(t);
            peak = std::max(peak, m);
            if (m > tail * peak && m > 2.0 * noise * ratio(t)) {
                last_big = t;
                quiet = 0;
            } else if (++quiet > 40) {
                break;
            }
        }
        if (quiet <= 40 || noise * ratio(kProbeT) > 1e-8 * peak)
            throw QuadratureFailure("contour integrand does not decay below the truncation threshold", 0.0, INFINITY);
        return last_big + 8.0;
    }
};

} // namespace

LanglandsParams langlands_from_nu(cplx nu1, cplx nu2) {
    LanglandsParams p;
    p.nu1 = nu1;
    p.nu2 = nu2;
    p.alpha = {-nu1 - 2.0 * nu2 + 1.0, -nu1 + nu2, 2.0 * nu1 + nu2 - 1.0};
    p.within_jacquet_shalika = true;
    for (const auto& a : p.alpha)
        if (std::abs(a.real()) >= 0.5) p.within_jacquet_shalika = false;
    return p;
}

LanglandsParams divisor_params() { return langlands_from_nu(1.0 / 3, 1.0 / 3); }

cplx mellin_logj(const BumpFunction& h, int j, cplx s) {
    if (j < 0 || j > 2) throw DomainError("mellin_logj: j must be 0, 1 or 2");
    if (h.is_zero()) return 0.0;
    const double v0 = std::log(h.lo()), v1 = std::log(h.hi());
    quad::QuadOptions opt;
    opt.abs_tol = 1e-13;
    opt.rel_tol = 1e-12;
    opt.initial_panels = quad::panels_for_frequency(v0, v1, std::abs(s.imag()) / (2 * kPi)) + 4;
    auto f = [&](double v) {
        const double x = std::exp(v);
        const double hv = h(x);
        if (hv == 0) return cplx(0.0);
        return hv * std::exp(s * v) * std::pow(v, j);
    };
    return quad::adaptive_quad(f, v0, v1, opt).value;
}

TransformValue G_transform(int l, double y, const LanglandsParams& p, const BumpFunction& h, Variant v,
                           const ContourOptions& opt) {
    if (l != 0 && l != 1) throw DomainError("G_transform: l must be 0 or 1");
    if (!(y > 0)) throw DomainError("G_transform: y must be positive");
    check_sigma(l, p, v, opt.sigma);
    if (h.is_zero()) return {0.0, 0.0};
    const double sigma = line(l, v, opt.sigma);
    LogMellin probe(h, kProbeT);
    const double T = KernelSampler{l, p, v, sigma, &probe}.cutoff(opt.tail);
    LogMellin mel(h, T);
    KernelSampler ks{l, p, v, sigma, &mel};
    const double xi = std::log(kPi3 * y);
    const std::size_t n = static_cast<std::size_t>(std::ceil(2 * T / opt.dt)) + 1;
    const double t0 = -opt.dt * (n - 1) / 2.0;
    const cplx shift = ks.mellin_arg_shift();
    auto mv = mel.on_grid((-sigma - shift).real(), t0, opt.dt, n);
    KahanComplex full, half;
    for (std::size_t j = 0; j < n; ++j) {
        const double t = t0 + j * opt.dt;
        const cplx s(sigma, t);
        const cplx term = std::exp(log_gamma_ratio(l, s, p, v) - s * xi) * mv[j];
        full += term;
        if (j % 2 == 0) half += term;
    }
    const cplx a = full.value() * opt.dt / (2 * kPi);
    const cplx b = half.value() * (2 * opt.dt) / (2 * kPi);
    return {a, std::abs(a - b)};
}

TransformValue G_pm(int sign, double y, const LanglandsParams& p, const BumpFunction& h, Variant v,
                    const ContourOptions& opt) {
    const cplx I(0, 1);
    auto g0 = G_transform(0, y, p, h, v, opt);
    auto g1 = G_transform(1, y, p, h, v, opt);
    cplx second = g1.value;
    double e1 = g1.error;
    if (v == Variant::H) {
        second /= kPi3 * y;
        e1 /= kPi3 * y;
    }
    const double pre = 1.0 / (2 * std::pow(kPi, 1.5));
    return {pre * (g0.value - double(sign) * I * second), pre * (g0.error + e1)};
}

HTable::HTable(const BumpFunction& h, double y_min, double y_max, const ContourOptions& opt)
    : y_min_(y_min), y_max_(y_max), sigma_(opt.sigma) {
    if (!(y_min > 0 && y_max > y_min)) throw DomainError("HTable: bad y range");
    const double xi_lo = std::log(kPi3 * y_min) - 1.0, xi_hi = std::log(kPi3 * y_max) + 1.0;
    LogMellin probe(h, kProbeT);
    const LanglandsParams p = divisor_params();
    double T = 0;
    for (int l = 0; l < 2; ++l) {
        check_sigma(l, p, Variant::H, opt.sigma);
        T = std::max(T, KernelSampler{l, p, Variant::H, line(l, Variant::H, opt.sigma), &probe}.cutoff(opt.tail));
    }
    LogMellin mel(h, T);
    t_max_ = T;
    double dt = opt.dt;
    // Period 2 pi / dt must exceed the tabulated range with room for aliasing decay.
    while (2 * kPi / dt < (xi_hi - xi_lo) + 100.0) dt *= 0.5;
    const std::size_t nt = static_cast<std::size_t>(std::ceil(2 * T / dt)) + 1;
    const double t0 = -dt * (nt - 1) / 2.0;
    // Grid spacing in xi small enough that 10-point Lagrange resolves frequency T.
    const double dxi_target = 0.25 / T;
    std::size_t nfft = 1;
    while (nfft < nt || 2 * kPi / (nfft * dt) > dxi_target) nfft <<= 1;
    dxi_ = 2 * kPi / (nfft * dt);
    xi0_ = xi_lo - 8 * dxi_;
    const std::size_t keep = static_cast<std::size_t>(std::ceil((xi_hi - xi0_) / dxi_)) + 16;
    if (keep > nfft) throw ResourceError("HTable: requested range exceeds one period");

    for (int l = 0; l < 2; ++l) {
        const double sigma = line(l, Variant::H, opt.sigma);
        auto mv = mel.on_grid(-sigma - l, t0, dt, nt);
        fftw_complex* buf = fftw_alloc_complex(nfft);
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lk(fftw_planner_mutex());
            plan = fftw_plan_dft_1d(static_cast<int>(nfft), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        }
        for (std::size_t k = 0; k < nfft; ++k) { buf[k][0] = 0; buf[k][1] = 0; }
        for (std::size_t k = 0; k < nt; ++k) {
            const double t = t0 + k * dt;
            const cplx s(sigma, t);
            const cplx val = std::exp(log_gamma_ratio(l, s, p, Variant::H)) * mv[k] *
                             std::polar(1.0, -static_cast<double>(k) * dt * xi0_);
            buf[k][0] = val.real();
            buf[k][1] = val.imag();
        }
        fftw_execute(plan);
        auto& tab = l == 0 ? h0_ : h1_;
        tab.resize(keep);
        for (std::size_t j = 0; j < keep; ++j) {
            const double xi = xi0_ + j * dxi_;
            const cplx v(buf[j][0], buf[j][1]);
            tab[j] = v * std::polar(dt / (2 * kPi), -t0 * xi);
        }
        {
            std::lock_guard<std::mutex> lk(fftw_planner_mutex());
            fftw_destroy_plan(plan);
        }
        fftw_free(buf);
    }
}

cplx HTable::interp(const std::vector<cplx>& tab, double sigma, double y) const {
    if (y < y_min_ || y > y_max_) throw DomainError("HTable: y outside tabulated range");
    const double xi = std::log(kPi3 * y);
    const double pos = (xi - xi0_) / dxi_;
    const long base = static_cast<long>(std::floor(pos)) - 4;
    const double u = pos - base;
    // Barycentric weights for nodes 0..9 on a unit grid.
    static const double w[10] = {1.0 / 362880, -9.0 / 362880, 36.0 / 362880, -84.0 / 362880, 126.0 / 362880,
                                 -126.0 / 362880, 84.0 / 362880, -36.0 / 362880, 9.0 / 362880, -1.0 / 362880};
    cplx num = 0.0;
    double den = 0;
    for (int i = 0; i < 10; ++i) {
        const double d = u - i;
        if (d == 0) return tab[base + i] * std::exp(-sigma * xi);
        const double c = w[i] / d;
        num += c * tab[base + i];
        den += c;
    }
    return num / den * std::exp(-sigma * xi);
}

cplx HTable::H0(double y) const { return interp(h0_, sigma_, y); }
cplx HTable::H1(double y) const { return interp(h1_, sigma_ - 1, y); }

cplx HTable::Hpm(int sign, double y) const {
    const cplx I(0, 1);
    return (H0(y) - double(sign) * I * H1(y) / (kPi3 * y)) / (2 * std::pow(kPi, 1.5));
}

AsymptoticCoefficients asymptotic_coefficients(int k, const LanglandsParams& p) {
    if (k < 1) throw DomainError("asymptotic_coefficients: k must be positive");
    for (const auto& a : p.alpha)
        if (std::abs(a) > 1e-15) throw DomainError("asymptotic_coefficients: only alpha = (0,0,0) is supported");
    using C = std::complex<double>;
    const C omega(0, 1);
    std::vector<double> roots;
    for (const auto& a : p.alpha) {
        roots.push_back(3.0 * (1.0 + a.real()));
        roots.push_back(3.0 * (2.0 + a.real()));
    }
    // prod (D + 6 omega rho - r_i) applied to rho^nu, as coefficients of rho^{nu+i}.
    auto apply = [&](double nu) {
        std::vector<C> c(7, 0.0);
        c[0] = 1.0;
        for (double r : roots) {
            std::vector<C> nc(7, 0.0);
            for (int i = 0; i < 7; ++i) {
                if (c[i] == 0.0) continue;
                nc[i] += c[i] * (nu + i - r);
                if (i + 1 < 7) nc[i + 1] += 6.0 * omega * c[i];
            }
            c = nc;
        }
        return c;
    };
    const C t50 = apply(0.0)[5], t51 = apply(1.0)[5];
    const C mu_c = -t50 / (t51 - t50);
    const double mu = mu_c.real();
    std::vector<C> a(k, 0.0);
    a[0] = 1.0;
    for (int n = 1; n < k; ++n) {
        C s = 0.0;
        for (int i = 0; i <= 4; ++i) {
            const int idx = n - 5 + i;
            if (idx < 0) continue;
            s += a[idx] * apply(mu - idx)[i];
        }
        a[n] = -s / apply(mu - n)[5];
    }
    const double d1 = -2.0 / std::sqrt(3.0 * kPi);
    const C cc = C(0, -d1 / 2.0);
    AsymptoticCoefficients out;
    out.exponent = mu;
    for (int j = 0; j < k; ++j) {
        const C z = cc * a[j];
        out.c.push_back(2.0 * z.real());
        out.d.push_back(-2.0 * z.imag());
    }
    out.c[0] = 0.0;
    return out;
}

namespace {

// pi^3 y int g(z) trig(6 pi (yz)^{1/3}) (pi^3 y z)^{-j/3} dz
double expansion_basis(const BumpFunction& g, double y, int j, bool use_sin) {
    quad::QuadOptions opt;
    opt.abs_tol = 1e-13 * (g.hi() - g.lo()) * std::pow(kPi3 * y * g.lo(), -j / 3.0);
    opt.rel_tol = 1e-12;
    opt.max_panels = 20000;
    const double freq = std::cbrt(y) * std::pow(g.lo(), -2.0 / 3.0);
    opt.initial_panels = quad::panels_for_frequency(g.lo(), g.hi(), freq) * 2 + 4;
    auto f = [&](double z) {
        const double gz = g(z);
        if (gz == 0) return cplx(0.0);
        const double ph = 6 * kPi * std::cbrt(y * z);
        return cplx(gz * (use_sin ? std::sin(ph) : std::cos(ph)) * std::pow(kPi3 * y * z, -j / 3.0), 0.0);
    };
    return kPi3 * y * quad::adaptive_quad(f, g.lo(), g.hi(), opt).value.real();
}

} // namespace

AsymptoticCoefficients fit_asymptotic_coefficients(const BumpFunction& g, const std::vector<double>& ys, int k) {
    if (k < 2) throw DomainError("fit_asymptotic_coefficients: k must be at least 2");
    const int unknowns = 2 * (k - 1);
    Eigen::MatrixXd A(ys.size(), unknowns);
    Eigen::VectorXd b(ys.size());
    const double d1 = -2.0 / std::sqrt(3.0 * kPi);
    for (std::size_t r = 0; r < ys.size(); ++r) {
        const double y = ys[r];
        const double target = G_transform(0, y, divisor_params(), g, Variant::H).value.real();
        const double lead = d1 * expansion_basis(g, y, 1, true);
        const double scale = 1.0 / std::max(std::abs(target), 1e-300);
        b(r) = (target - lead) * scale;
        for (int j = 2; j <= k; ++j) {
            A(r, 2 * (j - 2)) = expansion_basis(g, y, j, false) * scale;
            A(r, 2 * (j - 2) + 1) = expansion_basis(g, y, j, true) * scale;
        }
    }
    Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
    AsymptoticCoefficients out;
    out.c.push_back(0.0);
    out.d.push_back(d1);
    for (int j = 2; j <= k; ++j) {
        out.c.push_back(x(2 * (j - 2)));
        out.d.push_back(x(2 * (j - 2) + 1));
    }
    return out;
}

TransformValue G0_asymptotic(double y, const BumpFunction& g, int k, const LanglandsParams& p,
                             const AsymptoticCoefficients* coeffs) {
    if (k < 1) throw DomainError("G0_asymptotic: k must be positive");
    if (g.is_zero()) return {0.0, 0.0};
    if (y * g.lo() < 10.0) throw DomainError("G0_asymptotic: requires y M >= 10");
    AsymptoticCoefficients own;
    if (!coeffs) {
        own = asymptotic_coefficients(k, p);
        coeffs = &own;
    }
    if (static_cast<int>(coeffs->c.size()) < k) throw DomainError("G0_asymptotic: not enough coefficients");
    double total = 0;
    for (int j = 1; j <= k; ++j) {
        if (coeffs->c[j - 1] != 0) total += coeffs->c[j - 1] * expansion_basis(g, y, j, false);
        if (coeffs->d[j - 1] != 0) total += coeffs->d[j - 1] * expansion_basis(g, y, j, true);
    }
    return {total, 0.0};
}

} // namespace trisum::osc
