#include "trisum/phase_integrals.hpp"
#include "trisum/errors.hpp"
#include "trisum/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>

namespace trisum::phase {

namespace {

constexpr double kPi = std::numbers::pi;

double prefactor() { return -2.0 * kPi * kPi * kPi / std::sqrt(3.0 * kPi); }

// Gauss-Legendre rule on [a, b] with enough panels for `cycles` oscillations.
struct Rule {
    std::vector<double> x, w;
};

Rule panel_rule(double a, double b, double cycles, int per_panel = 16) {
    const auto& g = quad::gauss_legendre(per_panel);
    const int panels = std::max(16, static_cast<int>(std::ceil(cycles)) + 2);
    const double h = (b - a) / panels;
    Rule r;
    for (int p = 0; p < panels; ++p)
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            r.x.push_back(a + (p + 0.5 + 0.5 * g.x[i]) * h);
            r.w.push_back(0.5 * h * g.w[i]);
        }
    return r;
}

double grad_bound(const QuadraticForm& f, double lo, double hi) {
    const double m = std::max(std::abs(lo), std::abs(hi));
    return 2.0 * (std::abs(f.A) + std::abs(f.B) + 2.0 * std::abs(f.C)) * m;
}

void check_q(i64 q) {
    if (q < 1) throw DomainError("phase integrals: q must be positive");
}

} // namespace

PhaseSetup make_setup(const QuadraticForm& f, double X) { return make_setup(f, X, X); }

PhaseSetup make_setup(const QuadraticForm& f, double X, double Qcal) {
    if (!(X > 0) || !(Qcal > 0)) throw DomainError("phase setup: X and Qcal must be positive");
    PhaseSetup ps;
    ps.form = f;
    ps.X = X;
    ps.Qcal = Qcal;
    return ps;
}

double K_threshold(i64 q, double X, double u) {
    const double qd = static_cast<double>(q);
    return qd * qd * qd / (X * X) + X * std::abs(u * u * u);
}

cplx I_pm(int sign, double n2m, double u, i64 q, const PhaseSetup& ps) {
    check_q(q);
    if (ps.V.is_zero()) return 0.0;
    const double qd = static_cast<double>(q), X = ps.X;
    const double a = X * X * u / (qd * ps.Qcal);
    const double b = sign * 3.0 * std::cbrt(X * X * n2m) / qd;
    const double lo = ps.V.lo(), hi = ps.V.hi();
    const double freq = std::abs(a) + std::abs(b) / (3.0 * std::cbrt(lo * lo));
    // e() of a phase of size P carries relative noise eps * 2 pi P.
    const double phase_max = std::abs(a) * hi + std::abs(b) * std::cbrt(hi);
    const double mass = (hi - lo) / std::cbrt(lo);
    quad::QuadOptions opt;
    opt.abs_tol = std::max(1e-13, 4 * std::numeric_limits<double>::epsilon() * 2 * std::numbers::pi * phase_max * mass);
    opt.rel_tol = 1e-11;
    opt.initial_panels = quad::panels_for_frequency(lo, hi, freq) + 4;
    opt.max_panels = std::max(20000, 32 * opt.initial_panels);
    auto res = quad::adaptive_quad(
        [&](double z) { return ps.V(z) / std::cbrt(z) * e_real(a * z + b * std::cbrt(z)); }, lo, hi, opt);
    return prefactor() * static_cast<double>(sign) * res.value;
}

cplx J_transform(i64 m1, i64 m2, double u, i64 q, const PhaseSetup& ps) {
    check_q(q);
    if (ps.W1.is_zero() || ps.W2.is_zero()) return 0.0;
    const double qd = static_cast<double>(q), X = ps.X;
    const double c = u * X * X / (qd * ps.Qcal);
    const double g = grad_bound(ps.form, std::max(ps.W1.hi(), ps.W2.hi()), 0);
    const Rule ru = panel_rule(ps.W1.lo(), ps.W1.hi(),
                               (std::abs(m1) * X / qd + std::abs(c) * g) * (ps.W1.hi() - ps.W1.lo()));
    const Rule rv = panel_rule(ps.W2.lo(), ps.W2.hi(),
                               (std::abs(m2) * X / qd + std::abs(c) * g) * (ps.W2.hi() - ps.W2.lo()));
    KahanComplex acc;
    for (std::size_t i = 0; i < ru.x.size(); ++i) {
        const double w1 = ps.W1(ru.x[i]);
        if (w1 == 0) continue;
        KahanComplex row;
        for (std::size_t j = 0; j < rv.x.size(); ++j) {
            const double w2 = ps.W2(rv.x[j]);
            if (w2 == 0) continue;
            const double ph = -(m1 * X * ru.x[i] + m2 * X * rv.x[j]) / qd - c * ps.form.eval(ru.x[i], rv.x[j]);
            row += rv.w[j] * w2 * e_real(ph);
        }
        acc += ru.w[i] * w1 * row.value();
    }
    return acc.value();
}

JGrid::JGrid(const PhaseSetup& ps, i64 q, double u, int nodes) : ps_(&ps), q_(q) {
    check_q(q);
    if (ps.W1.lo() != ps.W2.lo() || ps.W1.hi() != ps.W2.hi()) throw DomainError("JGrid: W1, W2 must share support");
    const double qd = static_cast<double>(q), X = ps.X;
    const double c = u * X * X / (qd * ps.Qcal);
    const double lo = ps.W1.lo(), hi = ps.W1.hi();
    const double cycles = std::abs(c) * grad_bound(ps.form, hi, 0) * (hi - lo);
    int need = 256;
    while (need < 8 * cycles + 256) need *= 2;
    n_ = std::max(nodes, need);
    const double h = (hi - lo) / n_;
    for (int i = 1; i < n_; ++i) x_.push_back(lo + i * h);
    const auto m = x_.size();
    f_.resize(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        const double w1 = ps.W1(x_[i]);
        for (std::size_t j = 0; j < m; ++j)
            f_[i * m + j] = w1 * ps.W2(x_[j]) * h * h * e_real(-c * ps.form.eval(x_[i], x_[j]));
    }
}

const std::vector<cplx>& JGrid::column(i64 m2) const {
    auto it = cols_.find(m2);
    if (it != cols_.end()) return it->second;
    const auto m = x_.size();
    const double k = -static_cast<double>(m2) * ps_->X / static_cast<double>(q_);
    std::vector<cplx> ph(m), col(m);
    for (std::size_t j = 0; j < m; ++j) ph[j] = e_real(k * x_[j]);
    for (std::size_t i = 0; i < m; ++i) {
        cplx s = 0;
        for (std::size_t j = 0; j < m; ++j) s += f_[i * m + j] * ph[j];
        col[i] = s;
    }
    return cols_.emplace(m2, std::move(col)).first->second;
}

cplx JGrid::operator()(i64 m1, i64 m2) const {
    const auto& col = column(m2);
    const double k = -static_cast<double>(m1) * ps_->X / static_cast<double>(q_);
    KahanComplex acc;
    for (std::size_t i = 0; i < x_.size(); ++i) acc += col[i] * e_real(k * x_[i]);
    return acc.value();
}

namespace {

// Window transform at X^2 r (r in units of Q), rescaled to the scheme's own Q_cal.
struct WindowKernel {
    double scale;
    delta::PsiWindowTransform table;
    WindowKernel(const delta::DeltaScheme& s, i64 q, const PhaseSetup& ps, double r_extent)
        : scale(ps.X * ps.X * s.Q_cal / ps.Qcal), table(s, q, r_extent * scale + 1) {}
    double operator()(double r) const { return std::abs(r) * scale > table.r_max() ? 0.0 : table(r * scale); }
    // Beyond this |r| the table is identically zero.
    double reach() const { return std::min(table.r_max(), table.support()) / scale; }
};

double form_min(const PhaseSetup& ps) {
    const double l = std::min(ps.W1.lo(), ps.W2.lo());
    // positive definite: Q(x, y) >= lambda_min |(x, y)|^2
    const double A = ps.form.A, B = ps.form.B, C = ps.form.C;
    const double lam = 0.5 * (A + B - std::sqrt((A - B) * (A - B) + 4 * C * C));
    return lam * 2 * l * l;
}

double form_max(const PhaseSetup& ps) {
    const double h = std::max(ps.W1.hi(), ps.W2.hi());
    const double A = ps.form.A, B = ps.form.B, C = ps.form.C;
    const double lam = 0.5 * (A + B + std::sqrt((A - B) * (A - B) + 4 * C * C));
    return lam * 2 * h * h;
}

// Scale in Q over which the window kernel changes: the narrowest bump in Delta_q, q Qcal / 2 in r.
double kernel_scale(i64 q, const PhaseSetup& ps) {
    return static_cast<double>(q) * ps.Qcal / (2.0 * ps.X * ps.X);
}

// Phi on a uniform grid in Q, read back by 8-point barycentric interpolation.
class QTable {
public:
    QTable(double lo, double hi, double step, const std::function<cplx(double)>& f) : lo_(lo - 4 * step), h_(step) {
        const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 9;
        v_.resize(n);
        for (std::size_t k = 0; k < n; ++k) v_[k] = f(lo_ + static_cast<double>(k) * h_);
    }
    cplx operator()(double x) const {
        const double t = (x - lo_) / h_;
        auto k0 = static_cast<std::int64_t>(std::floor(t)) - 3;
        k0 = std::clamp<std::int64_t>(k0, 0, static_cast<std::int64_t>(v_.size()) - 8);
        static constexpr double bw[8] = {1, -7, 21, -35, 35, -21, 7, -1};
        cplx num = 0;
        double den = 0;
        for (int i = 0; i < 8; ++i) {
            const double d = t - static_cast<double>(k0 + i);
            if (d == 0) return v_[static_cast<std::size_t>(k0 + i)];
            num += bw[i] / d * v_[static_cast<std::size_t>(k0 + i)];
            den += bw[i] / d;
        }
        return num / den;
    }

private:
    double lo_, h_;
    std::vector<cplx> v_;
};

// iint W1 W2 e(-(m1 X uu + m2 X vv) / q) f(Q(uu, vv)), f varying on the Q-scale `scale`.
cplx plane_integral(i64 m1, i64 m2, i64 q, const PhaseSetup& ps, double scale,
                    const std::function<cplx(double)>& f) {
    const double qd = static_cast<double>(q), X = ps.X;
    const double g = grad_bound(ps.form, std::max(ps.W1.hi(), ps.W2.hi()), 0);
    const Rule ru = panel_rule(ps.W1.lo(), ps.W1.hi(), std::abs(m1) * X / qd + g / scale, 12);
    const Rule rv = panel_rule(ps.W2.lo(), ps.W2.hi(), std::abs(m2) * X / qd + g / scale, 12);
    std::vector<cplx> ev(rv.x.size());
    for (std::size_t j = 0; j < rv.x.size(); ++j) ev[j] = rv.w[j] * ps.W2(rv.x[j]) * e_real(-m2 * X * rv.x[j] / qd);
    KahanComplex acc;
    for (std::size_t i = 0; i < ru.x.size(); ++i) {
        const double w1 = ps.W1(ru.x[i]);
        if (w1 == 0) continue;
        KahanComplex row;
        for (std::size_t j = 0; j < rv.x.size(); ++j)
            if (ev[j] != 0.0) row += ev[j] * f(ps.form.eval(ru.x[i], rv.x[j]));
        acc += ru.w[i] * w1 * e_real(-m1 * X * ru.x[i] / qd) * row.value();
    }
    return acc.value();
}

// Phi(Q) = int V(z) z^{-1/3} e(b z^{1/3}) kernel(Q - z) dz on the Q-range where it can be nonzero.
struct PhiTable {
    double lo, hi;
    std::unique_ptr<QTable> table;
    cplx operator()(double Qv) const { return (Qv < lo || Qv > hi) ? cplx(0) : (*table)(Qv); }
};

PhiTable phi_table(double b, const WindowKernel& ker, i64 q, const PhaseSetup& ps) {
    const double zlo = ps.V.lo(), zhi = ps.V.hi();
    PhiTable t;
    t.lo = std::max(form_min(ps), zlo - ker.reach());
    t.hi = std::min(form_max(ps), zhi + ker.reach());
    if (t.lo >= t.hi) {
        t.lo = 1, t.hi = 0;
        return t;
    }
    const double ks = kernel_scale(q, ps);
    const Rule rz = panel_rule(zlo, zhi, (1.0 / ks + std::abs(b)) * (zhi - zlo), 12);
    std::vector<double> zw(rz.x.size());
    std::vector<cplx> zf(rz.x.size());
    for (std::size_t i = 0; i < rz.x.size(); ++i) {
        const double z = rz.x[i];
        zf[i] = rz.w[i] * ps.V(z) / std::cbrt(z) * e_real(b * std::cbrt(z));
    }
    const double reach = ker.reach();
    t.table = std::make_unique<QTable>(t.lo, t.hi, 0.004, [&](double Qv) {
        KahanComplex acc;
        const auto first = std::lower_bound(rz.x.begin(), rz.x.end(), Qv - reach) - rz.x.begin();
        for (auto i = static_cast<std::size_t>(first); i < rz.x.size() && rz.x[i] < Qv + reach; ++i) {
            const double r = Qv - rz.x[i];
            if (std::abs(r) >= reach || zf[i] == 0.0) continue;
            acc += zf[i] * ker(r);
        }
        return acc.value();
    });
    return t;
}

cplx L_pm_with(int sign, double n2m, i64 m1, i64 m2, const WindowKernel& ker, i64 q, const PhaseSetup& ps) {
    const double b = sign * 3.0 * std::cbrt(ps.X * ps.X * n2m) / static_cast<double>(q);
    const PhiTable phi = phi_table(b, ker, q, ps);
    if (phi.lo >= phi.hi) return 0.0;
    const cplx v = plane_integral(m1, m2, q, ps, 0.1, [&](double Qv) { return phi(Qv); });
    return prefactor() * static_cast<double>(sign) * v;
}

} // namespace

cplx M_integral(i64 m1, i64 m2, i64 q, const PhaseSetup& ps, const delta::DeltaScheme& scheme) {
    check_q(q);
    if (ps.W1.is_zero() || ps.W2.is_zero()) return 0.0;
    const WindowKernel ker(scheme, q, ps, form_max(ps));
    if (form_min(ps) >= ker.reach()) return 0.0;
    return plane_integral(m1, m2, q, ps, kernel_scale(q, ps), [&](double Qv) { return cplx(ker(Qv)); });
}

cplx L_pm(int sign, i64 m1, i64 m2, i64 n, double m, i64 q, const PhaseSetup& ps, const delta::DeltaScheme& scheme) {
    check_q(q);
    if (ps.W1.is_zero() || ps.W2.is_zero() || ps.V.is_zero()) return 0.0;
    const WindowKernel ker(scheme, q, ps, form_max(ps) + ps.V.hi());
    return L_pm_with(sign, static_cast<double>(n * n) * m, m1, m2, ker, q, ps);
}

cplx Z_integral(const ZParams& z, const PhaseSetup& ps, const delta::DeltaScheme& scheme) {
    check_q(z.q);
    check_q(z.qp);
    if (z.n < 1 || z.rho < 1 || !(z.K > 0)) throw DomainError("Z_integral: n, rho, K must be positive");
    const BumpFunction W = standard_bump(1.0, 2.0, "W");
    if (ps.W1.is_zero() || ps.W2.is_zero() || ps.V.is_zero()) return 0.0;
    const double extent = form_max(ps) + ps.V.hi();
    const WindowKernel ker(scheme, z.q, ps, extent), ker_p(scheme, z.qp, ps, extent);
    const double n2 = static_cast<double>(z.n * z.n);
    const double freq = z.m * z.K / (n2 * static_cast<double>(z.rho));
    // d/dw of 3 Y w^{1/3} is at most Y on [1, 2]; two factors.
    const double lphase = 2.0 * std::cbrt(ps.X * ps.X * z.K) / static_cast<double>(std::min(z.q, z.qp));
    const bool same = z.sign == z.sign_p && z.m1 == z.m1p && z.m2 == z.m2p && z.q == z.qp;
    const Rule rw = panel_rule(1.0, 2.0, std::abs(freq) + lphase, 12);
    KahanComplex acc;
    for (std::size_t i = 0; i < rw.x.size(); ++i) {
        const double w = rw.x[i];
        const double wt = W(w);
        if (wt == 0) continue;
        // n^2 m = w K
        const cplx a = L_pm_with(z.sign, w * z.K, z.m1, z.m2, ker, z.q, ps);
        const cplx b = same ? a : L_pm_with(z.sign_p, w * z.K, z.m1p, z.m2p, ker_p, z.qp, ps);
        acc += rw.w[i] * wt * a * std::conj(b) * e_real(-freq * w);
    }
    return acc.value();
}

double M1_threshold(i64 n, i64 q1, i64 q2, i64 q2p, double K) {
    return static_cast<double>(n * q1 * q2 * q2p) / K;
}

cplx P_integral(int sign, double n2m, i64 m1, double vv, i64 q, const PhaseSetup& ps) {
    check_q(q);
    if (ps.W1.is_zero()) return 0.0;
    const double qd = static_cast<double>(q), X = ps.X;
    const double Y = std::cbrt(X * X * n2m) / qd;
    quad::QuadOptions opt;
    opt.abs_tol = 1e-13;
    opt.rel_tol = 1e-10;
    const double g = grad_bound(ps.form, ps.W1.hi(), vv);
    opt.initial_panels = quad::panels_for_frequency(ps.W1.lo(), ps.W1.hi(), Y * g + std::abs(m1) * X / qd) + 4;
    opt.max_panels = 20000;
    return quad::adaptive_quad(
               [&](double uu) {
                   return ps.W1(uu) * e_real(sign * 3.0 * Y * std::cbrt(ps.form.eval(uu, vv)) - m1 * X * uu / qd);
               },
               ps.W1.lo(), ps.W1.hi(), opt)
        .value;
}

double P_envelope(double n2m, i64 q, double X) {
    return std::sqrt(static_cast<double>(q)) / (std::cbrt(X) * std::pow(n2m, 1.0 / 6.0));
}

} // namespace trisum::phase
