#include "trisum/quadrature.hpp"
#include "trisum/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>

namespace trisum::quad {

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    cplx value;
    double error, mass;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<cplx(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fc = f(c);
    cplx rk = fc * kWgk[7];
    cplx rg = fc * kWg[3];
    double ra = std::abs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        cplx f1 = f(c - dx), f2 = f(c + dx);
        rk += kWgk[j] * (f1 + f2);
        ra += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) rg += kWg[j / 2] * (f1 + f2);
    }
    cplx vk = rk * h, vg = rg * h;
    return {a, b, vk, std::abs(vk - vg), ra * std::abs(h)};
}

} // namespace

int panels_for_frequency(double a, double b, double cycles_per_unit) {
    // Each GK15 panel resolves about 2 periods comfortably; keep 1/8 period per node spacing.
    double periods = std::abs(b - a) * std::abs(cycles_per_unit);
    return std::max(1, static_cast<int>(std::ceil(periods / 2.0)));
}

QuadResult adaptive_quad(const std::function<cplx(double)>& f, double a, double b, const QuadOptions& opt) {
    if (opt.abs_tol < 1e-13 && opt.rel_tol < 1e-13)
        throw DomainError("adaptive_quad: tolerance below 1e-13");
    if (a == b) return {0.0, 0.0, 0};
    std::priority_queue<Panel> heap;
    cplx total = 0.0;
    double err = 0, mass = 0;
    int evals = 0;
    const int n0 = std::max(1, opt.initial_panels);
    for (int i = 0; i < n0; ++i) {
        double lo = a + (b - a) * i / n0, hi = a + (b - a) * (i + 1) / n0;
        Panel p = gk15(f, lo, hi);
        evals += 15;
        total += p.value;
        err += p.error;
        mass += p.mass;
        heap.push(p);
    }
    int panels = n0;
    // Below 50 eps times the integral of |f| the estimate is rounding noise.
    constexpr double kRound = 50 * std::numeric_limits<double>::epsilon();
    while (err > std::max({opt.abs_tol, opt.rel_tol * std::abs(total), kRound * mass})) {
        if (panels >= opt.max_panels)
            throw QuadratureFailure("adaptive_quad: panel budget exhausted", total, err);
        Panel p = heap.top();
        heap.pop();
        const double mid = 0.5 * (p.a + p.b);
        Panel l = gk15(f, p.a, mid), r = gk15(f, mid, p.b);
        evals += 30;
        total += l.value + r.value - p.value;
        err += l.error + r.error - p.error;
        mass += l.mass + r.mass - p.mass;
        heap.push(l);
        heap.push(r);
        ++panels;
        if (err < 0) err = 0;
    }
    // Re-sum panels for a clean total.
    KahanComplex acc;
    double e2 = 0;
    std::vector<Panel> all;
    while (!heap.empty()) { all.push_back(heap.top()); heap.pop(); }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    for (const auto& p : all) { acc += p.value; e2 += p.error; }
    return {acc.value(), e2, evals};
}

double adaptive_quad_real(const std::function<double(double)>& f, double a, double b, const QuadOptions& opt) {
    return adaptive_quad([&](double x) { return cplx(f(x), 0.0); }, a, b, opt).value.real();
}

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        auto legendre = [n](double t, double& dp) {
            double p0 = 1, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1);
            return p1;
        };
        for (int it2 = 0; it2 < 100; ++it2) {
            double dp;
            double dx = legendre(x, dp) / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double dp;
        legendre(x, dp);
        r.w[i] = 2.0 / ((1 - x * x) * dp * dp);
        r.x[i] = x;
    }
    return cache.emplace(n, std::move(r)).first->second;
}

std::vector<double> uniform_nodes(double a, double b, int n) {
    std::vector<double> x(n + 1);
    for (int i = 0; i <= n; ++i) x[i] = a + (b - a) * i / n;
    return x;
}

} // namespace trisum::quad
