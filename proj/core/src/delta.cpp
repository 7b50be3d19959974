#include "trisum/delta.hpp"
#include "trisum/errors.hpp"
#include "trisum/expsums.hpp"
#include "trisum/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace trisum::delta {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double step(double t) {
    if (t <= 0) return 0;
    if (t >= 1) return 1;
    const double a = std::exp(-1 / t), b = std::exp(-1 / (1 - t));
    return a / (a + b);
}

void check_q(const DeltaScheme& s, std::int64_t q) {
    if (q < 1 || q > s.q_max) throw DomainError("delta: q outside [1, q_max]");
}

// Nodes on [0, 4L] resolving Delta_q phi: panels of width qQ/16.
struct Nodes {
    std::vector<double> u, gw; // abscissa, Delta_q phi times quadrature weight
};

Nodes psi_nodes(const DeltaScheme& s, std::int64_t q) {
    const auto& rule = quad::gauss_legendre(16);
    const double top = 4.0 * static_cast<double>(s.L);
    const double width = std::min(static_cast<double>(q) * s.Q_cal / 16.0, top / 8.0);
    const int panels = static_cast<int>(std::ceil(top / width));
    const double h = top / panels;
    Nodes nd;
    nd.u.reserve(static_cast<std::size_t>(panels) * rule.x.size());
    for (int p = 0; p < panels; ++p) {
        const double c = (p + 0.5) * h;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double u = c + 0.5 * h * rule.x[i];
            const double g = Delta_q(s, q, u) * phi_cut(s, u);
            if (g == 0) continue;
            nd.u.push_back(u);
            nd.gw.push_back(g * 0.5 * h * rule.w[i]);
        }
    }
    return nd;
}

} // namespace

DeltaScheme build_scheme(std::int64_t L, const DeltaConfig& cfg) {
    if (L < 4) throw ConfigError("delta scheme: L must be at least 4");
    if (!(cfg.x_window > 0) || !(cfg.q_max_factor >= 1)) throw ConfigError("delta scheme: bad window or q_max factor");
    DeltaScheme s;
    s.L = L;
    s.Q_cal = 2.0 * std::sqrt(static_cast<double>(L));
    s.w = standard_bump(s.Q_cal / 2, s.Q_cal, "w");
    double norm = 0;
    for (auto r = static_cast<std::int64_t>(std::floor(s.Q_cal / 2)); r <= static_cast<std::int64_t>(s.Q_cal) + 1; ++r)
        norm += s.w(static_cast<double>(r));
    s.w_norm = norm;
    s.q_max = static_cast<std::int64_t>(std::ceil(cfg.q_max_factor * s.Q_cal));
    s.x_window = cfg.x_window;
    s.tol = cfg.tol;
    return s;
}

double Delta_q(const DeltaScheme& s, std::int64_t q, double u) {
    if (q < 1) throw DomainError("Delta_q: q must be positive");
    const double qd = static_cast<double>(q), Q = s.Q_cal;
    double acc = 0;
    for (auto j = static_cast<std::int64_t>(std::ceil(Q / (2 * qd))); static_cast<double>(j) * qd <= Q; ++j)
        acc += s.weight(qd * j) / (qd * j);
    const double au = std::abs(u);
    // w(|u|/(qj)) needs qj in [|u|/Q, 2|u|/Q]
    for (auto j = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(au / (Q * qd))));
         static_cast<double>(j) * qd <= 2 * au / Q; ++j)
        acc -= s.weight(au / (qd * j)) / (qd * j);
    return acc;
}

double phi_cut(const DeltaScheme& s, double u) {
    const double L = static_cast<double>(s.L);
    return 1.0 - step((std::abs(u) - 2 * L) / (2 * L));
}

double psi_eval(const DeltaScheme& s, std::int64_t q, double x) {
    check_q(s, q);
    const Nodes nd = psi_nodes(s, q);
    const double k = kTwoPi * x / (static_cast<double>(q) * s.Q_cal);
    KahanSum acc;
    for (std::size_t i = 0; i < nd.u.size(); ++i) acc += 2.0 * nd.gw[i] * std::cos(k * nd.u[i]);
    return acc.value();
}

std::vector<double> psi_eval_many(const DeltaScheme& s, std::int64_t q, const std::vector<double>& xs) {
    check_q(s, q);
    const Nodes nd = psi_nodes(s, q);
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) {
        const double k = kTwoPi * x / (static_cast<double>(q) * s.Q_cal);
        KahanSum acc;
        for (std::size_t i = 0; i < nd.u.size(); ++i) acc += 2.0 * nd.gw[i] * std::cos(k * nd.u[i]);
        out.push_back(acc.value());
    }
    return out;
}

double U_window(const DeltaScheme& s, double x) { return 1.0 - step((std::abs(x) - s.x_window) / s.x_window); }

namespace {

// int U(x) e(xi x) dx on a uniform xi grid, read back by 8-point barycentric interpolation.
// Entries past the point where the transform falls below 1e-15 of its peak are dropped.
class WindowTransform {
public:
    explicit WindowTransform(const DeltaScheme& s) {
        step_ = 1.0 / (64.0 * s.x_window);
        const auto& rule = quad::gauss_legendre(24);
        const double top = 2 * s.x_window;
        double peak = 0;
        int quiet = 0;
        for (std::size_t k = 0;; ++k) {
            const double xi = static_cast<double>(k) * step_;
            const int panels = static_cast<int>(std::ceil(2 * top * xi)) + 8;
            const double h = top / panels;
            KahanSum acc;
            for (int p = 0; p < panels; ++p)
                for (std::size_t i = 0; i < rule.x.size(); ++i) {
                    const double x = (p + 0.5 + 0.5 * rule.x[i]) * h;
                    acc += h * rule.w[i] * U_window(s, x) * std::cos(kTwoPi * xi * x);
                }
            tab_.push_back(acc.value());
            peak = std::max(peak, std::abs(acc.value()));
            quiet = std::abs(acc.value()) < 1e-15 * peak ? quiet + 1 : 0;
            if (quiet >= 64) break;
        }
        cut_ = static_cast<double>(tab_.size() - 8) * step_;
        for (int i = 0; i < 8; ++i) tab_.push_back(0.0);
    }
    double cutoff() const { return cut_; }
    double operator()(double xi) const {
        const double t = std::abs(xi) / step_;
        if (t * step_ >= cut_) return 0.0;
        const auto k0 = static_cast<std::int64_t>(std::floor(t)) - 3;
        static constexpr double bw[8] = {1, -7, 21, -35, 35, -21, 7, -1};
        double num = 0, den = 0;
        for (int i = 0; i < 8; ++i) {
            const double d = t - static_cast<double>(k0 + i);
            if (d == 0) return tab_[static_cast<std::size_t>(std::abs(k0 + i))];
            const double c = bw[i] / d;
            num += c * tab_[static_cast<std::size_t>(std::abs(k0 + i))];
            den += c;
        }
        return num / den;
    }

private:
    double step_, cut_ = 0;
    std::vector<double> tab_;
};

} // namespace

std::vector<double> delta_eval_many(const DeltaScheme& s, const std::vector<std::int64_t>& ns) {
    for (auto n : ns) {
        if (std::abs(n) > 2 * s.L) throw DomainError("delta_eval: |n| > 2L");
    }
    std::vector<KahanSum> acc(ns.size());
    const WindowTransform Uhat(s);
    for (std::int64_t q = 1; q <= s.q_max; ++q) {
        const Nodes nd = psi_nodes(s, q);
        if (nd.u.empty()) continue;
        const double qQ = static_cast<double>(q) * s.Q_cal;
        for (std::size_t t = 0; t < ns.size(); ++t) {
            const auto cq = expsums::ramanujan_sum(ns[t], q);
            if (cq == 0) continue;
            const double n = static_cast<double>(ns[t]);
            // only |u -+ n| <= cutoff * qQ contribute
            const double reach = Uhat.cutoff() * qQ + std::abs(n);
            const auto end = std::upper_bound(nd.u.begin(), nd.u.end(), reach) - nd.u.begin();
            KahanSum inner;
            for (std::ptrdiff_t i = 0; i < end; ++i)
                inner += nd.gw[i] * (Uhat((n - nd.u[i]) / qQ) + Uhat((n + nd.u[i]) / qQ));
            acc[t] += static_cast<double>(cq) * inner.value() / (s.Q_cal * static_cast<double>(q));
        }
    }
    std::vector<double> out(ns.size());
    for (std::size_t t = 0; t < ns.size(); ++t) out[t] = acc[t].value();
    return out;
}

double psi_window_transform_direct(const DeltaScheme& s, std::int64_t q, double r) {
    check_q(s, q);
    const Nodes nd = psi_nodes(s, q);
    const WindowTransform Uhat(s);
    const double qQ = static_cast<double>(q) * s.Q_cal;
    KahanSum acc;
    for (std::size_t i = 0; i < nd.u.size(); ++i) acc += nd.gw[i] * (Uhat((r - nd.u[i]) / qQ) + Uhat((r + nd.u[i]) / qQ));
    return acc.value();
}

PsiWindowTransform::PsiWindowTransform(const DeltaScheme& s, std::int64_t q, double r_max) {
    check_q(s, q);
    const Nodes nd = psi_nodes(s, q);
    const WindowTransform Uhat(s);
    const double qQ = static_cast<double>(q) * s.Q_cal;
    step_ = qQ / (64.0 * s.x_window);
    r_max_ = r_max;
    const auto n = static_cast<std::size_t>(std::ceil(r_max / step_)) + 8;
    tab_.assign(n, 0.0);
    const double reach = (nd.u.empty() ? 0.0 : nd.u.back()) + Uhat.cutoff() * qQ;
    support_ = reach;
    for (std::size_t k = 0; k < n; ++k) {
        const double r = static_cast<double>(k) * step_;
        if (r > reach) break;
        KahanSum acc;
        for (std::size_t i = 0; i < nd.u.size(); ++i)
            acc += nd.gw[i] * (Uhat((r - nd.u[i]) / qQ) + Uhat((r + nd.u[i]) / qQ));
        tab_[k] = acc.value();
    }
}

double PsiWindowTransform::operator()(double r) const {
    const double t = std::abs(r) / step_;
    if (std::abs(r) > r_max_) throw DomainError("PsiWindowTransform: argument beyond table");
    const auto k0 = static_cast<std::int64_t>(std::floor(t)) - 3;
    static constexpr double bw[8] = {1, -7, 21, -35, 35, -21, 7, -1};
    double num = 0, den = 0;
    for (int i = 0; i < 8; ++i) {
        const auto k = static_cast<std::size_t>(std::abs(k0 + i));
        const double d = t - static_cast<double>(k0 + i);
        if (d == 0) return tab_[k];
        num += bw[i] / d * tab_[k];
        den += bw[i] / d;
    }
    return num / den;
}

double delta_eval(const DeltaScheme& s, std::int64_t n) { return delta_eval_many(s, {n})[0]; }

double delta_eval_direct(const DeltaScheme& s, std::int64_t n) {
    if (std::abs(n) > 2 * s.L) throw DomainError("delta_eval: |n| > 2L");
    KahanSum acc;
    for (std::int64_t q = 1; q <= s.q_max; ++q) {
        const auto cq = expsums::ramanujan_sum(n, q);
        if (cq == 0) continue;
        const Nodes nd = psi_nodes(s, q);
        if (nd.u.empty()) continue;
        const double qQ = static_cast<double>(q) * s.Q_cal;
        auto psi = [&](double x) {
            KahanSum p;
            for (std::size_t i = 0; i < nd.u.size(); ++i) p += 2.0 * nd.gw[i] * std::cos(kTwoPi * x * nd.u[i] / qQ);
            return p.value();
        };
        quad::QuadOptions opt;
        opt.abs_tol = s.tol;
        opt.rel_tol = 1e-9;
        opt.initial_panels = quad::panels_for_frequency(-2 * s.x_window, 2 * s.x_window, 4.0 * s.L / qQ);
        const double I = quad::adaptive_quad_real(
            [&](double x) { return psi(x) * U_window(s, x) * std::cos(kTwoPi * static_cast<double>(n) * x / qQ); },
            -2 * s.x_window, 2 * s.x_window, opt);
        acc += static_cast<double>(cq) * I / (s.Q_cal * static_cast<double>(q));
    }
    return acc.value();
}

std::pair<double, double> psi_norms(const DeltaScheme& s, std::int64_t q) {
    check_q(s, q);
    const Nodes nd = psi_nodes(s, q);
    const double qQ = static_cast<double>(q) * s.Q_cal;
    auto psi = [&](double x) {
        KahanSum p;
        for (std::size_t i = 0; i < nd.u.size(); ++i) p += 2.0 * nd.gw[i] * std::cos(kTwoPi * x * nd.u[i] / qQ);
        return p.value();
    };
    const int panels = quad::panels_for_frequency(-s.x_window, s.x_window, 4.0 * s.L / qQ);
    const auto& rule = quad::gauss_legendre(16);
    const double h = 2 * s.x_window / panels;
    KahanSum l1, l2;
    for (int p = 0; p < panels; ++p) {
        const double c = -s.x_window + (p + 0.5) * h;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double v = psi(c + 0.5 * h * rule.x[i]);
            l1 += 0.5 * h * rule.w[i] * std::abs(v);
            l2 += 0.5 * h * rule.w[i] * v * v;
        }
    }
    return {l1.value(), l2.value()};
}

} // namespace trisum::delta
