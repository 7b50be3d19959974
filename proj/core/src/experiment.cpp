#include "trisum/experiment.hpp"
#include "trisum/arith.hpp"
#include "trisum/errors.hpp"
#include "trisum/expsums.hpp"
#include "trisum/parallel.hpp"
#include "trisum/phase_integrals.hpp"
#include "trisum/quadrature.hpp"
#include "trisum/voronoi.hpp"

#include <fftw3.h>
#include "json.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

namespace trisum::experiment {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

i64 max_form_value(const QuadraticForm& f, i64 lo, i64 hi) {
    i64 best = 0;
    for (i64 x : {lo, hi})
        for (i64 y : {lo, hi}) best = std::max(best, f(x, y));
    return best;
}

// Integer lattice points of the weight support, merged by the value of Q.
struct LatticePoints {
    std::vector<i64> value;
    std::vector<double> weight;
};

LatticePoints lattice_points(const ExperimentSetup& s) {
    std::map<i64, double> acc;
    if (s.weights == Weights::Sharp) {
        for (i64 x = 1; x <= s.X; ++x)
            for (i64 y = 1; y <= s.X; ++y) acc[s.form(x, y)] += 1.0;
    } else {
        const double X = static_cast<double>(s.X);
        for (i64 x = s.X + 1; x < 2 * s.X; ++x) {
            const double w1 = s.W1(static_cast<double>(x) / X);
            if (w1 == 0) continue;
            for (i64 y = s.X + 1; y < 2 * s.X; ++y) {
                const double w = w1 * s.W2(static_cast<double>(y) / X);
                if (w != 0) acc[s.form(x, y)] += w;
            }
        }
    }
    LatticePoints p;
    p.value.reserve(acc.size());
    p.weight.reserve(acc.size());
    for (auto& [k, v] : acc) {
        p.value.push_back(k);
        p.weight.push_back(v);
    }
    return p;
}

// c_q(k) for k mod q.
std::vector<double> ramanujan_table(i64 q) {
    std::vector<std::pair<i64, int>> dm;
    for (auto d : arith::divisors(static_cast<arith::u64>(q))) {
        const int mu = arith::mobius(static_cast<arith::u64>(q) / d);
        if (mu != 0) dm.emplace_back(static_cast<i64>(d), mu);
    }
    std::vector<double> c(static_cast<std::size_t>(q));
    for (i64 k = 0; k < q; ++k) {
        const i64 g = std::gcd(k, q);
        i64 v = 0;
        for (auto [d, mu] : dm)
            if (g % d == 0) v += d * mu;
        c[static_cast<std::size_t>(k)] = static_cast<double>(v);
    }
    return c;
}

// Delta_q(t) with the bump evaluated in plain doubles.
class FastDelta {
public:
    FastDelta(const delta::DeltaScheme& s, i64 q) : q_(static_cast<double>(q)), Q_(s.Q_cal), norm_(s.w_norm) {
        for (auto j = static_cast<i64>(std::ceil(Q_ / (2 * q_))); static_cast<double>(j) * q_ <= Q_; ++j)
            c_ += w(q_ * static_cast<double>(j)) / (q_ * static_cast<double>(j));
    }
    double operator()(double t) const {
        const double at = std::abs(t);
        double acc = c_;
        for (auto j = std::max<i64>(1, static_cast<i64>(std::ceil(at / (Q_ * q_))));
             static_cast<double>(j) * q_ <= 2 * at / Q_; ++j) {
            const double qj = q_ * static_cast<double>(j);
            acc -= w(at / qj) / qj;
        }
        return acc;
    }

private:
    double w(double x) const {
        const double tau = (x - 0.75 * Q_) / (0.25 * Q_);
        const double d = 1.0 - tau * tau;
        if (d <= 0) return 0.0;
        return std::exp(1.0 - 1.0 / d) / norm_;
    }
    double q_, Q_, norm_, c_ = 0;
};

struct Density {
    double R0, R1, R2;
    double operator()(double r) const {
        const double l = std::log(r);
        return voronoi::kMainTermScale * (R2 + R1 * l + R0 * l * l);
    }
};

Density density(i64 q) {
    const auto k = expsums::main_kernel(q);
    return {k.R0, k.R1, k.R2};
}

std::size_t fft_size(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace

std::pair<double, double> form_range(const QuadraticForm& f, double lo1, double hi1, double lo2, double hi2) {
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    auto take = [&](double x, double y) {
        const double v = f.eval(x, y);
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    };
    for (double x : {lo1, hi1})
        for (double y : {lo2, hi2}) take(x, y);
    const double A = static_cast<double>(f.A), B = static_cast<double>(f.B), C = static_cast<double>(f.C);
    for (double x : {lo1, hi1}) {
        const double y = -C * x / B;
        if (y > lo2 && y < hi2) take(x, y);
    }
    for (double y : {lo2, hi2}) {
        const double x = -C * y / A;
        if (x > lo1 && x < hi1) take(x, y);
    }
    if (lo1 < 0 && hi1 > 0 && lo2 < 0 && hi2 > 0) take(0, 0);
    return {mn, mx};
}

ExperimentSetup make_setup(const QuadraticForm& f, i64 X, Weights w, QcalPolicy qcal, i64 q_max, double x_window) {
    if (X < 2) throw ConfigError("experiment: X must be at least 2");
    ExperimentSetup s;
    s.form = f;
    s.X = X;
    s.weights = w;
    s.W1 = weight_W1();
    s.W2 = weight_W2();
    const double Xd = static_cast<double>(X);
    auto [mn, mx] = w == Weights::Smooth ? form_range(f, 1, 2, 1, 2) : form_range(f, 1 / Xd, 1, 1 / Xd, 1);
    s.Qmin = mn;
    s.Qmax = mx;
    s.V = plateau_bump(0.75 * mn, mn, mx, 1.125 * mx, "V");
    const double X2 = Xd * Xd;
    i64 L = 0;
    if (qcal == QcalPolicy::Span) {
        const double span = std::max(s.V.hi() - mn, mx - s.V.lo()) * X2;
        L = static_cast<i64>(std::ceil(span / 2));
    } else {
        L = static_cast<i64>(std::ceil(X2 / 4));
    }
    delta::DeltaConfig dc;
    dc.x_window = x_window;
    s.scheme = delta::build_scheme(std::max<i64>(L, 4), dc);
    s.q_max = q_max > 0 ? q_max : static_cast<i64>(std::floor(s.scheme.Q_cal));
    s.x_window = x_window;
    return s;
}

double compute_S_direct(const ExperimentSetup& s, const arith::D3Table& d3) {
    const i64 lo = s.weights == Weights::Sharp ? 1 : s.X + 1;
    const i64 hi = s.weights == Weights::Sharp ? s.X : 2 * s.X - 1;
    if (static_cast<std::uint64_t>(max_form_value(s.form, lo, hi)) > d3.size())
        throw ResourceError("compute_S_direct: d3 table too small");
    const double X = static_cast<double>(s.X);
    KahanSum acc;
    for (i64 x = lo; x <= hi; ++x) {
        const double w1 = s.weights == Weights::Sharp ? 1.0 : s.W1(static_cast<double>(x) / X);
        if (w1 == 0) continue;
        for (i64 y = lo; y <= hi; ++y) {
            const double w = s.weights == Weights::Sharp ? 1.0 : w1 * s.W2(static_cast<double>(y) / X);
            if (w != 0) acc += w * d3(static_cast<std::uint64_t>(s.form(x, y)));
        }
    }
    return acc.value();
}

double compute_S_direct(const QuadraticForm& f, i64 X, Weights w) {
    if (X < 1) throw DomainError("compute_S_direct: X must be positive");
    const i64 hi = w == Weights::Sharp ? X : 2 * X - 1;
    const auto d3 = arith::D3Table::cached(static_cast<std::uint64_t>(max_form_value(f, 1, std::max<i64>(hi, 1))));
    ExperimentSetup s;
    s.form = f;
    s.X = X;
    s.weights = w;
    s.W1 = weight_W1();
    s.W2 = weight_W2();
    return compute_S_direct(s, d3);
}

double compute_S_direct_pointwise(const QuadraticForm& f, i64 X, Weights w) {
    const i64 lo = w == Weights::Sharp ? 1 : X + 1;
    const i64 hi = w == Weights::Sharp ? X : 2 * X - 1;
    const auto W1 = weight_W1(), W2 = weight_W2();
    const double Xd = static_cast<double>(X);
    KahanSum acc;
    for (i64 x = lo; x <= hi; ++x)
        for (i64 y = lo; y <= hi; ++y) {
            const double wt = w == Weights::Sharp ? 1.0 : W1(static_cast<double>(x) / Xd) * W2(static_cast<double>(y) / Xd);
            if (wt != 0) acc += wt * static_cast<double>(arith::d3_pointwise(static_cast<arith::u64>(f(x, y))));
        }
    return acc.value();
}

double main_density(i64 q, double r) { return density(q)(r); }

KernelTable::KernelTable(const ExperimentSetup& s, i64 q, double s_lo, double s_hi) {
    if (q < 1) throw DomainError("KernelTable: q must be positive");
    const double X2 = static_cast<double>(s.X) * static_cast<double>(s.X);
    h_ = std::min(static_cast<double>(q) * s.scheme.Q_cal / 640.0, X2 / 400.0);
    const double r_lo = s.V.lo() * X2, r_hi = s.V.hi() * X2;
    const auto Nr = static_cast<i64>(std::ceil((r_hi - r_lo) / h_));
    const i64 l0 = static_cast<i64>(std::floor((s_lo - r_lo) / h_)) - 8;
    const i64 Ns = static_cast<i64>(std::ceil((s_hi - r_lo) / h_)) + 8 - l0 + 1;
    s0_ = r_lo + static_cast<double>(l0) * h_;
    const i64 jmin = -(Ns - 1) - l0;
    const i64 Nb = Nr + Ns;
    const std::size_t N = fft_size(static_cast<std::size_t>(2 * Nr + Ns + 1));

    const Density dens = density(q);
    const FastDelta D(s.scheme, q);
    double* a = fftw_alloc_real(N);
    double* b = fftw_alloc_real(N);
    fftw_complex* A = fftw_alloc_complex(N / 2 + 1);
    fftw_complex* B = fftw_alloc_complex(N / 2 + 1);
    std::fill(a, a + N, 0.0);
    std::fill(b, b + N, 0.0);
    for (i64 k = 0; k <= Nr; ++k) {
        const double r = r_lo + static_cast<double>(k) * h_;
        const double v = s.V(r / X2);
        a[Nr - k] = v == 0 ? 0.0 : v * dens(r) * h_;
    }
    for (i64 i = 0; i < Nb; ++i) b[i] = D(static_cast<double>(jmin + i) * h_);

    fftw_plan pa, pb, pc;
    {
        std::lock_guard<std::mutex> lk(fftw_planner_mutex());
        pa = fftw_plan_dft_r2c_1d(static_cast<int>(N), a, A, FFTW_ESTIMATE);
        pb = fftw_plan_dft_r2c_1d(static_cast<int>(N), b, B, FFTW_ESTIMATE);
        pc = fftw_plan_dft_c2r_1d(static_cast<int>(N), A, a, FFTW_ESTIMATE);
    }
    fftw_execute(pa);
    fftw_execute(pb);
    for (std::size_t i = 0; i <= N / 2; ++i) {
        const double re = A[i][0] * B[i][0] - A[i][1] * B[i][1];
        const double im = A[i][0] * B[i][1] + A[i][1] * B[i][0];
        A[i][0] = re;
        A[i][1] = im;
    }
    fftw_execute(pc);
    tab_.resize(static_cast<std::size_t>(Ns));
    for (i64 l = 0; l < Ns; ++l) tab_[static_cast<std::size_t>(l)] = a[Nr + Ns - 1 - l] / static_cast<double>(N);
    {
        std::lock_guard<std::mutex> lk(fftw_planner_mutex());
        fftw_destroy_plan(pa);
        fftw_destroy_plan(pb);
        fftw_destroy_plan(pc);
    }
    fftw_free(a);
    fftw_free(b);
    fftw_free(A);
    fftw_free(B);
}

double KernelTable::operator()(double sv) const {
    static constexpr double bw[8] = {-1, 7, -21, 35, -35, 21, -7, 1};
    const double p = (sv - s0_) / h_;
    const auto i0 = static_cast<i64>(std::floor(p)) - 3;
    if (i0 < 0 || i0 + 7 >= static_cast<i64>(tab_.size())) throw DomainError("KernelTable: argument outside the table");
    double num = 0, den = 0;
    for (int i = 0; i < 8; ++i) {
        const double d = p - static_cast<double>(i0 + i);
        if (d == 0) return tab_[static_cast<std::size_t>(i0 + i)];
        const double c = bw[i] / d;
        num += c * tab_[static_cast<std::size_t>(i0 + i)];
        den += c;
    }
    return num / den;
}

double kernel_direct(const ExperimentSetup& s, i64 q, double sv) {
    const double X2 = static_cast<double>(s.X) * static_cast<double>(s.X);
    const double r_lo = s.V.lo() * X2, r_hi = s.V.hi() * X2;
    const Density dens = density(q);
    quad::QuadOptions opt;
    opt.abs_tol = 1e-13;
    opt.rel_tol = 1e-12;
    opt.max_panels = 200000;
    opt.initial_panels = std::clamp(static_cast<int>((r_hi - r_lo) / (static_cast<double>(q) * s.scheme.Q_cal / 16)), 16, 20000);
    return quad::adaptive_quad_real(
        [&](double r) { return s.V(r / X2) * dens(r) * delta::Delta_q(s.scheme, q, r - sv); }, r_lo, r_hi, opt);
}

namespace {

double lattice_block(const ExperimentSetup& s, const LatticePoints& pts, i64 q) {
    const auto c = ramanujan_table(q);
    const KernelTable G(s, q, static_cast<double>(pts.value.front()), static_cast<double>(pts.value.back()));
    KahanSum acc;
    for (std::size_t i = 0; i < pts.value.size(); ++i) {
        const double cq = c[static_cast<std::size_t>(pts.value[i] % q)];
        if (cq == 0) continue;
        acc += pts.weight[i] * cq * G(static_cast<double>(pts.value[i]));
    }
    const double qd = static_cast<double>(q);
    return acc.value() / (qd * qd);
}

double factored_block(const ExperimentSetup& s, const LatticePoints& pts, i64 q) {
    const auto c = ramanujan_table(q);
    const double X2 = static_cast<double>(s.X) * static_cast<double>(s.X);
    const Density dens = density(q);
    const double m0 = quad::adaptive_quad_real([&](double r) { return s.V(r / X2) * dens(r); }, s.V.lo() * X2, s.V.hi() * X2);
    const FastDelta D(s.scheme, q);
    KahanSum acc;
    for (std::size_t i = 0; i < pts.value.size(); ++i) {
        const double cq = c[static_cast<std::size_t>(pts.value[i] % q)];
        if (cq == 0) continue;
        const double v = static_cast<double>(pts.value[i]);
        acc += pts.weight[i] * cq * D(v) * delta::phi_cut(s.scheme, v);
    }
    const double qd = static_cast<double>(q);
    return m0 * acc.value() / (qd * qd);
}

// (1/(q Q)) int psi U M_q(x) N_q(x) dx with the main-term moments computed at every x.
double nested_block(const ExperimentSetup& s, const LatticePoints& pts, i64 q) {
    const auto c = ramanujan_table(q);
    const double X2 = static_cast<double>(s.X) * static_cast<double>(s.X);
    const double qQ = static_cast<double>(q) * s.scheme.Q_cal;
    const double r_lo = s.V.lo() * X2, r_hi = s.V.hi() * X2;
    const double W = s.x_window;
    const Density dens = density(q);
    const auto& gl = quad::gauss_legendre(16);

    // 16-point panels spanning at most two periods of the fastest phase
    const double r_cycles = 2 * W * (r_hi - r_lo) / qQ;
    const int r_panels = std::max(64, static_cast<int>(std::ceil(r_cycles / 2)));
    std::vector<double> rn, rw;
    const double rp = (r_hi - r_lo) / r_panels;
    for (int p = 0; p < r_panels; ++p)
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
            const double r = r_lo + rp * (p + 0.5 * (gl.x[i] + 1));
            rn.push_back(r);
            rw.push_back(0.5 * rp * gl.w[i] * s.V(r / X2) * dens(r));
        }

    std::vector<double> cw;
    std::vector<double> sv;
    for (std::size_t j = 0; j < pts.value.size(); ++j) {
        const double cq = c[static_cast<std::size_t>(pts.value[j] % q)];
        if (cq == 0) continue;
        cw.push_back(pts.weight[j] * cq);
        sv.push_back(static_cast<double>(pts.value[j]));
    }

    const double cycles = (r_hi + sv.back() + 4.0 * static_cast<double>(s.scheme.L)) / qQ;
    const int x_panels = std::max(32, static_cast<int>(std::ceil(2 * W * cycles / 2)));
    const double xp = 2 * W / x_panels;
    std::vector<double> xs, xw;
    for (int p = 0; p < x_panels; ++p)
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
            const double x = xp * (p + 0.5 * (gl.x[i] + 1));
            const double uw = delta::U_window(s.scheme, x);
            if (uw == 0) continue;
            xs.push_back(x);
            xw.push_back(0.5 * xp * gl.w[i] * uw);
        }
    const auto psi = delta::psi_eval_many(s.scheme, q, xs);
    KahanSum acc;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double k = kTwoPi * xs[i] / qQ;
        cplx M = 0, Nn = 0;
        for (std::size_t j = 0; j < rn.size(); ++j) M += rw[j] * cplx(std::cos(k * rn[j]), std::sin(k * rn[j]));
        for (std::size_t j = 0; j < sv.size(); ++j) Nn += cw[j] * cplx(std::cos(k * sv[j]), -std::sin(k * sv[j]));
        acc += 2.0 * xw[i] * psi[i] * (M * Nn).real();
    }
    const double qd = static_cast<double>(q);
    return acc.value() / (qQ * qd * qd);
}

} // namespace

MainResult compute_S_main(const ExperimentSetup& s, MainRoute route, int threads) {
    if (s.weights != Weights::Smooth) throw DomainError("compute_S_main: the main term needs smooth weights");
    const LatticePoints pts = lattice_points(s);
    MainResult res;
    res.q_terms = s.q_max;
    res.q_blocks.assign(static_cast<std::size_t>(s.q_max), 0.0);
    parallel_for(
        static_cast<std::size_t>(s.q_max),
        [&](std::size_t i) {
            const i64 q = static_cast<i64>(i) + 1;
            double v = 0;
            switch (route) {
            case MainRoute::Lattice: v = lattice_block(s, pts, q); break;
            case MainRoute::Factored: v = factored_block(s, pts, q); break;
            case MainRoute::NestedU: v = nested_block(s, pts, q); break;
            }
            res.q_blocks[i] = v;
        },
        threads);
    KahanSum acc;
    for (double b : res.q_blocks) acc += b;
    res.value = acc.value();
    return res;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("loglog_slope: need at least two points");
    double mx = 0, my = 0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]) / n;
        my += std::log(y[i]) / n;
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

ScanResult error_scan(const ExperimentConfig& cfg) {
    if (cfg.X.size() < 3) throw ConfigError("error_scan: at least three X values are required");
    const i64 Xmax = *std::max_element(cfg.X.begin(), cfg.X.end());
    const i64 hi = cfg.weights == Weights::Sharp ? Xmax : 2 * Xmax - 1;
    const auto d3 = arith::D3Table::cached(static_cast<std::uint64_t>(max_form_value(cfg.form, 1, hi)));
    const double nan = std::numeric_limits<double>::quiet_NaN();
    ScanResult out;
    std::vector<double> xs, ys;
    for (i64 X : cfg.X) {
        ScanRow row;
        row.X = X;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const auto s = make_setup(cfg.form, X, cfg.weights, cfg.qcal, cfg.q_max, cfg.x_window);
            row.q_max = s.q_max;
            row.L = s.scheme.L;
            row.Q_cal = s.scheme.Q_cal;
            row.S_direct = compute_S_direct(s, d3);
            if (cfg.weights == Weights::Smooth) {
                row.S_main = compute_S_main(s, cfg.route, cfg.threads).value;
                row.abs_err = std::abs(row.S_direct - row.S_main);
                row.rel_err = row.abs_err / (static_cast<double>(X) * static_cast<double>(X));
            } else {
                row.S_main = row.abs_err = row.rel_err = nan;
            }
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
            row.S_main = row.abs_err = row.rel_err = nan;
        }
        row.runtime_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (row.ok && row.abs_err > 0) {
            xs.push_back(static_cast<double>(X));
            ys.push_back(row.abs_err);
        }
        out.rows.push_back(row);
    }
    out.slope = xs.size() >= 2 ? loglog_slope(xs, ys) : nan;
    return out;
}

std::string scan_csv(const ScanResult& r, bool timing) {
    std::string s = "X,S_direct,S_main,abs_err,rel_err,runtime_sec\n";
    char buf[256];
    for (const auto& row : r.rows) {
        std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.9e,%.9e,%.3f\n", static_cast<long long>(row.X), row.S_direct,
                      row.S_main, row.abs_err, row.rel_err, timing ? row.runtime_sec : 0.0);
        s += buf;
    }
    std::snprintf(buf, sizeof buf, "slope,%.6f\n", r.slope);
    s += buf;
    return s;
}

std::string scan_json(const ScanResult& r, const ExperimentConfig& cfg) {
    nlohmann::ordered_json j;
    j["form"] = cfg.form.str();
    j["weights"] = to_string(cfg.weights);
    j["route"] = to_string(cfg.route);
    j["qcal"] = to_string(cfg.qcal);
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json o;
        o["X"] = row.X;
        o["S_direct"] = row.S_direct;
        o["S_main"] = row.S_main;
        o["abs_err"] = row.abs_err;
        o["rel_err"] = row.rel_err;
        o["q_max"] = row.q_max;
        o["L"] = row.L;
        o["Q_cal"] = row.Q_cal;
        o["ok"] = row.ok;
        if (!row.ok) o["error"] = row.error;
        rows.push_back(o);
    }
    j["rows"] = rows;
    j["slope"] = r.slope;
    return j.dump(2);
}

double theta_sum(i64 n, double K) {
    if (n < 1) throw DomainError("theta_sum: n must be positive");
    const voronoi::D3Coefficients B;
    const auto mmax = static_cast<std::uint64_t>(K / static_cast<double>(n * n));
    KahanSum th;
    for (std::uint64_t m = 1; m <= mmax; ++m) {
        const double b = B(static_cast<std::uint64_t>(n), m);
        th += b * b / std::cbrt(static_cast<double>(m) * static_cast<double>(m));
    }
    return th.value();
}

DiagnosticsReport theta_omega_diagnostics(const ExperimentConfig& cfg, i64 X, i64 n, double K) {
    if (n < 1 || n > 20) throw DomainError("diagnostics: n must lie in [1, 20]");
    if (X < 2) throw DomainError("diagnostics: X must be at least 2");
    DiagnosticsReport r;
    r.X = X;
    r.n = n;
    r.K = K > 0 ? K : static_cast<double>(X);
    if (r.K > 1e6) throw ResourceError("diagnostics: K above 10^6");
    r.theta = theta_sum(n, r.K);
    r.theta_one = theta_sum(1, r.K);
    const double dn = static_cast<double>(arith::d3_pointwise(static_cast<arith::u64>(n)));
    r.theta_envelope = dn * dn * r.theta_one;

    const auto ps = phase::make_setup(cfg.form, static_cast<double>(X));
    const auto scheme = delta::build_scheme(std::max<i64>(static_cast<i64>(std::ceil(static_cast<double>(X * X) / 4)), 4));
    expsums::CharSumKey trivial;
    phase::ZParams zp;
    zp.K = r.K;
    r.omega_sample = expsums::frakS_enumerate(trivial, cfg.form).value * phase::Z_integral(zp, ps, scheme);

    const i64 det = cfg.form.det();
    const std::vector<std::array<i64, 4>> ms = {{1, 0, 1, 0}, {1, 1, 0, 1}, {1, 2, 2, 1}, {2, 1, 2, 1}};
    for (i64 q = 3; q <= 15; q += 2) {
        if (std::gcd(q, 2 * det) != 1) continue;
        const auto divs = arith::divisors(static_cast<arith::u64>(q));
        for (const auto& m : ms) {
            expsums::CharSumKey key;
            key.m1 = m[0];
            key.m2 = m[1];
            key.m1p = m[2];
            key.m2p = m[3];
            key.q1 = q;
            const auto fr = expsums::frakS_enumerate(key, cfg.form);
            const i64 diff = cfg.form.adjoint(m[0], m[1]) - cfg.form.adjoint(m[2], m[3]);
            double env = 0;
            for (auto d : divs)
                for (auto dp : divs) {
                    const auto g = static_cast<i64>(std::gcd(d, dp));
                    if (diff % g == 0) env += static_cast<double>(g);
                }
            SZeroRow row;
            row.q = q;
            row.m1 = m[0];
            row.m2 = m[1];
            row.m1p = m[2];
            row.m2p = m[3];
            row.abs_value = std::abs(fr.value);
            row.envelope = static_cast<double>(q * q * q) * env;
            row.admissible_pairs = fr.admissible_pairs;
            row.case_one_counterexamples = fr.case_one_counterexamples;
            r.s_zero.push_back(row);
        }
    }
    return r;
}

std::string DiagnosticsReport::to_json() const {
    nlohmann::ordered_json j;
    j["X"] = X;
    j["n"] = n;
    j["K"] = K;
    j["theta"] = theta;
    j["theta_one"] = theta_one;
    j["theta_envelope"] = theta_envelope;
    j["theta_within_envelope"] = theta <= theta_envelope;
    j["omega_sample_re"] = omega_sample.real();
    j["omega_sample_im"] = omega_sample.imag();
    j["omega_sample_abs"] = std::abs(omega_sample);
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : s_zero) {
        nlohmann::ordered_json o;
        o["q"] = r.q;
        o["m"] = {r.m1, r.m2};
        o["m_prime"] = {r.m1p, r.m2p};
        o["abs_value"] = r.abs_value;
        o["envelope"] = r.envelope;
        o["admissible_pairs"] = r.admissible_pairs;
        o["case_one_counterexamples"] = r.case_one_counterexamples;
        rows.push_back(o);
    }
    j["s_zero"] = rows;
    return j.dump(2);
}

} // namespace trisum::experiment
