#include "trisum/arith.hpp"
#include "trisum/config.hpp"
#include "trisum/delta.hpp"
#include "trisum/experiment.hpp"
#include "trisum/expsums.hpp"
#include "trisum/poisson.hpp"
#include "trisum/sieve.hpp"
#include "trisum/transforms.hpp"
#include "trisum/voronoi.hpp"

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace trisum;
using i64 = std::int64_t;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << text;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::vector<QuadraticForm>& reference_forms() {
    static const std::vector<QuadraticForm> f{{1, 1, 0}, {1, 2, 1}, {2, 3, 1}};
    return f;
}

// All sums sum_{x,y mod q} e(a (Q(x,y) + m1 x + m2 y) / q) for fixed a by splitting the y-sum:
// h(k) = sum_y e(a (B y^2 + k y) / q), then G(m1, m2) = sum_x e(a (A x^2 + m1 x) / q) h(2 C x + m2).
std::vector<cplx> gauss_table(const QuadraticForm& f, i64 a, i64 q) {
    std::vector<cplx> ex(q);
    for (i64 k = 0; k < q; ++k) ex[k] = std::polar(1.0, 2 * std::numbers::pi * double(k) / double(q));
    auto red = [q](i64 v) { return ((v % q) + q) % q; };
    std::vector<cplx> h(q, 0.0);
    for (i64 k = 0; k < q; ++k)
        for (i64 y = 0; y < q; ++y) h[k] += ex[red(a * red(f.B * y % q * y + k * y))];
    std::vector<cplx> g(q * q, 0.0);
    for (i64 x = 0; x < q; ++x) {
        const i64 base = red(f.A * x % q * x);
        const i64 shift = red(2 * f.C * x);
        for (i64 m1 = 0; m1 < q; ++m1) {
            const cplx w = ex[red(a * red(base + m1 * x))];
            cplx* row = &g[m1 * q];
            for (i64 m2 = 0; m2 < q; ++m2) {
                i64 k = shift + m2;
                if (k >= q) k -= q;
                row[m2] += w * h[k];
            }
        }
    }
    return g;
}

Outcome criterion1() {
    double worst = 0, spot = 0;
    long cases = 0;
    for (const auto& f : reference_forms())
        for (i64 q = 1; q <= 99; q += 2) {
            if (std::gcd(q, 2 * f.det()) != 1) continue;
            for (i64 a = 1; a <= q; ++a) {
                if (std::gcd(a, q) != 1) continue;
                const auto g = gauss_table(f, a % q, q);
                for (i64 m1 = 0; m1 < q; ++m1)
                    for (i64 m2 = 0; m2 < q; ++m2) {
                        worst = std::max(worst, std::abs(expsums::gauss_sum_closed(f, m1, m2, a, q) - g[m1 * q + m2]));
                        ++cases;
                    }
                if (a == 1 || a == q - 1) {
                    const i64 m1 = (3 * q) / 7, m2 = (5 * q) / 11;
                    spot = std::max(spot, std::abs(expsums::gauss_sum_brute(f, m1, m2, a, q) - g[m1 * q + m2]));
                }
            }
        }
    return {worst <= 1e-9 && spot <= 1e-9,
            std::to_string(cases) + " sums, max |closed - brute| = " + fmt("%.2e", worst) + ", spot " + fmt("%.2e", spot)};
}

Outcome criterion2() {
    double sym = 0, real = 0, mult = 0, ram = 0, weil = 0;
    for (i64 q = 1; q <= 500; ++q) {
        const double dq = double(arith::num_divisors(std::uint64_t(q)));
        std::vector<std::vector<cplx>> rows(q);
        for (i64 a = 0; a < q; ++a) rows[a] = expsums::kloosterman_row(a, q);
        for (i64 a = 0; a < q; ++a)
            for (i64 b = 0; b < q; ++b) {
                const cplx s = rows[a][b];
                sym = std::max(sym, std::abs(s - rows[b][a]));
                real = std::max(real, std::abs(s.imag()));
                const double g = double(std::gcd(std::gcd(a, b), q));
                weil = std::max(weil, std::abs(s) / (dq * std::sqrt(g * double(q))));
            }
        for (i64 a = 0; a < q; ++a) ram = std::max(ram, std::abs(rows[a][0] - double(expsums::ramanujan_sum(a, q))));
    }
    const i64 samples[][2] = {{1, 1}, {2, 3}, {0, 5}, {7, 0}, {-1, 4}, {11, 13}};
    for (i64 r = 2; r <= 50; ++r)
        for (i64 s = 2; s <= 50; ++s) {
            if (std::gcd(r, s) != 1) continue;
            const i64 rb = arith::mod_inverse(r % s, s), sb = arith::mod_inverse(s % r, r);
            for (const auto& ab : samples) {
                const i64 a = ab[0], b = ab[1];
                const cplx lhs = expsums::kloosterman(a, b, r * s);
                const cplx rhs = expsums::kloosterman(a * sb, b * sb, r) * expsums::kloosterman(a * rb, b * rb, s);
                mult = std::max(mult, std::abs(lhs - rhs));
            }
        }
    const bool ok = sym <= 1e-10 && real <= 1e-10 && mult <= 1e-9 && ram <= 1e-9 && weil <= 1 + 1e-9;
    return {ok, "symmetry " + fmt("%.1e", sym) + ", imag " + fmt("%.1e", real) + ", multiplicativity " + fmt("%.1e", mult) +
                    ", ramanujan " + fmt("%.1e", ram) + ", max |S| / Weil bound " + fmt("%.4f", weil)};
}

std::string criterion3_report(double& worst, bool& ok) {
    std::string out = "[\n";
    worst = 0;
    ok = true;
    bool first = true;
    for (const auto& f : reference_forms())
        for (double X : {20.0, 50.0})
            for (i64 q = 1; q <= 8; ++q)
                for (double u : {0.0, 0.1, -0.1}) {
                    poisson::T1Params p;
                    p.form = f;
                    p.X = X;
                    p.q = q;
                    p.u = u;
                    const poisson::DualSum dual(p);
                    for (i64 a = 1; a <= q; ++a) {
                        if (std::gcd(a, q) != 1) continue;
                        p.a = a;
                        const auto r = poisson::verify_T1(p, dual, 1e-6);
                        worst = std::max(worst, r.rel_err);
                        ok = ok && r.pass;
                        out += (first ? "" : ",\n") + r.to_json();
                        first = false;
                    }
                }
    return out + "\n]\n";
}

std::string criterion4_report(double& worst, bool& ok) {
    std::string out = "[\n";
    worst = 0;
    ok = true;
    bool first = true;
    auto add = [&](const VerificationReport& r) {
        worst = std::max(worst, r.rel_err);
        ok = ok && r.pass;
        out += (first ? "" : ",\n") + r.to_json();
        first = false;
    };
    {
        const voronoi::VoronoiEngine eng(standard_bump(1e3, 2e3), 10);
        for (i64 q : {1, 2, 3, 5, 7, 10})
            for (i64 a = 1; a <= q; ++a)
                if (std::gcd(a, q) == 1) add(voronoi::verify_voronoi(eng, a, q, 1e-4));
    }
    {
        const voronoi::VoronoiEngine eng(standard_bump(1e4, 2e4), 7);
        for (i64 a = 1; a < 7; ++a) add(voronoi::verify_voronoi(eng, a, 7, 1e-4));
    }
    return out + "\n]\n";
}

Outcome criterion5() {
    const auto s = delta::build_scheme(10000);
    std::vector<i64> ns;
    for (i64 n = -100; n <= 100; ++n) ns.push_back(n);
    const auto v = delta::delta_eval_many(s, ns);
    double worst = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) worst = std::max(worst, std::abs(v[i] - (ns[i] == 0 ? 1.0 : 0.0)));
    return {worst <= 1e-3, "max |delta_eval - delta| over |n| <= 100 = " + fmt("%.3e", worst)};
}

Outcome criterion6() {
    using namespace trisum::osc;
    double worst_ratio = 0, worst_shift = 0;
    for (double M : {1.0, 10.0})
        for (double yM : {1e2, 1e3}) {
            const auto g = standard_bump(M, 2 * M);
            const auto ref = G_transform(0, yM / M, divisor_params(), g, Variant::H).value;
            const auto asym = G0_asymptotic(yM / M, g, 4).value;
            const double rel = std::abs(asym - ref) / std::abs(ref);
            worst_ratio = std::max(worst_ratio, rel / (50 * std::pow(yM, -2.0 / 3)));
        }
    const auto h = standard_bump(1, 2);
    for (Variant v : {Variant::G, Variant::H})
        for (double y : {0.1, 1.0, 10.0})
            for (int l : {0, 1}) {
                ContourOptions a, b;
                b.sigma = a.sigma + 0.2;
                const auto va = G_transform(l, y, divisor_params(), h, v, a).value;
                const auto vb = G_transform(l, y, divisor_params(), h, v, b).value;
                worst_shift = std::max(worst_shift, std::abs(va - vb) / std::max(1.0, std::abs(va)));
            }
    return {worst_ratio <= 1 && worst_shift <= 1e-8,
            "max rel_err / bound = " + fmt("%.2e", worst_ratio) + ", contour shift " + fmt("%.2e", worst_shift)};
}

// Runs the large sieve in a child so its peak resident set is measured alone.
struct SieveRun {
    double secs = -1;
    std::uint64_t mismatches = 1;
    double gib = -1;
};

SieveRun sieve_in_child(std::uint64_t n) {
    int fd[2];
    if (pipe(fd) != 0) return {};
    const pid_t pid = fork();
    if (pid == 0) {
        close(fd[0]);
        SieveRun r;
        try {
            const auto t0 = Clock::now();
            const auto big = arith::D3Table::build(n);
            r.secs = seconds_since(t0);
            r.mismatches = 0;
            for (std::uint64_t m : {n - 11, n, std::uint64_t(73513440)}) r.mismatches += big(m) != arith::d3_pointwise(m);
        } catch (...) {
        }
        (void)!write(fd[1], &r, sizeof r);
        _exit(0);
    }
    close(fd[1]);
    SieveRun r;
    if (read(fd[0], &r, sizeof r) != sizeof r) r = {};
    close(fd[0]);
    int status = 0;
    waitpid(pid, &status, 0);
    rusage u{};
    getrusage(RUSAGE_CHILDREN, &u);
    r.gib = double(u.ru_maxrss) / (1024.0 * 1024.0);
    return r;
}

Outcome criterion7() {
    const auto small = arith::D3Table::build(10000);
    long mismatches = 0;
    for (std::uint64_t n = 1; n <= 10000; ++n) mismatches += small(n) != arith::d3_pointwise(n);
    const auto big = sieve_in_child(100000000);
    return {mismatches == 0 && big.mismatches == 0 && big.secs >= 0 && big.secs <= 120 && big.gib <= 1.0,
            std::to_string(mismatches) + " mismatches to 1e4; N = 1e8 in " + fmt("%.1f", big.secs) + " s, peak RSS " +
                fmt("%.3f", big.gib) + " GiB"};
}

std::string criterion8_report(bool& ok, std::string& detail) {
    experiment::ExperimentConfig cfg;
    const auto r = experiment::error_scan(cfg);
    bool decreasing = true;
    std::string rels;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        if (i > 0 && !(r.rows[i].rel_err < r.rows[i - 1].rel_err)) decreasing = false;
        rels += (i ? " " : "") + fmt("%.3e", r.rows[i].rel_err);
    }
    bool rows_ok = true;
    for (const auto& row : r.rows) rows_ok = rows_ok && row.ok;
    ok = rows_ok && decreasing && r.slope <= 1.9;
    detail = "rel_err " + rels + (decreasing ? " (decreasing)" : " (not decreasing)") + ", slope " + fmt("%.3f", r.slope);
    return experiment::scan_csv(r, false) + experiment::scan_json(r, cfg) + "\n";
}

} // namespace

int main() {
    const std::filesystem::path out = std::filesystem::current_path() / "acceptance_reports";
    int failures = 0;
    auto report = [&](int id, const Outcome& o, double secs) {
        std::printf("criterion %d: %s  %s  [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failures;
    };
    auto timed = [&](int id, const std::function<Outcome()>& f, double budget) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = seconds_since(t0);
        if (budget > 0 && secs > budget) {
            o.pass = false;
            o.detail += ", over the " + fmt("%.0f", budget) + " s budget";
        }
        report(id, o, secs);
    };

    timed(1, criterion1, 60);
    timed(2, criterion2, 120);

    std::string r3[2], r4[2], r8[2];
    timed(3, [&] {
        double worst;
        bool ok;
        r3[0] = criterion3_report(worst, ok);
        write_file(out / "run1" / "poisson.json", r3[0]);
        return Outcome{ok, "max rel deviation " + fmt("%.3e", worst)};
    }, 300);
    timed(4, [&] {
        double worst;
        bool ok;
        r4[0] = criterion4_report(worst, ok);
        write_file(out / "run1" / "voronoi.json", r4[0]);
        return Outcome{ok, "max rel deviation " + fmt("%.3e", worst)};
    }, 600);
    timed(5, criterion5, 120);
    timed(6, criterion6, 120);
    timed(7, criterion7, 0);
    timed(8, [&] {
        bool ok;
        std::string detail;
        r8[0] = criterion8_report(ok, detail);
        write_file(out / "run1" / "scan.txt", r8[0]);
        return Outcome{ok, detail};
    }, 1800);
    timed(9, [&] {
        double w;
        bool ok;
        std::string d;
        write_file(out / "run2" / "poisson.json", criterion3_report(w, ok));
        write_file(out / "run2" / "voronoi.json", criterion4_report(w, ok));
        write_file(out / "run2" / "scan.txt", criterion8_report(ok, d));
        std::string differ;
        for (const char* name : {"poisson.json", "voronoi.json", "scan.txt"}) {
            const auto a = read_file(out / "run1" / name), b = read_file(out / "run2" / name);
            if (a.empty() || a != b) differ += std::string(differ.empty() ? "" : ", ") + name;
        }
        return Outcome{differ.empty(), differ.empty() ? "poisson, voronoi and scan reports byte-identical"
                                                      : "reports differ: " + differ};
    }, 0);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
