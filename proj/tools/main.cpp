#include "trisum/arith.hpp"
#include "trisum/config.hpp"
#include "trisum/delta.hpp"
#include "trisum/errors.hpp"
#include "trisum/experiment.hpp"
#include "trisum/expsums.hpp"
#include "trisum/parallel.hpp"
#include "trisum/poisson.hpp"
#include "trisum/sieve.hpp"
#include "trisum/transforms.hpp"
#include "trisum/voronoi.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace trisum;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerifyFail = 2;

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

std::vector<double> parse_doubles(const std::string& s, std::size_t n, const char* what) {
    auto parts = split(s);
    if (parts.size() != n) throw ConfigError(std::string(what) + ": expected " + std::to_string(n) + " comma-separated values");
    std::vector<double> v;
    for (auto& p : parts) v.push_back(std::stod(p));
    return v;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ResourceError("cannot write " + path);
    f << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Divisor-function sums over binary quadratic forms: identities, transforms and error scans"};
    app.require_subcommand(1);
    int code = kOk;

    // sieve
    auto* sieve = app.add_subcommand("sieve", "Tabulate d3(n) up to N");
    std::uint64_t sieve_n = 0;
    std::string sieve_out;
    sieve->add_option("--n", sieve_n, "Upper bound N")->required();
    sieve->add_option("--out", sieve_out, "Output file")->required();
    sieve->callback([&] {
        auto t = arith::D3Table::build(sieve_n);
        t.save(sieve_out);
        std::uint32_t mx = 0;
        for (auto v : t.values()) mx = std::max(mx, v);
        std::cout << "n=" << t.size() << " max_d3=" << mx << " out=" << sieve_out << "\n";
    });

    // sums
    auto* sums = app.add_subcommand("sums", "Exponential sums");
    sums->require_subcommand(1);
    auto* kl = sums->add_subcommand("kloosterman", "S(a, b; q)");
    std::int64_t kl_a = 0, kl_b = 0, kl_q = 0;
    kl->add_option("--a", kl_a)->required();
    kl->add_option("--b", kl_b)->required();
    kl->add_option("--q", kl_q)->required();
    kl->callback([&] {
        auto v = expsums::kloosterman(kl_a, kl_b, kl_q);
        std::printf("%.15g %.15g\n", v.real(), v.imag());
    });
    auto* ga = sums->add_subcommand("gauss", "Quadratic Gauss sum of a binary form");
    std::string ga_form = "1,1,0", ga_m = "0,0", ga_mode = "closed";
    std::int64_t ga_a = 1, ga_q = 1;
    ga->add_option("--form", ga_form)->required();
    ga->add_option("--m", ga_m)->required();
    ga->add_option("--a", ga_a)->required();
    ga->add_option("--q", ga_q)->required();
    ga->add_option("--mode", ga_mode)->check(CLI::IsMember({"brute", "closed"}));
    ga->callback([&] {
        auto f = QuadraticForm::parse(ga_form);
        auto m = parse_doubles(ga_m, 2, "--m");
        const auto m1 = static_cast<std::int64_t>(m[0]), m2 = static_cast<std::int64_t>(m[1]);
        auto v = ga_mode == "brute" ? expsums::gauss_sum_brute(f, m1, m2, ga_a, ga_q)
                                    : expsums::gauss_sum_closed(f, m1, m2, ga_a, ga_q);
        std::printf("%.15g %.15g\n", v.real(), v.imag());
    });

    // verify
    auto* verify = app.add_subcommand("verify", "Check an identity numerically");
    verify->require_subcommand(1);
    auto* vd = verify->add_subcommand("delta", "Reconstruct delta(n) from its Fourier expansion");
    std::int64_t vd_L = 0, vd_nmax = 0;
    double vd_tol = 1e-3;
    vd->add_option("--L", vd_L)->required();
    vd->add_option("--nmax", vd_nmax)->required();
    vd->add_option("--tol", vd_tol);
    vd->callback([&] {
        auto s = delta::build_scheme(vd_L);
        std::vector<std::int64_t> ns;
        for (std::int64_t n = -vd_nmax; n <= vd_nmax; ++n) ns.push_back(n);
        auto vals = delta::delta_eval_many(s, ns);
        double worst = 0;
        std::cout << "n,delta_eval,abs_error\n";
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const double err = std::abs(vals[i] - (ns[i] == 0 ? 1.0 : 0.0));
            worst = std::max(worst, err);
            std::printf("%lld,%.12e,%.6e\n", static_cast<long long>(ns[i]), vals[i], err);
        }
        if (worst > vd_tol) code = kVerifyFail;
    });

    auto* vv = verify->add_subcommand("voronoi", "Voronoi summation for d3 twisted by e(an/q)");
    std::int64_t vv_q = 1, vv_a = 1;
    std::string vv_support;
    double vv_tol = 1e-4, vv_ycut = 2e6;
    vv->add_option("--q", vv_q)->required();
    vv->add_option("--a", vv_a)->required();
    vv->add_option("--support", vv_support, "N,2N")->required();
    vv->add_option("--tol", vv_tol);
    vv->add_option("--y-cut", vv_ycut, "Dual terms kept while n1^2 n2/q^3 <= y_cut/N");
    vv->callback([&] {
        auto sp = parse_doubles(vv_support, 2, "--support");
        voronoi::VoronoiOptions opt;
        opt.y_cut = vv_ycut;
        auto r = voronoi::verify_voronoi(standard_bump(sp[0], sp[1]), vv_a, vv_q, vv_tol, opt);
        nlohmann::ordered_json j;
        j["lhs_re"] = r.direct.real();
        j["lhs_im"] = r.direct.imag();
        j["rhs_re"] = r.dual.real();
        j["rhs_im"] = r.dual.imag();
        j["abs_err"] = r.abs_err;
        j["rel_err"] = r.rel_err;
        j["n2_terms"] = static_cast<long long>(r.metadata["n2_terms"]);
        auto mt = nlohmann::ordered_json::array();
        for (const auto& t : r.main_terms) mt.push_back({t.real(), t.imag()});
        j["main_terms"] = mt;
        j["tolerance"] = r.tolerance;
        j["pass"] = r.pass;
        std::cout << j.dump(2) << "\n";
        if (!r.pass) code = kVerifyFail;
    });

    auto* vp = verify->add_subcommand("poisson", "Poisson summation for the twisted lattice sum");
    std::string vp_form = "1,1,0";
    double vp_X = 20, vp_u = 0, vp_tol = 1e-6;
    std::int64_t vp_q = 1, vp_a = 1;
    vp->add_option("--form", vp_form)->required();
    vp->add_option("--X", vp_X)->required();
    vp->add_option("--q", vp_q)->required();
    vp->add_option("--a", vp_a)->required();
    vp->add_option("--u", vp_u)->required();
    vp->add_option("--tol", vp_tol);
    vp->callback([&] {
        poisson::T1Params p;
        p.form = QuadraticForm::parse(vp_form);
        p.X = vp_X;
        p.q = vp_q;
        p.a = vp_a;
        p.u = vp_u;
        auto r = poisson::verify_T1(p, vp_tol);
        std::cout << r.to_json() << "\n";
        if (!r.pass) code = kVerifyFail;
    });

    // transform
    auto* tr = app.add_subcommand("transform", "Oscillatory transforms");
    tr->require_subcommand(1);
    auto* tg = tr->add_subcommand("g0", "Large-argument expansion of G_0 against the contour integral");
    double tg_y = 1, tg_M = 100, tg_tol = -1;
    int tg_k = 4;
    tg->add_option("--y", tg_y)->required();
    tg->add_option("--M", tg_M)->required();
    tg->add_option("--k", tg_k)->required();
    tg->add_option("--tol", tg_tol, "Fail when the relative error exceeds this");
    tg->callback([&] {
        auto g = standard_bump(tg_M, 2 * tg_M);
        auto asym = osc::G0_asymptotic(tg_y, g, tg_k);
        auto ref = osc::G_transform(0, tg_y, osc::divisor_params(), g, osc::Variant::H);
        const double err = std::abs(asym.value - ref.value) / std::abs(ref.value);
        std::cout << "y,M,k,value,reference,rel_error\n";
        std::printf("%.17g,%.17g,%d,%.17g,%.17g,%.6e\n", tg_y, tg_M, tg_k, asym.value.real(), ref.value.real(), err);
        if (tg_tol > 0 && err > tg_tol) code = kVerifyFail;
    });
    auto* tc = tr->add_subcommand("contour", "G_l on two contours");
    double tc_y = 1, tc_tol = 1e-8, tc_sigma = -0.5;
    int tc_l = 0;
    std::string tc_alpha = "0,0,0";
    tc->add_option("--y", tc_y)->required();
    tc->add_option("--l", tc_l)->required()->check(CLI::Range(0, 1));
    tc->add_option("--alpha", tc_alpha);
    tc->add_option("--sigma", tc_sigma);
    tc->add_option("--tol", tc_tol);
    tc->callback([&] {
        auto a = parse_doubles(tc_alpha, 3, "--alpha");
        osc::LanglandsParams p = osc::divisor_params();
        p.alpha = {a[0], a[1], a[2]};
        p.within_jacquet_shalika = std::abs(a[0]) < 0.5 && std::abs(a[1]) < 0.5 && std::abs(a[2]) < 0.5;
        auto h = standard_bump(1, 2);
        std::cout << "sigma,value_re,value_im,error\n";
        cplx first;
        for (int i = 0; i < 2; ++i) {
            osc::ContourOptions o;
            o.sigma = tc_sigma + 0.2 * i;
            auto v = osc::G_transform(tc_l, tc_y, p, h, osc::Variant::G, o);
            if (i == 0) first = v.value;
            std::printf("%.3f,%.17g,%.17g,%.6e\n", o.sigma, v.value.real(), v.value.imag(), v.error);
            if (i == 1) {
                const double d = std::abs(v.value - first) / std::max(1.0, std::abs(first));
                std::printf("shift,%.6e\n", d);
                if (d > tc_tol) code = kVerifyFail;
            }
        }
    });

    // experiment
    auto* ex = app.add_subcommand("experiment", "Error scan of S against its main term over X");
    std::string ex_config;
    bool ex_no_timing = false;
    ex->add_option("--config", ex_config)->required()->check(CLI::ExistingFile);
    ex->add_flag("--no-timing", ex_no_timing, "Write 0 in the runtime column");
    ex->callback([&] {
        auto cfg = experiment::ExperimentConfig::load(ex_config);
        auto res = experiment::error_scan(cfg);
        const auto csv = experiment::scan_csv(res, !ex_no_timing);
        std::cout << csv;
        if (!cfg.csv.empty()) write_file(cfg.csv, csv);
        if (!cfg.json.empty()) write_file(cfg.json, experiment::scan_json(res, cfg) + "\n");
        for (const auto& r : res.rows)
            if (!r.ok) {
                std::cerr << "X=" << r.X << ": " << r.error << "\n";
                code = kVerifyFail;
            }
    });

    // diagnostics
    auto* dg = app.add_subcommand("diagnostics", "Theta, Omega and zero-frequency character sums");
    std::string dg_form = "1,1,0";
    std::int64_t dg_X = 16, dg_n = 1;
    double dg_K = 0;
    dg->add_option("--form", dg_form);
    dg->add_option("--X", dg_X);
    dg->add_option("--n", dg_n);
    dg->add_option("--K", dg_K, "Defaults to X");
    dg->callback([&] {
        experiment::ExperimentConfig cfg;
        cfg.form = QuadraticForm::parse(dg_form);
        auto r = experiment::theta_omega_diagnostics(cfg, dg_X, dg_n, dg_K);
        std::cout << r.to_json() << "\n";
        std::cerr << "threads=" << thread_budget() << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kUsage;
    } catch (const QuadratureFailure& e) {
        std::cerr << "quadrature failure: " << e.what() << "\n";
        return kVerifyFail;
    } catch (const TruncationFailure& e) {
        std::cerr << "truncation failure: " << e.what() << "\n";
        return kVerifyFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return code;
}
