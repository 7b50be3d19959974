#include "trisum/poisson.hpp"
#include "trisum/errors.hpp"
#include "trisum/expsums.hpp"
#include "trisum/phase_integrals.hpp"

#include <cmath>
#include <map>
#include <numeric>

namespace trisum::poisson {

void T1Params::validate() const {
    if (q < 1) throw DomainError("T1: q must be positive");
    if (std::gcd(a, q) != 1) throw DomainError("T1: gcd(a, q) must be 1");
    if (!(X >= 4)) throw DomainError("T1: X must be at least 4");
}

cplx T1_direct(const T1Params& p) {
    p.validate();
    if (p.W1.is_zero() || p.W2.is_zero()) return 0.0;
    const auto lo1 = static_cast<i64>(std::ceil(p.W1.lo() * p.X)), hi1 = static_cast<i64>(std::floor(p.W1.hi() * p.X));
    const auto lo2 = static_cast<i64>(std::ceil(p.W2.lo() * p.X)), hi2 = static_cast<i64>(std::floor(p.W2.hi() * p.X));
    const double c = p.u / (static_cast<double>(p.q) * p.qcal());
    KahanComplex acc;
    for (i64 n1 = lo1; n1 <= hi1; ++n1) {
        const double w1 = p.W1(static_cast<double>(n1) / p.X);
        if (w1 == 0) continue;
        for (i64 n2 = lo2; n2 <= hi2; ++n2) {
            const double w2 = p.W2(static_cast<double>(n2) / p.X);
            if (w2 == 0) continue;
            const i64 Qn = p.form(n1, n2);
            acc += w1 * w2 * e_frac(-((p.a % p.q) * (Qn % p.q)) % p.q, p.q) * e_real(-c * static_cast<double>(Qn));
        }
    }
    return acc.value();
}

DualSum::DualSum(const T1Params& p) : p_(p) {
    p.validate();
    initial_ = static_cast<i64>(std::ceil(10.0 * static_cast<double>(p.q) / p.X)) + 3;
    if (p.W1.is_zero() || p.W2.is_zero()) return;
    phase::PhaseSetup ps = phase::make_setup(p.form, p.X, p.qcal());
    ps.W1 = p.W1;
    ps.W2 = p.W2;
    // The grid resolves frequencies up to nodes / 4; refine and start over if the shells get there.
    const double per_shell = p.X / static_cast<double>(p.q);
    for (int nodes = 512;; nodes *= 2) {
        const phase::JGrid J(ps, p.q, p.u, nodes);
        const double limit = J.nodes() / 4.0;
        std::vector<std::vector<cplx>> rows;
        double peak = 0;
        int quiet = 0;
        bool aliased = false;
        std::map<std::pair<i64, i64>, cplx> vals;
        i64 s = 0;
        for (;; ++s) {
            if (s > p.max_shell) throw TruncationFailure("T1_dual: frequency shells did not converge", 0.0, s);
            if (static_cast<double>(s) * per_shell > limit) {
                aliased = true;
                break;
            }
            double shell_max = 0;
            auto visit = [&](i64 m1, i64 m2) {
                const cplx v = J(m1, m2);
                vals[{m1, m2}] = v;
                shell_max = std::max(shell_max, std::abs(v));
            };
            if (s == 0) {
                visit(0, 0);
            } else {
                for (i64 k = -s; k <= s; ++k) {
                    visit(k, s);
                    visit(k, -s);
                }
                for (i64 k = -s + 1; k <= s - 1; ++k) {
                    visit(s, k);
                    visit(-s, k);
                }
            }
            peak = std::max(peak, shell_max);
            if (s < initial_) continue;
            quiet = shell_max <= p.shell_tol * peak ? quiet + 1 : 0;
            if (quiet >= 2) break;
        }
        if (aliased) continue;
        shells_ = s;
        nodes_ = J.nodes();
        J_.assign(static_cast<std::size_t>(2 * s + 1), std::vector<cplx>(static_cast<std::size_t>(2 * s + 1)));
        for (const auto& [m, v] : vals) J_[static_cast<std::size_t>(m.first + s)][static_cast<std::size_t>(m.second + s)] = v;
        return;
    }
}

T1Dual DualSum::operator()(i64 a, expsums::Mode mode) const {
    T1Params p = p_;
    p.a = a;
    p.validate();
    T1Dual out;
    out.initial_cutoff = initial_;
    out.shells = shells_;
    out.grid_nodes = nodes_;
    if (J_.empty()) return out;
    const i64 q = p.q, S = shells_;
    std::vector<cplx> C(static_cast<std::size_t>(q * q));
    for (i64 r1 = 0; r1 < q; ++r1)
        for (i64 r2 = 0; r2 < q; ++r2)
            C[static_cast<std::size_t>(r1 * q + r2)] = expsums::char_C(p.form, r1, r2, a, q, mode);
    // shell order, so the summation order does not depend on S
    KahanComplex total;
    auto add = [&](i64 m1, i64 m2) {
        const cplx c = C[static_cast<std::size_t>(((m1 % q + q) % q) * q + ((m2 % q + q) % q))];
        total += c * J_[static_cast<std::size_t>(m1 + S)][static_cast<std::size_t>(m2 + S)];
    };
    for (i64 s = 0; s <= S; ++s) {
        if (s == 0) {
            add(0, 0);
            continue;
        }
        for (i64 k = -s; k <= s; ++k) {
            add(k, s);
            add(k, -s);
        }
        for (i64 k = -s + 1; k <= s - 1; ++k) {
            add(s, k);
            add(-s, k);
        }
    }
    out.value = p.X * p.X / static_cast<double>(q * q) * total.value();
    return out;
}

T1Dual T1_dual(const T1Params& p, expsums::Mode mode) { return DualSum(p)(p.a, mode); }

VerificationReport verify_T1(const T1Params& p, double tol) { return verify_T1(p, DualSum(p), tol); }

VerificationReport verify_T1(const T1Params& p, const DualSum& dual, double tol) {
    VerificationReport rep;
    rep.identity = "poisson_T1";
    rep.direct = T1_direct(p);
    const T1Dual d = dual(p.a);
    rep.dual = d.value;
    rep.abs_err = std::abs(rep.direct - rep.dual);
    rep.rel_err = rep.abs_err / (1.0 + std::abs(rep.direct));
    rep.tolerance = tol;
    rep.pass = rep.rel_err <= tol;
    rep.metadata["X"] = p.X;
    rep.metadata["q"] = static_cast<double>(p.q);
    rep.metadata["a"] = static_cast<double>(p.a);
    rep.metadata["u"] = p.u;
    rep.metadata["Qcal"] = p.qcal();
    rep.metadata["initial_cutoff"] = static_cast<double>(d.initial_cutoff);
    rep.metadata["shells"] = static_cast<double>(d.shells);
    rep.metadata["grid_nodes"] = d.grid_nodes;
    return rep;
}

} // namespace trisum::poisson
