#pragma once

#include "trisum/bump.hpp"
#include "trisum/delta.hpp"
#include "trisum/kahan.hpp"
#include "trisum/quadratic_form.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace trisum::phase {

using i64 = std::int64_t;

// Shared parameters of the phase integrals. The delta variable is called u throughout.
struct PhaseSetup {
    QuadraticForm form{1, 1, 0};
    double X = 16;
    double Qcal = 16;
    BumpFunction W1 = weight_W1();
    BumpFunction W2 = weight_W2();
    BumpFunction V = weight_V();
};

PhaseSetup make_setup(const QuadraticForm& f, double X);
PhaseSetup make_setup(const QuadraticForm& f, double X, double Qcal);

// K = q^3 / X^2 + X |u|^3
double K_threshold(i64 q, double X, double u);

// -(2 pi^3 / sqrt(3 pi)) int V^{sign}(z) z^{-1/3} e(X^2 z u / (q Qcal) + sign 3 (X^2 z n2m)^{1/3} / q) dz
cplx I_pm(int sign, double n2m, double u, i64 q, const PhaseSetup& ps);

// iint W1 W2 e(-(m1 X uu + m2 X vv) / q) e(-u Q(uu X, vv X) / (q Qcal)) by tensor Gauss-Legendre.
cplx J_transform(i64 m1, i64 m2, double u, i64 q, const PhaseSetup& ps);

// J on a trapezoid grid in (uu, vv) for fixed (q, u), all frequencies sharing the grid.
// `nodes` is a lower bound; the grid is refined to resolve the u-phase.
class JGrid {
public:
    JGrid(const PhaseSetup& ps, i64 q, double u, int nodes = 0);
    cplx operator()(i64 m1, i64 m2) const;
    int nodes() const { return n_; }

private:
    const std::vector<cplx>& column(i64 m2) const;
    const PhaseSetup* ps_;
    i64 q_;
    int n_;
    std::vector<double> x_;
    std::vector<cplx> f_; // row-major F(uu_i, vv_j) * h^2
    mutable std::map<i64, std::vector<cplx>> cols_;
};

// The u-integrals below are evaluated with u moved inside: int psi U e(-u r / (q Qcal)) du is the
// tabulated window transform of the delta scheme, evaluated at r = X^2 (Q(uu, vv) - z).
cplx M_integral(i64 m1, i64 m2, i64 q, const PhaseSetup& ps, const delta::DeltaScheme& scheme);
cplx L_pm(int sign, i64 m1, i64 m2, i64 n, double m, i64 q, const PhaseSetup& ps, const delta::DeltaScheme& scheme);

struct ZParams {
    int sign = 1, sign_p = 1;
    i64 m1 = 0, m2 = 0, m1p = 0, m2p = 0;
    i64 n = 1;
    i64 q = 1, qp = 1;
    i64 rho = 1;
    double m = 0;
    double K = 1;
};
// int W(w) L(.., w K / n^2, q) conj(L'(.., w K / n^2, q')) e(-m K w / (n^2 rho)) dw, W the standard bump on [1, 2].
cplx Z_integral(const ZParams& z, const PhaseSetup& ps, const delta::DeltaScheme& scheme);
// M1 = n q1 q2 q2' / K
double M1_threshold(i64 n, i64 q1, i64 q2, i64 q2p, double K);

// int W1(uu) e(sign 3 (X^2 Q(uu, vv) n2m)^{1/3} / q - m1 X uu / q) duu
cplx P_integral(int sign, double n2m, i64 m1, double vv, i64 q, const PhaseSetup& ps);
// sqrt(q) / (X^{1/3} (n2m)^{1/6})
double P_envelope(double n2m, i64 q, double X);

} // namespace trisum::phase
