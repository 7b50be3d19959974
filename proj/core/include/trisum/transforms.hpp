#pragma once

#include "trisum/bump.hpp"
#include "trisum/kahan.hpp"

#include <array>
#include <memory>
#include <vector>

namespace trisum::osc {

struct LanglandsParams {
    cplx nu1 = 1.0 / 3, nu2 = 1.0 / 3;
    std::array<cplx, 3> alpha{0.0, 0.0, 0.0};
    // |Re alpha_j| < 1/2
    bool within_jacquet_shalika = true;
};

LanglandsParams langlands_from_nu(cplx nu1, cplx nu2);
LanglandsParams divisor_params();

// int h(y) y^{s-1} (log y)^j dy
cplx mellin_logj(const BumpFunction& h, int j, cplx s);

enum class Variant { G, H };

struct ContourOptions {
    double sigma = -0.5;
    double tail = 1e-14;
    double dt = 0.05;
};

struct TransformValue {
    cplx value;
    double error = 0;
};

// (1/2 pi i) int_(sigma) (pi^3 y)^{-s} Gamma-ratio * Mellin factor ds.
// The H variant with l = 1 is integrated on the equivalent line sigma - 1.
TransformValue G_transform(int l, double y, const LanglandsParams& p, const BumpFunction& h, Variant v,
                           const ContourOptions& opt = {});
// (G_0 -+ i G_1) / (2 pi^{3/2}); sign = +1 gives G_+.
TransformValue G_pm(int sign, double y, const LanglandsParams& p, const BumpFunction& h, Variant v,
                    const ContourOptions& opt = {});

// H_0, H_1 on a uniform grid in log(pi^3 y), one FFT per l; the transforms depend on h only.
class HTable {
public:
    HTable(const BumpFunction& h, double y_min, double y_max, const ContourOptions& opt = {});
    cplx H0(double y) const;
    cplx H1(double y) const;
    cplx Hpm(int sign, double y) const;
    double y_min() const { return y_min_; }
    double y_max() const { return y_max_; }
    double t_max() const { return t_max_; }

private:
    cplx interp(const std::vector<cplx>& tab, double sigma, double y) const;
    double y_min_, y_max_, xi0_, dxi_, sigma_, t_max_ = 0;
    std::vector<cplx> h0_, h1_;
};

// Coefficients c_j, d_j (j = 1..k) of the large-argument expansion of the G_0 kernel,
// from the formal solution of the kernel's differential equation. Only alpha = (0,0,0).
struct AsymptoticCoefficients {
    std::vector<double> c, d;
    double exponent = 2.0;
};
AsymptoticCoefficients asymptotic_coefficients(int k, const LanglandsParams& p = divisor_params());

// Least-squares fit of c_j, d_j for 2 <= j <= k against G_transform with c_1, d_1 pinned.
AsymptoticCoefficients fit_asymptotic_coefficients(const BumpFunction& g, const std::vector<double>& ys, int k);

// k-term expansion; requires y * M >= 10 where supp g = [M, 2M].
TransformValue G0_asymptotic(double y, const BumpFunction& g, int k, const LanglandsParams& p = divisor_params(),
                             const AsymptoticCoefficients* coeffs = nullptr);

} // namespace trisum::osc
