#pragma once

#include "trisum/bump.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace trisum::delta {

struct DeltaConfig {
    double x_window = 6.0;
    double q_max_factor = 2.0;
    double tol = 1e-10;
};

// Fourier expansion of delta(n) for |n| <= 2L with modulus scale Q_cal = 2 sqrt(L).
// w is the standard bump on [Q_cal/2, Q_cal] normalised by sum_{r >= 1} w(r) = 1.
struct DeltaScheme {
    std::int64_t L = 0;
    double Q_cal = 0;
    BumpFunction w;
    double w_norm = 1;
    std::int64_t q_max = 0;
    double x_window = 6.0;
    double tol = 1e-10;

    double weight(double r) const { return w(r) / w_norm; }
};

DeltaScheme build_scheme(std::int64_t L, const DeltaConfig& cfg = {});

// Delta_q(u) = sum_j (qj)^{-1} [w(qj) - w(|u|/(qj))]; sum_q c_q(n) Delta_q(n) = delta(n) for every n.
double Delta_q(const DeltaScheme& s, std::int64_t q, double u);
// Smooth cut-off: 1 on |u| <= 2L, 0 beyond 4L.
double phi_cut(const DeltaScheme& s, double u);

// psi(q, x) = int Delta_q(u) phi(u) e(-u x / (q Q_cal)) du, so that
// Delta_q(n) = (q Q_cal)^{-1} int psi(q, x) e(n x / (q Q_cal)) dx on |n| <= 2L.
double psi_eval(const DeltaScheme& s, std::int64_t q, double x);
std::vector<double> psi_eval_many(const DeltaScheme& s, std::int64_t q, const std::vector<double>& xs);

// Smooth x-window: 1 on |x| <= x_window, 0 beyond 2 x_window.
double U_window(const DeltaScheme& s, double x);

// (1/Q) sum_q q^{-1} c_q(n) int U(x) psi(q, x) e(n x / (q Q)) dx.
// The x-integral is exchanged with the u-integral of psi, leaving the transform of U against Delta_q phi.
std::vector<double> delta_eval_many(const DeltaScheme& s, const std::vector<std::int64_t>& ns);
double delta_eval(const DeltaScheme& s, std::int64_t n);

// Same sum with psi evaluated pointwise and the x-integral done adaptively; slow.
double delta_eval_direct(const DeltaScheme& s, std::int64_t n);

// int psi(q, x) U(x) e(-x r / (q Q_cal)) dx for real r, tabulated on |r| <= r_max; even in r.
class PsiWindowTransform {
public:
    PsiWindowTransform(const DeltaScheme& s, std::int64_t q, double r_max);
    double operator()(double r) const;
    double r_max() const { return r_max_; }
    // Beyond this |r| the transform vanishes to round-off.
    double support() const { return support_; }

private:
    double step_ = 1, r_max_ = 0, support_ = 0;
    std::vector<double> tab_;
};

// Same quantity by direct summation over the psi nodes; reference for the table.
double psi_window_transform_direct(const DeltaScheme& s, std::int64_t q, double r);

// int |psi| and int psi^2 over the x window.
std::pair<double, double> psi_norms(const DeltaScheme& s, std::int64_t q);

} // namespace trisum::delta
