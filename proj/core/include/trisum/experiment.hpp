#pragma once

#include "trisum/bump.hpp"
#include "trisum/config.hpp"
#include "trisum/delta.hpp"
#include "trisum/kahan.hpp"
#include "trisum/quadratic_form.hpp"
#include "trisum/sieve.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace trisum::experiment {

using i64 = std::int64_t;

// Everything that depends on X: weights, the V plateau and the delta scheme.
struct ExperimentSetup {
    QuadraticForm form;
    i64 X = 0;
    Weights weights = Weights::Smooth;
    BumpFunction W1, W2;
    // Range of Q(x, y) over the weight support in units of X^2; V is identically 1 on it.
    double Qmin = 0, Qmax = 0;
    BumpFunction V;
    delta::DeltaScheme scheme;
    i64 q_max = 0;
    double x_window = 6.0;
};

ExperimentSetup make_setup(const QuadraticForm& f, i64 X, Weights w = Weights::Smooth, QcalPolicy qcal = QcalPolicy::Span,
                           i64 q_max = 0, double x_window = 6.0);

// min and max of Q over [lo1, hi1] x [lo2, hi2].
std::pair<double, double> form_range(const QuadraticForm& f, double lo1, double hi1, double lo2, double hi2);

// sum_n W1(n1/X) W2(n2/X) d3(Q(n)); sharp weights use the box [1, X]^2.
double compute_S_direct(const ExperimentSetup& s, const arith::D3Table& d3);
double compute_S_direct(const QuadraticForm& f, i64 X, Weights w);
// Same sum with pointwise d3; slow reference.
double compute_S_direct_pointwise(const QuadraticForm& f, i64 X, Weights w);

// Main-term density: kappa (R2 + R1 log r + R0 log^2 r).
double main_density(i64 q, double r);

// G_q(s) = int V(r/X^2) K_q(r) Delta_q(r - s) dr, tabulated on a uniform grid by one FFT correlation.
class KernelTable {
public:
    KernelTable(const ExperimentSetup& s, i64 q, double s_lo, double s_hi);
    double operator()(double s) const;
    double step() const { return h_; }

private:
    double h_ = 1, s0_ = 0;
    std::vector<double> tab_;
};

// Adaptive quadrature of the same integral; reference for the table.
double kernel_direct(const ExperimentSetup& s, i64 q, double sv);

struct MainResult {
    double value = 0;
    i64 q_terms = 0;
    std::vector<double> q_blocks;
};

MainResult compute_S_main(const ExperimentSetup& s, MainRoute route = MainRoute::Lattice, int threads = 0);

struct ScanRow {
    i64 X = 0;
    double S_direct = 0, S_main = 0, abs_err = 0, rel_err = 0, runtime_sec = 0;
    i64 q_max = 0, L = 0;
    double Q_cal = 0;
    bool ok = true;
    std::string error;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    double slope = 0;
};

ScanResult error_scan(const ExperimentConfig& cfg);
// Header, one line per row, then "slope,<value>". With timing off the runtime column is 0.
std::string scan_csv(const ScanResult& r, bool timing = true);
// Runtime-free JSON summary of the scan.
std::string scan_json(const ScanResult& r, const ExperimentConfig& cfg);
// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct SZeroRow {
    i64 q = 0, m1 = 0, m2 = 0, m1p = 0, m2p = 0;
    double abs_value = 0;
    double envelope = 0;
    i64 admissible_pairs = 0;
    i64 case_one_counterexamples = 0;
};

struct DiagnosticsReport {
    i64 X = 0, n = 0;
    double K = 0;
    double theta = 0, theta_one = 0, theta_envelope = 0;
    cplx omega_sample;
    std::vector<SZeroRow> s_zero;

    std::string to_json() const;
};

// sum_{m <= K/n^2} |B(n, m)|^2 / m^{2/3}
double theta_sum(i64 n, double K);

// Theta(n) with K = X, an Omega sample with trivial moduli, and the
// m = 0 character sums against their divisor envelope.
DiagnosticsReport theta_omega_diagnostics(const ExperimentConfig& cfg, i64 X, i64 n, double K = 0);

} // namespace trisum::experiment
