#pragma once

#include "trisum/bump.hpp"
#include "trisum/expsums.hpp"
#include "trisum/kahan.hpp"
#include "trisum/quadratic_form.hpp"
#include "trisum/report.hpp"

#include <cstdint>
#include <vector>

namespace trisum::poisson {

using i64 = std::int64_t;

struct T1Params {
    QuadraticForm form{1, 1, 0};
    i64 a = 1;
    i64 q = 1;
    double u = 0;
    double X = 20;
    // Qcal = 0 means Qcal = X.
    double Qcal = 0;
    // Dual sum stops once a frequency shell adds less than this, relative to the running total.
    double shell_tol = 1e-10;
    int max_shell = 2000;
    BumpFunction W1 = weight_W1();
    BumpFunction W2 = weight_W2();

    double qcal() const { return Qcal > 0 ? Qcal : X; }
    void validate() const;
};

// sum_{n1, n2} e(-a Q(n) / q) e(-u Q(n) / (q Qcal)) W1(n1 / X) W2(n2 / X)
cplx T1_direct(const T1Params& p);

struct T1Dual {
    cplx value;
    // Largest max(|m1|, |m2|) summed, and the starting cutoff ceil(10 q / X) + 3.
    i64 shells = 0;
    i64 initial_cutoff = 0;
    int grid_nodes = 0;
};

// Dual side for fixed (form, X, q, u); the J grid and the shell cutoff are shared by every a.
class DualSum {
public:
    explicit DualSum(const T1Params& p);
    // (X^2 / q^2) sum_m C(m1, m2, a, q) J(m1, m2, u, q); C by brute force or closed form.
    T1Dual operator()(i64 a, expsums::Mode mode = expsums::Mode::Brute) const;
    i64 shells() const { return shells_; }

private:
    T1Params p_;
    i64 shells_ = 0, initial_ = 0;
    int nodes_ = 0;
    std::vector<std::vector<cplx>> J_; // indexed [m1 + S][m2 + S]
};

// Shells stop once max |J| over two consecutive shells is below shell_tol times its peak.
T1Dual T1_dual(const T1Params& p, expsums::Mode mode = expsums::Mode::Brute);

VerificationReport verify_T1(const T1Params& p, double tol);
VerificationReport verify_T1(const T1Params& p, const DualSum& dual, double tol);

} // namespace trisum::poisson
