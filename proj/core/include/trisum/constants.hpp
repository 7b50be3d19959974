#pragma once

namespace trisum {

struct Constants {
    // Frozen values; reproduced to 12 digits by stieltjes_em.
    static constexpr double euler_gamma = 0.57721566490153286;
    static constexpr double stieltjes_gamma1 = -0.072815845483676725;
    static constexpr int digits = 15;
};

// gamma_n = lim (sum_{k<=N} (log k)^n / k - (log N)^{n+1}/(n+1)), evaluated by Euler-Maclaurin
// with cutoff N and `terms` Bernoulli corrections. n = 0 gives Euler's constant.
double stieltjes_em(int n, int cutoff = 64, int terms = 10);

} // namespace trisum
