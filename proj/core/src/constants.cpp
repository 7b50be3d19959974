#include "trisum/constants.hpp"

#include <cmath>
#include <vector>

namespace trisum {

namespace {

// B_2, B_4, ..., B_24
constexpr double kBernoulli[] = {
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730,
    7.0 / 6, -3617.0 / 510, 43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730};

double poly_eval(const std::vector<double>& c, double x) {
    double r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

} // namespace

double stieltjes_em(int n, int cutoff, int terms) {
    const double big_n = cutoff;
    const double lg = std::log(big_n);
    long double sum = 0;
    for (int k = 1; k < cutoff; ++k) sum += std::pow(std::log(static_cast<long double>(k)), n) / k;
    sum += 0.5L * std::pow(lg, n) / big_n;
    sum -= std::pow(static_cast<long double>(lg), n + 1) / (n + 1);

    // f^{(k)}(x) = x^{-1-k} P_k(log x), P_0 = L^n, P_{k+1} = -(1+k) P_k + P_k'.
    std::vector<double> poly(n + 1, 0.0);
    poly[n] = 1.0;
    double fact = 1.0; // (2i)!
    for (int k = 0, i = 1; i <= terms && i <= 12; ++k) {
        std::vector<double> next(poly.size(), 0.0);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j] -= (1.0 + k) * poly[j];
            if (j > 0) next[j - 1] += static_cast<double>(j) * poly[j];
        }
        poly = next;
        const int order = k + 1;
        if (order == 2 * i - 1) {
            fact *= (2.0 * i - 1) * (2.0 * i);
            const double deriv = std::pow(big_n, -1.0 - order) * poly_eval(poly, lg);
            sum -= kBernoulli[i - 1] / fact * deriv;
            ++i;
        }
    }
    return static_cast<double>(sum);
}

} // namespace trisum
