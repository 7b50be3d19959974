#include "trisum/cgamma.hpp"

#include <cmath>
#include <numbers>

namespace trisum {

namespace {

// B_{2k} / (2k (2k-1))
constexpr double kStirling[] = {1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188,
                                -691.0 / 360360, 1.0 / 156, -3617.0 / 122400, 43867.0 / 244188};

} // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    using C = std::complex<double>;
    C shift = 0.0;
    // Push to |z| >= 10 along the real axis.
    while (std::abs(z) < 10.0 || z.real() < 0.5) {
        shift += std::log(z);
        z += 1.0;
    }
    const C zi = 1.0 / z, zi2 = zi * zi;
    C series = 0.0, p = zi;
    for (double c : kStirling) {
        series += c * p;
        p *= zi2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series - shift;
}

} // namespace trisum
