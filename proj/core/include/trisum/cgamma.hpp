#pragma once

#include <complex>

namespace trisum {

// log Gamma(z) for Re z > -20 away from the poles; branch is not the principal one in general,
// exp(log_gamma(z)) is exact.
std::complex<double> log_gamma(std::complex<double> z);

} // namespace trisum
