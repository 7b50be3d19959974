#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace trisum {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Carries the best estimate reached before the budget ran out.
struct QuadratureFailure : std::runtime_error {
    std::complex<double> best_estimate;
    double error_estimate;
    QuadratureFailure(const std::string& what, std::complex<double> best, double err)
        : std::runtime_error(what), best_estimate(best), error_estimate(err) {}
};

struct TruncationFailure : std::runtime_error {
    std::complex<double> partial_value;
    long reached;
    TruncationFailure(const std::string& what, std::complex<double> partial, long r)
        : std::runtime_error(what), partial_value(partial), reached(r) {}
};

} // namespace trisum
