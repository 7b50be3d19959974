#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace trisum {

using cplx = std::complex<double>;

struct KahanSum {
    double sum = 0, comp = 0;
    void add(double x) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    KahanSum& operator+=(double x) { add(x); return *this; }
    double value() const { return sum; }
};

struct KahanComplex {
    KahanSum re, im;
    void add(cplx z) { re.add(z.real()); im.add(z.imag()); }
    KahanComplex& operator+=(cplx z) { add(z); return *this; }
    cplx value() const { return {re.value(), im.value()}; }
};

// e(k/q) with k reduced to [0, q).
inline cplx e_frac(std::int64_t k, std::int64_t q) {
    std::int64_t r = k % q;
    if (r < 0) r += q;
    if (2 * r > q) r -= q;
    const double th = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q);
    return {std::cos(th), std::sin(th)};
}

inline cplx e_real(double x) {
    const double th = 2.0 * std::numbers::pi * (x - std::round(x));
    return {std::cos(th), std::sin(th)};
}

class RootTable {
public:
    explicit RootTable(std::int64_t q) : q_(q), t_(static_cast<std::size_t>(q)) {
        for (std::int64_t k = 0; k < q; ++k) t_[static_cast<std::size_t>(k)] = e_frac(k, q);
    }
    cplx operator()(std::int64_t k) const {
        std::int64_t r = k % q_;
        if (r < 0) r += q_;
        return t_[static_cast<std::size_t>(r)];
    }
    std::int64_t modulus() const { return q_; }

private:
    std::int64_t q_;
    std::vector<cplx> t_;
};

} // namespace trisum
