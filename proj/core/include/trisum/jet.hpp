#pragma once

#include <array>
#include <cmath>

namespace trisum {

// Truncated Taylor series c[k] = f^(k)(x0) / k!, k = 0..4.
struct Jet {
    static constexpr int N = 5;
    std::array<double, N> c{};

    static Jet constant(double v) { Jet j; j.c[0] = v; return j; }
    static Jet variable(double x) { Jet j; j.c[0] = x; j.c[1] = 1; return j; }

    double value() const { return c[0]; }
    double derivative(int k) const {
        double f = 1;
        for (int i = 2; i <= k; ++i) f *= i;
        return c[k] * f;
    }
};

inline Jet operator+(Jet a, const Jet& b) { for (int k = 0; k < Jet::N; ++k) a.c[k] += b.c[k]; return a; }
inline Jet operator-(Jet a, const Jet& b) { for (int k = 0; k < Jet::N; ++k) a.c[k] -= b.c[k]; return a; }
inline Jet operator-(Jet a) { for (auto& x : a.c) x = -x; return a; }
inline Jet operator+(Jet a, double s) { a.c[0] += s; return a; }
inline Jet operator+(double s, Jet a) { a.c[0] += s; return a; }
inline Jet operator-(Jet a, double s) { a.c[0] -= s; return a; }
inline Jet operator-(double s, const Jet& a) { return s + (-a); }
inline Jet operator*(Jet a, double s) { for (auto& x : a.c) x *= s; return a; }
inline Jet operator*(double s, Jet a) { return a * s; }

inline Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k < Jet::N; ++k)
        for (int i = 0; i <= k; ++i) r.c[k] += a.c[i] * b.c[k - i];
    return r;
}

inline Jet reciprocal(const Jet& a) {
    Jet r;
    r.c[0] = 1.0 / a.c[0];
    for (int k = 1; k < Jet::N; ++k) {
        double s = 0;
        for (int i = 1; i <= k; ++i) s += a.c[i] * r.c[k - i];
        r.c[k] = -s / a.c[0];
    }
    return r;
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
inline Jet operator/(double s, const Jet& b) { return s * reciprocal(b); }
inline Jet operator/(Jet a, double s) { return a * (1.0 / s); }

inline Jet exp(const Jet& a) {
    Jet r;
    r.c[0] = std::exp(a.c[0]);
    for (int k = 1; k < Jet::N; ++k) {
        double s = 0;
        for (int i = 1; i <= k; ++i) s += i * a.c[i] * r.c[k - i];
        r.c[k] = s / k;
    }
    return r;
}

inline Jet log(const Jet& a) {
    Jet r;
    r.c[0] = std::log(a.c[0]);
    for (int k = 1; k < Jet::N; ++k) {
        double s = k * a.c[k];
        for (int i = 1; i < k; ++i) s -= i * r.c[i] * a.c[k - i];
        r.c[k] = s / (k * a.c[0]);
    }
    return r;
}

inline Jet pow(const Jet& a, double p) { return exp(p * log(a)); }

} // namespace trisum
