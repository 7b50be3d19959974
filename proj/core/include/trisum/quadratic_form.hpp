#pragma once

#include <cstdint>
#include <string>

namespace trisum {

// Q(x, y) = A x^2 + B y^2 + 2 C x y, positive definite.
struct QuadraticForm {
    std::int64_t A = 1, B = 1, C = 0;

    QuadraticForm() = default;
    QuadraticForm(std::int64_t a, std::int64_t b, std::int64_t c);
    bool operator==(const QuadraticForm&) const = default;

    std::int64_t det() const { return A * B - C * C; }
    // N with N * Q* integral; always 1 for integral A, B, C.
    std::int64_t scale_N() const { return 1; }

    // Exact for |x|, |y| <= 2^30; throws OverflowError beyond.
    std::int64_t operator()(std::int64_t x, std::int64_t y) const;
    std::int64_t adjoint(std::int64_t x, std::int64_t y) const;

    double eval(double x, double y) const { return A * x * x + B * y * y + 2.0 * C * x * y; }
    double adjoint_eval(double x, double y) const { return B * x * x + A * y * y - 2.0 * C * x * y; }

    // Parses "A,B,C".
    static QuadraticForm parse(const std::string& s);
    std::string str() const;
};

} // namespace trisum
