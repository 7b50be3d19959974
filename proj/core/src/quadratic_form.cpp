#include "trisum/quadratic_form.hpp"
#include "trisum/errors.hpp"

#include <cstdlib>
#include <sstream>
#include <vector>

namespace trisum {

namespace {

constexpr std::int64_t kCoordLimit = std::int64_t{1} << 30;
constexpr std::int64_t kCoeffLimit = std::int64_t{1} << 30;

void guard(std::int64_t x, std::int64_t y) {
    if (x > kCoordLimit || x < -kCoordLimit || y > kCoordLimit || y < -kCoordLimit)
        throw OverflowError("QuadraticForm: coordinates beyond 2^30");
}

std::int64_t checked_eval(std::int64_t a, std::int64_t b, std::int64_t c2, std::int64_t x, std::int64_t y) {
    __int128 v = static_cast<__int128>(a) * x * x + static_cast<__int128>(b) * y * y +
                 static_cast<__int128>(c2) * x * y;
    if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("QuadraticForm: value exceeds 64 bits");
    return static_cast<std::int64_t>(v);
}

} // namespace

QuadraticForm::QuadraticForm(std::int64_t a, std::int64_t b, std::int64_t c) : A(a), B(b), C(c) {
    if (a > kCoeffLimit || b > kCoeffLimit || c > kCoeffLimit || c < -kCoeffLimit)
        throw DomainError("QuadraticForm: coefficient too large");
    if (A <= 0 || det() <= 0) throw DomainError("QuadraticForm: form is not positive definite");
}

std::int64_t QuadraticForm::operator()(std::int64_t x, std::int64_t y) const {
    guard(x, y);
    return checked_eval(A, B, 2 * C, x, y);
}

std::int64_t QuadraticForm::adjoint(std::int64_t x, std::int64_t y) const {
    guard(x, y);
    return checked_eval(B, A, -2 * C, x, y);
}

QuadraticForm QuadraticForm::parse(const std::string& s) {
    std::vector<std::int64_t> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        char* end = nullptr;
        long long x = std::strtoll(tok.c_str(), &end, 10);
        if (end == tok.c_str() || *end != '\0') throw ConfigError("bad form coefficient: " + tok);
        v.push_back(x);
    }
    if (v.size() != 3) throw ConfigError("form must be A,B,C");
    return QuadraticForm(v[0], v[1], v[2]);
}

std::string QuadraticForm::str() const {
    return std::to_string(A) + "," + std::to_string(B) + "," + std::to_string(C);
}

} // namespace trisum
