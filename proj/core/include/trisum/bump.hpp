#pragma once

#include "trisum/jet.hpp"

#include <functional>
#include <memory>
#include <string>

namespace trisum {

// Smooth compactly supported weight on [lo, hi] with derivatives to order 4.
class BumpFunction {
public:
    using Shape = std::function<Jet(const Jet&)>;

    BumpFunction() = default;
    BumpFunction(std::string label, double lo, double hi, Shape shape);

    double operator()(double x) const;
    double derivative(int k, double x) const;
    Jet jet(double x) const;

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const std::string& label() const { return label_; }
    bool is_zero() const { return !shape_; }

    BumpFunction scaled(double factor, std::string label = {}) const;
    // x -> f(x / s), support scaled by s.
    BumpFunction dilated(double s, std::string label = {}) const;
    // f(x) * x^p
    BumpFunction times_power(double p, std::string label = {}) const;

    static BumpFunction zero(double lo = 1, double hi = 2);

private:
    std::string label_;
    double lo_ = 1, hi_ = 2;
    Shape shape_;
};

// exp(1 - 1/(1 - t^2)) on the interval, peak value 1 at the centre.
BumpFunction standard_bump(double lo, double hi, std::string label = "bump");
// Equal to 1 on [flat_lo, flat_hi], smooth transitions down to 0 at lo and hi.
BumpFunction plateau_bump(double lo, double flat_lo, double flat_hi, double hi, std::string label = "plateau");

// Reference weights of the lattice-sum problem.
BumpFunction weight_W1();
BumpFunction weight_W2();
// Support [1/2, 3], identically 1 on [1, 2].
BumpFunction weight_V();

} // namespace trisum
