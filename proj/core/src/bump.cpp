#include "trisum/bump.hpp"
#include "trisum/errors.hpp"

namespace trisum {

BumpFunction::BumpFunction(std::string label, double lo, double hi, Shape shape)
    : label_(std::move(label)), lo_(lo), hi_(hi), shape_(std::move(shape)) {
    if (!(lo < hi)) throw DomainError("BumpFunction: empty support");
}

Jet BumpFunction::jet(double x) const {
    if (!shape_ || x <= lo_ || x >= hi_) return Jet{};
    return shape_(Jet::variable(x));
}

double BumpFunction::operator()(double x) const {
    if (!shape_ || x <= lo_ || x >= hi_) return 0.0;
    return shape_(Jet::constant(x)).c[0];
}

double BumpFunction::derivative(int k, double x) const {
    if (k < 0 || k >= Jet::N) throw DomainError("BumpFunction: derivative order must be 0..4");
    return jet(x).derivative(k);
}

BumpFunction BumpFunction::scaled(double factor, std::string label) const {
    if (!shape_) return *this;
    auto s = shape_;
    return BumpFunction(label.empty() ? label_ : label, lo_, hi_, [s, factor](const Jet& x) { return factor * s(x); });
}

BumpFunction BumpFunction::dilated(double sc, std::string label) const {
    if (!shape_) return zero(lo_ * sc, hi_ * sc);
    auto s = shape_;
    return BumpFunction(label.empty() ? label_ : label, lo_ * sc, hi_ * sc,
                        [s, sc](const Jet& x) { return s(x / sc); });
}

BumpFunction BumpFunction::times_power(double p, std::string label) const {
    if (!shape_) return *this;
    if (lo_ < 0) throw DomainError("times_power: support must be positive");
    auto s = shape_;
    return BumpFunction(label.empty() ? label_ : label, lo_, hi_, [s, p](const Jet& x) { return s(x) * pow(x, p); });
}

BumpFunction BumpFunction::zero(double lo, double hi) {
    BumpFunction b;
    b.lo_ = lo;
    b.hi_ = hi;
    b.label_ = "zero";
    return b;
}

namespace {

// exp(-1/t) for t > 0, zero otherwise.
Jet psi_step(const Jet& t) {
    if (t.c[0] <= 0) return Jet{};
    return exp(-1.0 / t);
}

// 0 for t <= 0, 1 for t >= 1.
Jet smooth_step(const Jet& t) {
    if (t.c[0] <= 0) return Jet{};
    if (t.c[0] >= 1) return Jet::constant(1.0);
    Jet a = psi_step(t), b = psi_step(1.0 - t);
    return a / (a + b);
}

} // namespace

BumpFunction standard_bump(double lo, double hi, std::string label) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    return BumpFunction(std::move(label), lo, hi, [c, h](const Jet& x) {
        Jet t = (x - c) / h;
        Jet d = 1.0 - t * t;
        if (d.c[0] <= 0) return Jet{};
        return exp(1.0 - 1.0 / d);
    });
}

BumpFunction plateau_bump(double lo, double flat_lo, double flat_hi, double hi, std::string label) {
    if (!(lo < flat_lo && flat_lo <= flat_hi && flat_hi < hi)) throw DomainError("plateau_bump: bad breakpoints");
    return BumpFunction(std::move(label), lo, hi, [=](const Jet& x) {
        Jet up = smooth_step((x - lo) / (flat_lo - lo));
        Jet down = smooth_step((hi - x) / (hi - flat_hi));
        return up * down;
    });
}

BumpFunction weight_W1() { return standard_bump(1.0, 2.0, "W1"); }
BumpFunction weight_W2() { return standard_bump(1.0, 2.0, "W2"); }
BumpFunction weight_V() { return plateau_bump(0.5, 1.0, 2.0, 3.0, "V"); }

} // namespace trisum
