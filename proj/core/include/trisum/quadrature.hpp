#pragma once

#include "trisum/kahan.hpp"

#include <functional>
#include <vector>

namespace trisum::quad {

struct QuadResult {
    cplx value;
    double error = 0;
    int evaluations = 0;
};

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_panels = 4000;
    // Initial uniform split; set from the fastest local frequency so panels start below 1/8 period.
    int initial_panels = 1;
};

// Adaptive Gauss-Kronrod (7/15). Throws QuadratureFailure with the best estimate when the
// panel budget is exhausted.
QuadResult adaptive_quad(const std::function<cplx(double)>& f, double a, double b, const QuadOptions& opt = {});

double adaptive_quad_real(const std::function<double(double)>& f, double a, double b, const QuadOptions& opt = {});

// Panels needed for at most 1/8 period of frequency `cycles_per_unit` over [a, b].
int panels_for_frequency(double a, double b, double cycles_per_unit);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int n);

// Trapezoid nodes for a function vanishing with all derivatives at both ends.
std::vector<double> uniform_nodes(double a, double b, int n);

} // namespace trisum::quad
