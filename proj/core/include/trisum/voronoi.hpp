#pragma once

#include "trisum/bump.hpp"
#include "trisum/kahan.hpp"
#include "trisum/report.hpp"
#include "trisum/transforms.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <string>

namespace trisum::voronoi {

using i64 = std::int64_t;

// Main-term polynomials, with log n1 in the first term of P1.
double P1(i64 n1, i64 q);
double P2(i64 n1, i64 q);
struct PPair {
    double P1, P2;
};
PPair P_polynomials(i64 n1, i64 q);

// Multiplier of the three main terms relative to 1/q^2. The printed lemma carries 1/(2 q^2);
// the residue of zeta^3 at s = 1 requires 1/q^2.
inline constexpr double kMainTermScale = 1.0;
inline constexpr double kPrintedMainTermScale = 0.5;

class CoefficientOracle {
public:
    virtual ~CoefficientOracle() = default;
    virtual double operator()(std::uint64_t n, std::uint64_t m) const = 0;
    virtual std::string label() const = 0;
};

// B(n, m) = sum_{m1 | n} sum_{m2 | n/m1} sigma00(n/(m1 m2), m)
class D3Coefficients : public CoefficientOracle {
public:
    double operator()(std::uint64_t n, std::uint64_t m) const override;
    std::string label() const override { return "d3"; }
};

// Placeholder for genuine Hecke-Maass coefficients; no data is available.
class GL3Coefficients : public CoefficientOracle {
public:
    double operator()(std::uint64_t n, std::uint64_t m) const override;
    std::string label() const override { return "gl3"; }
};

cplx voronoi_lhs(const BumpFunction& h, i64 a, i64 q);

struct VoronoiOptions {
    double tail_rel = 1e-8;
    int quiet_terms = 20;
    // Dual terms are kept while n1^2 n2 / q^3 <= y_cut / N, N the lower end of the support.
    double y_cut = 2.0e6;
    double main_scale = kMainTermScale;
    osc::ContourOptions contour{};
};

struct VoronoiRHS {
    cplx dual;
    std::array<cplx, 3> main_terms{};
    cplx total;
    long n2_terms = 0;
    double y_max = 0;
};

// Shares the transform table across calls for the same h.
class VoronoiEngine {
public:
    VoronoiEngine(const BumpFunction& h, i64 q_max, const VoronoiOptions& opt = {});
    VoronoiRHS rhs(i64 a, i64 q, const CoefficientOracle& oracle) const;
    const BumpFunction& bump() const { return h_; }

private:
    BumpFunction h_;
    VoronoiOptions opt_;
    i64 q_max_;
    std::unique_ptr<osc::HTable> table_;
    std::array<cplx, 3> moments_;
};

VoronoiRHS voronoi_rhs(const BumpFunction& h, i64 a, i64 q, const CoefficientOracle& oracle,
                       const VoronoiOptions& opt = {});

// |LHS - RHS| / (|LHS| + q) against tol.
VerificationReport verify_voronoi(const BumpFunction& h, i64 a, i64 q, double tol, const VoronoiOptions& opt = {});
VerificationReport verify_voronoi(const VoronoiEngine& eng, i64 a, i64 q, double tol);

// Residue at s = 1 of D(s, a/q) h~(s), D written through Hurwitz zeta values; independent of P1, P2.
cplx main_terms_residue(const BumpFunction& h, i64 a, i64 q);
// sum of the three main terms as assembled from P1, P2 and the moments.
cplx main_terms_formula(const BumpFunction& h, i64 a, i64 q, double scale = kMainTermScale);

} // namespace trisum::voronoi
