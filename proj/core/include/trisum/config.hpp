#pragma once

#include "trisum/quadratic_form.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace trisum::experiment {

enum class Weights { Smooth, Sharp };
// Lattice: closed-form x-integral, G_q tables on the lattice. NestedU: x-integral done numerically
// with the moments inside it. Factored: moments frozen at x = 0 times Delta_q(s) phi(s).
enum class MainRoute { Lattice, NestedU, Factored };
// Span: L from the largest |r - Q(n)| in the support, Q_cal = 2 sqrt(L). X: Q_cal = X, L = X^2 / 4.
enum class QcalPolicy { Span, X };

// Flat key = value file with sections [form], [scan], [truncation], [output].
struct ExperimentConfig {
    QuadraticForm form{1, 1, 0};
    std::vector<std::int64_t> X{64, 128, 256, 512};
    Weights weights = Weights::Smooth;
    MainRoute route = MainRoute::Lattice;
    int threads = 0;
    std::int64_t q_max = 0;
    QcalPolicy qcal = QcalPolicy::Span;
    double x_window = 6.0;
    std::string csv;
    std::string json;

    static ExperimentConfig parse(const std::string& text);
    static ExperimentConfig load(const std::string& path);
    // Canonical text; parse(to_string()) reproduces the config exactly.
    std::string to_string() const;

    bool operator==(const ExperimentConfig&) const = default;
};

std::string to_string(Weights w);
std::string to_string(MainRoute r);
std::string to_string(QcalPolicy p);

} // namespace trisum::experiment
