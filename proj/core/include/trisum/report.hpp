#pragma once

#include "trisum/kahan.hpp"

#include <map>
#include <string>
#include <vector>

namespace trisum {

// Paired direct and dual values of one identity check.
struct VerificationReport {
    std::string identity;
    cplx direct;
    cplx dual;
    double abs_err = 0;
    double rel_err = 0;
    double tolerance = 0;
    bool pass = false;
    std::map<std::string, double> metadata;
    std::vector<cplx> main_terms;

    // Deterministic JSON text.
    std::string to_json() const;
};

} // namespace trisum
