#include "trisum/report.hpp"

#include "json.hpp"

namespace trisum {

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["identity"] = identity;
    j["direct_re"] = direct.real();
    j["direct_im"] = direct.imag();
    j["dual_re"] = dual.real();
    j["dual_im"] = dual.imag();
    j["abs_err"] = abs_err;
    j["rel_err"] = rel_err;
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : metadata) meta[k] = v;
    j["metadata"] = meta;
    nlohmann::ordered_json mt = nlohmann::ordered_json::array();
    for (const auto& t : main_terms) mt.push_back({t.real(), t.imag()});
    j["main_terms"] = mt;
    return j.dump(2);
}

} // namespace trisum
