#include "trisum/config.hpp"
#include "trisum/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace trisum::experiment {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::int64_t to_int(const std::string& key, const std::string& v) {
    std::int64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
    }
}

std::string fmt_double(double d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

} // namespace

std::string to_string(Weights w) { return w == Weights::Smooth ? "smooth" : "sharp"; }

std::string to_string(MainRoute r) {
    switch (r) {
    case MainRoute::Lattice: return "lattice";
    case MainRoute::NestedU: return "nested";
    case MainRoute::Factored: return "factored";
    }
    return "lattice";
}

std::string to_string(QcalPolicy p) { return p == QcalPolicy::Span ? "span" : "X"; }

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    ExperimentConfig c;
    std::int64_t A = c.form.A, B = c.form.B, C = c.form.C;
    std::string section;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("config line " + std::to_string(lineno) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "form" && section != "scan" && section != "truncation" && section != "output")
                throw ConfigError("config: unknown section [" + section + "]");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (section.empty()) throw ConfigError("config: key '" + key + "' outside any section");
        const std::string full = section + "." + key;
        if (!seen.insert(full).second) throw ConfigError("config: duplicate key " + full);

        if (full == "form.A") A = to_int(key, val);
        else if (full == "form.B") B = to_int(key, val);
        else if (full == "form.C") C = to_int(key, val);
        else if (full == "scan.X") {
            c.X.clear();
            std::stringstream ss(val);
            std::string tok;
            while (std::getline(ss, tok, ',')) c.X.push_back(to_int(key, trim(tok)));
        } else if (full == "scan.weights") {
            if (val == "smooth") c.weights = Weights::Smooth;
            else if (val == "sharp") c.weights = Weights::Sharp;
            else throw ConfigError("config: weights must be smooth or sharp");
        } else if (full == "scan.route") {
            if (val == "lattice") c.route = MainRoute::Lattice;
            else if (val == "nested") c.route = MainRoute::NestedU;
            else if (val == "factored") c.route = MainRoute::Factored;
            else throw ConfigError("config: route must be lattice, nested or factored");
        } else if (full == "scan.threads") c.threads = static_cast<int>(to_int(key, val));
        else if (full == "truncation.q_max") c.q_max = to_int(key, val);
        else if (full == "truncation.qcal") {
            if (val == "span") c.qcal = QcalPolicy::Span;
            else if (val == "X") c.qcal = QcalPolicy::X;
            else throw ConfigError("config: qcal must be span or X");
        } else if (full == "truncation.x_window") c.x_window = to_double(key, val);
        else if (full == "output.csv") c.csv = val;
        else if (full == "output.json") c.json = val;
        else throw ConfigError("config: unknown key " + full);
    }
    try {
        c.form = QuadraticForm(A, B, C);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (c.X.empty()) throw ConfigError("config: scan.X is empty");
    for (auto x : c.X)
        if (x < 16) throw ConfigError("config: every X must be at least 16");
    if (c.q_max < 0 || c.threads < 0) throw ConfigError("config: q_max and threads must be non-negative");
    if (!(c.x_window > 0)) throw ConfigError("config: x_window must be positive");
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

std::string ExperimentConfig::to_string() const {
    std::ostringstream o;
    o << "[form]\nA = " << form.A << "\nB = " << form.B << "\nC = " << form.C << "\n\n[scan]\nX = ";
    for (std::size_t i = 0; i < X.size(); ++i) o << (i ? "," : "") << X[i];
    o << "\nweights = " << experiment::to_string(weights) << "\nroute = " << experiment::to_string(route)
      << "\nthreads = " << threads << "\n\n[truncation]\nq_max = " << q_max << "\nqcal = " << experiment::to_string(qcal)
      << "\nx_window = " << fmt_double(x_window) << "\n\n[output]\n";
    if (!csv.empty()) o << "csv = " << csv << "\n";
    if (!json.empty()) o << "json = " << json << "\n";
    return o.str();
}

} // namespace trisum::experiment
