#include "doctest.h"
#include "trisum/config.hpp"
#include "trisum/errors.hpp"

#include <cstdio>
#include <fstream>

using namespace trisum;
using namespace trisum::experiment;

TEST_CASE("defaults") {
    ExperimentConfig c;
    CHECK(c.form == QuadraticForm{1, 1, 0});
    CHECK(c.X == std::vector<std::int64_t>{64, 128, 256, 512});
    CHECK(c.weights == Weights::Smooth);
    CHECK(c.route == MainRoute::Lattice);
    CHECK(ExperimentConfig::parse("") == c);
}

TEST_CASE("parse all sections") {
    auto c = ExperimentConfig::parse(R"(# scan
[form]
A = 2
B = 3
C = -1
[scan]
X = 16, 32,64
weights = sharp   ; trailing comment
route = nested
threads = 2
[truncation]
q_max = 9
qcal = X
x_window = 4.5
[output]
csv = out.csv
json = out.json
)");
    CHECK(c.form == QuadraticForm{2, 3, -1});
    CHECK(c.X == std::vector<std::int64_t>{16, 32, 64});
    CHECK(c.weights == Weights::Sharp);
    CHECK(c.route == MainRoute::NestedU);
    CHECK(c.threads == 2);
    CHECK(c.q_max == 9);
    CHECK(c.qcal == QcalPolicy::X);
    CHECK(c.x_window == 4.5);
    CHECK(c.csv == "out.csv");
    CHECK(c.json == "out.json");
}

TEST_CASE("canonical text round-trips") {
    ExperimentConfig c;
    c.form = {5, 2, 1};
    c.X = {16, 20, 40};
    c.route = MainRoute::Factored;
    c.x_window = 0.1 + 0.2;
    c.csv = "a.csv";
    auto back = ExperimentConfig::parse(c.to_string());
    CHECK(back == c);
    CHECK(back.to_string() == c.to_string());
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(ExperimentConfig::parse("A = 1\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse("[form]\nD = 1\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse("[form]\nA = 1\nA = 2\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse("[scan]\nX = 1, 8\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse("[scan]\nX = 15, 32, 64\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse("[scan]\nweights = rough\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse("[bogus]\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse("[form]\nA = x\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse("[form]\nA = 1\nB = 1\nC = 2\n"), ConfigError);
}

TEST_CASE("load from file") {
    const std::string path = "test_config_tmp.cfg";
    {
        std::ofstream o(path);
        o << "[scan]\nX = 16, 24, 32\n";
    }
    auto c = ExperimentConfig::load(path);
    CHECK(c.X == std::vector<std::int64_t>{16, 24, 32});
    std::remove(path.c_str());
    CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/trisum.cfg"), ConfigError);
}
