#include <string>

#include "doctest.h"
#include "dws/config.hpp"

using namespace dws;

namespace {
const std::string kMinimal =
    "[model]\n"
    "epsilon = 1.0\n"
    "c = 1.4142135623730951\n"
    "a = 1.0\n"
    "[grid]\n"
    "x_min = -3\n"
    "x_max = 3\n"
    "nx = 61\n"
    "T = 1.0\n"
    "nt = 20\n";

std::string msg_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const UsageError& e) {
        return e.what();
    }
    return "";
}
} // namespace

TEST_CASE("minimal config parses with defaults") {
    const RunConfig c = parse_config(kMinimal);
    CHECK(c.epsilon == 1.0);
    CHECK(c.nx == 61);
    CHECK(c.rhs_preset == "zero");
    CHECK(c.theta == 0.5);
    CHECK(c.formats == "csv,json");
    CHECK_NOTHROW(c.problem());
}

TEST_CASE("comments, blank lines and a full section set round-trip") {
    const std::string text = kMinimal +
                             "# a comment\n"
                             "\n"
                             "[initial]\n"
                             "f0 = gaussian(0,1)\n"
                             "f1 = zero\n"
                             "[rhs]\n"
                             "preset = sine-gordon\n"
                             "[solver]\n"
                             "theta = 0.4\n"
                             "tol = 1e-9\n"
                             "max_iters = 40\n"
                             "[output]\n"
                             "directory = run1\n"
                             "formats = csv\n";
    const RunConfig c = parse_config(text);
    CHECK(c.f0 == "gaussian(0,1)");
    CHECK(c.theta == 0.4);
    CHECK(c.directory == "run1");
    CHECK(parse_config(print_config(c)) == c);
}

TEST_CASE("print/parse round-trips expression rhs and data") {
    RunConfig c = parse_config(kMinimal);
    c.f0 = "exp(-x^2) * cos(x)";
    c.rhs_preset = "expr";
    c.rhs_expr = "0.5 * sin(u) + 0.1 * p";
    c.beta_F = 0.6;
    c.sup_bound = 2.0;
    CHECK(parse_config(print_config(c)) == c);
}

TEST_CASE("dissipation constraint names the derived rate") {
    // a = 4 > b = c^2/eps = 2
    std::string bad = kMinimal;
    bad.replace(bad.find("a = 1.0"), 7, "a = 4.0");
    const std::string m = msg_of(bad);
    CHECK(m.find("a < b required") != std::string::npos);
    CHECK(m.find("b = c^2/epsilon") != std::string::npos);
}

TEST_CASE("every violation is reported, with line numbers for syntax") {
    const std::string bad =
        "[model]\n"
        "epsilon = -1\n"   // line 2: semantic
        "c = oops\n"       // line 3: not a number
        "a = 1\n"
        "bogus_key = 1\n"  // line 5: unknown key
        "[grid]\n"
        "x_min = 2\n"
        "x_max = -2\n"     // x_min < x_max violated
        "nx = 3\n"
        "T = 1\n"
        "nt = 0\n";
    const std::string m = msg_of(bad);
    CHECK(m.find("line 3") != std::string::npos);
    CHECK(m.find("line 5") != std::string::npos);
    CHECK(m.find("epsilon") != std::string::npos);
    CHECK(m.find("x_min") != std::string::npos);
    CHECK(m.find("nt") != std::string::npos);
}

TEST_CASE("unknown section and missing mandatory section are rejected") {
    CHECK(msg_of(kMinimal + "[mystery]\nk = 1\n").find("mystery") != std::string::npos);
    CHECK(msg_of("[model]\nepsilon = 1\nc = 1.2\na = 1\n").find("grid") != std::string::npos);
}

TEST_CASE("state-dependent expression rhs requires a Lipschitz declaration") {
    const std::string text = kMinimal + "[rhs]\nexpr = sin(u)\n";
    CHECK(msg_of(text).find("beta_F required") != std::string::npos);
    // state-independent expressions don't
    CHECK_NOTHROW(parse_config(kMinimal + "[rhs]\nexpr = exp(-x^2)*cos(t)\n"));
}

TEST_CASE("make_data_function: presets and expressions") {
    CHECK(make_data_function("zero", -1, 1)(0.3) == 0.0);
    CHECK(make_data_function("constant(2.5)", -1, 1)(0.9) == 2.5);
    CHECK(make_data_function("gaussian(0,1)", -5, 5)(0.0) == doctest::Approx(1.0));
    CHECK(make_data_function("sine(2)", -5, 5)(0.25) == doctest::Approx(std::sin(0.5)));
    const SampledFunction f = make_data_function("x^2 / (1 + x^2)", -5, 5);
    CHECK(f(2.0) == doctest::Approx(0.8).epsilon(1e-8));
    CHECK_THROWS_AS(make_data_function("sin(t)", -1, 1), UsageError);
    CHECK_THROWS_AS(make_data_function("u + 1", -1, 1), UsageError);
}

TEST_CASE("problem materialization wires the rhs preset") {
    RunConfig c = parse_config(kMinimal + "[rhs]\npreset = sine-gordon\n[initial]\nf0 = gaussian(0,1)\n");
    const Problem p = c.problem();
    CHECK(p.rhs.beta_F == 1.0);
    CHECK(p.rhs.depends_on_state);
    CHECK(p.rhs.F(0.0, 0.0, 1.0, 0.0) == doctest::Approx(std::sin(1.0)));
    CHECK(p.f0(0.0) == doctest::Approx(1.0));
}
