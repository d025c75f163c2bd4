#pragma once

#include <string>

#include "dws/oracle.hpp"
#include "dws/picard.hpp"

namespace dws {

/// Parsed run configuration (sectioned key=value text).  Sections and keys:
///   [model]   epsilon, c, a
///   [initial] f0, f1        (preset name or expression in x)
///   [grid]    x_min, x_max, nx, T, nt
///   [rhs]     preset | expr (in x,t,u,p), beta_F, sup_bound
///   [solver]  theta, tol, max_iters, refine_x, refine_t
///   [output]  directory, formats
/// Only [model] and [grid] are mandatory; everything else has defaults.
struct RunConfig {
    double epsilon = 1.0, c = 1.0, a = 1.0;
    std::string f0 = "zero", f1 = "zero";
    std::string rhs_preset = "zero";
    std::string rhs_expr;
    double beta_F = 0.0;
    double sup_bound = 0.0;
    double x_min = -1.0, x_max = 1.0;
    int nx = 0, nt = 0;
    double T = 0.0;
    double theta = 0.5, tol = 1e-8;
    int max_iters = 50;
    int refine_x = 2, refine_t = 2;
    std::string directory = "out";
    std::string formats = "csv,json";

    bool operator==(const RunConfig&) const = default;

    ModelParams model() const { return ModelParams(epsilon, c, a); }
    GridSpec grid() const { return {x_min, x_max, nx, T, nt}; }
    SolverConfig solver() const;
    /// Materialize initial data and rhs (expressions are sampled over the
    /// engine's truncation window).
    Problem problem() const;
};

/// Parse and validate; the UsageError message lists every violation found
/// (syntax errors with their line, semantic errors with the constraint name).
RunConfig parse_config(const std::string& text);

/// Canonical text form; parse_config(print_config(c)) == c.
std::string print_config(const RunConfig& c);

/// Resolve an initial-data entry: preset name ("gaussian(0,1)", "constant(2)",
/// "sine(1.5)", "tanh-front(2)", "zero") or an expression in x sampled over
/// [lo, hi].
SampledFunction make_data_function(const std::string& spec, double lo, double hi);

} // namespace dws
