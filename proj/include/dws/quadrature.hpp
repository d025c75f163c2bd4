#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dws/errors.hpp"
#include "dws/params.hpp"

namespace dws {

/// Adaptive Gauss-Kronrod integration of f over [lo, hi] (hi may be +inf).
/// Throws AccuracyError if the error estimate exceeds the spec budget.
template <class F>
double integrate(F&& f, double lo, double hi, const QuadratureSpec& spec) {
    namespace bq = boost::math::quadrature;
    // Bisection depth: adaptivity only refines where needed, so a deep budget
    // costs nothing on smooth integrands but resolves boundary layers.
    const int depth = std::max(10, static_cast<int>(std::ceil(std::log2(spec.max_subdivisions))) + 7);
    double err = 0.0, l1 = 0.0;
    const double val = bq::gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), lo, hi, depth, spec.rel_tol, &err, &l1);
    const double budget = std::max(spec.abs_tol, 50.0 * spec.rel_tol * std::fabs(val) + spec.abs_tol);
    if (!(err <= std::max(budget, 1e-10 * l1)))
        throw AccuracyError("integrate: adaptive Gauss-Kronrod did not reach tolerance", err);
    return val;
}

/// Semi-infinite integral from lo to +infinity.
template <class F>
double integrate_to_inf(F&& f, double lo, const QuadratureSpec& spec) {
    return integrate(std::forward<F>(f), lo, std::numeric_limits<double>::infinity(), spec);
}

} // namespace dws
