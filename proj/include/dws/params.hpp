#pragma once

#include <cmath>
#include <complex>

#include "dws/errors.hpp"

namespace dws {

/// Physical coefficients of the operator (eps*dt + c^2) dxx - (dt + a) dt,
/// together with the derived rate b = c^2 / eps.
struct ModelParams {
    double epsilon; ///< viscosity
    double c;       ///< wave speed
    double a;       ///< damping rate
    double b;       ///< c^2 / epsilon

    ModelParams(double epsilon_, double c_, double a_)
        : epsilon(epsilon_), c(c_), a(a_), b(c_ * c_ / epsilon_) {
        if (!(epsilon > 0.0) || !(c > 0.0) || !(a > 0.0))
            throw DomainError("ModelParams: epsilon, c, a must all be positive");
        if (a > b)
            throw DomainError("ModelParams: a <= b = c^2/epsilon required "
                              "(positivity and contraction assume a < b)");
    }

    /// Convenience: build from (epsilon, a, b) with c = sqrt(b*epsilon).
    static ModelParams from_rates(double epsilon, double a, double b) {
        return ModelParams(epsilon, std::sqrt(b * epsilon), a);
    }

    bool strictly_dissipative() const { return a < b; }
};

/// Tolerances for all adaptive quadrature in the kernel/potential layer.
struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 200;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1)
            throw UsageError("QuadratureSpec: rel_tol > 0, abs_tol > 0, "
                             "max_subdivisions >= 1 required");
    }
};

/// A point in the Laplace frequency plane.  The transforms of the kernel
/// converge absolutely for Re(s) > max(-a, -b).
struct LaplacePoint {
    std::complex<double> s;
};

inline bool in_convergence_halfplane(std::complex<double> s, const ModelParams& p) {
    return s.real() > std::max(-p.a, -p.b);
}

} // namespace dws
