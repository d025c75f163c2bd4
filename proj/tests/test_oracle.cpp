#include <cmath>

#include "doctest.h"
#include "dws/oracle.hpp"

using namespace dws;

namespace {
Problem base_problem() {
    Problem p{ModelParams(1.0, std::sqrt(2.0), 1.0), SampledFunction::zero(),
              SampledFunction::zero(), RhsSpec::zero(),
              GridSpec{-2.0, 2.0, 41, 0.5, 5}};
    return p;
}
} // namespace

TEST_CASE("fd solver: zero data stays zero") {
    const SpaceTimeField u = fd_solve(base_problem(), FdConfig{});
    CHECK(u.sup_norm() == 0.0);
}

TEST_CASE("fd solver: spatially constant data reduce to the damped ODE") {
    // f1 == 1 kills every spatial term; u(t) = (1 - e^{-at})/a exactly up to
    // RK4 error, independent of dx.
    Problem p = base_problem();
    p.f1 = SampledFunction::constant(1.0);
    const SpaceTimeField u = fd_solve(p, FdConfig{});
    for (int j = 0; j < p.grid.nt; ++j) {
        const double exact = 1.0 - std::exp(-u.ts()[j]);
        for (int i = 0; i < p.grid.nx; ++i)
            CHECK(u.u(j, i) == doctest::Approx(exact).epsilon(1e-10));
    }
}

TEST_CASE("fd solver: explicit dt above the stability limit is rejected") {
    FdConfig cfg;
    cfg.dt = 1.0; // far beyond 0.5 min(dx^2/2eps, dx/c)
    CHECK_THROWS_AS(fd_solve(base_problem(), cfg), UsageError);
    cfg.dt = 0.9 * cfg.stable_dt(base_problem().params);
    CHECK_NOTHROW(fd_solve(base_problem(), cfg));
}

TEST_CASE("fd solver: blow-up is reported, not returned") {
    Problem p = base_problem();
    // Feedback source growing linearly in u with a huge gain: RK4 at the
    // diffusive step size amplifies past the 1e6 guard well before t = 0.5.
    p.rhs.F = [](double, double, double u, double) { return -1e8 * (u + 1.0); };
    p.rhs.beta_F = 1e8;
    p.rhs.sup_bound = 1e12;
    CHECK_THROWS_AS(fd_solve(p, FdConfig{}), ConsistencyError);
}

TEST_CASE("fd solver: homogeneous Neumann boundary runs") {
    Problem p = base_problem();
    p.f0 = SampledFunction::gaussian(0.0, 0.5);
    FdConfig cfg;
    cfg.boundary = FdConfig::Boundary::homogeneous_neumann;
    const SpaceTimeField u = fd_solve(p, cfg);
    CHECK(std::isfinite(u.sup_norm()));
    CHECK(u.sup_norm() > 0.0);
}

TEST_CASE("certify: zero problem has a zero band") {
    const Certification cert = certify(base_problem(), FdConfig{});
    CHECK(cert.band_sup == 0.0);
    CHECK(cert.solution.sup_norm() == 0.0);
}

TEST_CASE("certify: gaussian data refine at second order") {
    Problem p = base_problem();
    p.f0 = SampledFunction::gaussian(0.0, 1.0);
    const Certification cert = certify(p, FdConfig{});
    REQUIRE(cert.level_gaps.size() == 2);
    CHECK(cert.level_gaps[1] < cert.level_gaps[0]);
    // gap ratio ~ 2^order; accept [3, 5.5] around the nominal 4
    const double ratio = cert.level_gaps[0] / cert.level_gaps[1];
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.5);
    CHECK(cert.observed_order == doctest::Approx(2.0).epsilon(0.25));
    CHECK(cert.band_sup > 0.0);
    CHECK(cert.band_sup < 1e-3);
}
