#pragma once

#include "dws/picard.hpp"

namespace dws {

/// Discretization of the independent finite-difference reference solver:
/// method of lines on the first-order system (u, v = u_t),
///   v_t = eps v_xx + c^2 u_xx - a v - F(x, t, u, u_x),
/// 2nd-order central space stencils, RK4 in time.
struct FdConfig {
    double dx = 0.05;
    double dt = 0.0;          ///< 0 = auto at the stability limit
    double x_halfwidth = 0.0; ///< 0 = auto (covers the engine's cutoff)
    enum class Boundary { frozen_farfield, homogeneous_neumann };
    Boundary boundary = Boundary::frozen_farfield;

    /// Largest stable step 0.5 * min(dx^2/(2 eps), dx/c).
    double stable_dt(const ModelParams& p) const;
    void validate(const ModelParams& p) const;
};

/// Solve the problem by finite differences and sample (u, u_x) onto the
/// problem's output grid.  Throws UsageError on a stability violation and
/// ConsistencyError if the solution blows up (|u| > 1e6).
SpaceTimeField fd_solve(const Problem& problem, const FdConfig& cfg);

/// Richardson certification: solves at dx, dx/2, ..., dx/2^(levels-1),
/// estimates the observed order from the last three levels and a per-node
/// discretization-error band for the finest solution.
struct Certification {
    SpaceTimeField solution;  ///< finest-level FD solution
    SpaceTimeField band;      ///< per-node error band (u channel)
    double band_sup = 0.0;    ///< sup of the band
    double observed_order = 0.0;
    std::vector<double> level_gaps; ///< L-inf gaps between consecutive levels
};

/// safety scales the Richardson error estimate |u_h - u_{h/2}| / 3 into the
/// published band.  Throws ConsistencyError when the refinement is
/// non-monotone or the observed order is far from 2.
Certification certify(const Problem& problem, const FdConfig& cfg,
                      int levels = 3, double safety = 2.0);

} // namespace dws
