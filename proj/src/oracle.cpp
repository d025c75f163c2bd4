#include "dws/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace dws {

double FdConfig::stable_dt(const ModelParams& p) const {
    return 0.5 * std::min(dx * dx / (2.0 * p.epsilon), dx / p.c);
}

void FdConfig::validate(const ModelParams& p) const {
    if (!(dx > 0.0)) throw UsageError("FdConfig: dx > 0 required");
    if (dt > 0.0 && dt > stable_dt(p) * (1.0 + 1e-12))
        throw UsageError("FdConfig: dt violates the stability bound "
                         "0.5*min(dx^2/(2 eps), dx/c)");
    if (x_halfwidth < 0.0) throw UsageError("FdConfig: x_halfwidth >= 0 required");
}

namespace {

struct FdWorkspace {
    int n;                      // nodes
    double x0, dx;
    std::vector<double> u, v;   // state
    std::vector<double> ux;     // scratch: 4th-order du/dx
    std::vector<double> ku, kv; // scratch: stage derivatives
};

// 4th-order first derivative, one-sided at the edges.
void first_derivative(const std::vector<double>& f, double dx, std::vector<double>& out) {
    const int n = static_cast<int>(f.size());
    const double inv = 1.0 / dx;
    auto fwd = [&](int i, int s) {
        return s * inv *
               (-25.0 / 12.0 * f[i] + 4.0 * f[i + s] - 3.0 * f[i + 2 * s] +
                4.0 / 3.0 * f[i + 3 * s] - 0.25 * f[i + 4 * s]);
    };
    out[0] = fwd(0, 1);
    out[1] = fwd(1, 1);
    for (int i = 2; i < n - 2; ++i)
        out[i] = inv / 12.0 * (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]);
    out[n - 2] = fwd(n - 2, -1);
    out[n - 1] = fwd(n - 1, -1);
}

// 4-point Lagrange sampling of a grid function at x.
double sample4(const std::vector<double>& f, double x0, double dx, double x) {
    const int n = static_cast<int>(f.size());
    int i = static_cast<int>(std::floor((x - x0) / dx)) - 1;
    i = std::clamp(i, 0, n - 4);
    const double s = (x - (x0 + i * dx)) / dx; // in [~1, ~2] for interior points
    const double c0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
    const double c1 = s * (s - 2.0) * (s - 3.0) / 2.0;
    const double c2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
    const double c3 = s * (s - 1.0) * (s - 2.0) / 6.0;
    return c0 * f[i] + c1 * f[i + 1] + c2 * f[i + 2] + c3 * f[i + 3];
}

} // namespace

SpaceTimeField fd_solve(const Problem& problem, const FdConfig& cfg) {
    problem.validate();
    const ModelParams& p = problem.params;
    cfg.validate(p);
    const GridSpec& g = problem.grid;

    const double amp = std::max(std::fabs(g.x_min), std::fabs(g.x_max));
    const double auto_hw =
        amp + p.c * g.T + 10.0 * std::sqrt(p.epsilon * g.T);
    const double hw = std::max(cfg.x_halfwidth, auto_hw);
    const int half = static_cast<int>(std::ceil(hw / cfg.dx));
    const int n = 2 * half + 1;
    const double x0 = -half * cfg.dx;

    FdWorkspace w;
    w.n = n;
    w.x0 = x0;
    w.dx = cfg.dx;
    w.u.resize(n);
    w.v.resize(n);
    w.ux.resize(n);
    w.ku.resize(n);
    w.kv.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = x0 + i * cfg.dx;
        w.u[i] = problem.f0(x);
        w.v[i] = problem.f1(x);
    }

    const bool neumann = cfg.boundary == FdConfig::Boundary::homogeneous_neumann;
    const double inv2 = 1.0 / (cfg.dx * cfg.dx);
    // du/dt = v;  dv/dt = eps v_xx + c^2 u_xx - a v - F(x,t,u,u_x)
    auto rhs = [&](double t, const std::vector<double>& u, const std::vector<double>& v,
                   std::vector<double>& du, std::vector<double>& dv) {
        first_derivative(u, cfg.dx, w.ux);
        for (int i = 0; i < n; ++i) {
            double uxx, vxx;
            if (i == 0 || i == n - 1) {
                if (neumann) {
                    const int j = i == 0 ? 1 : n - 2;
                    uxx = 2.0 * (u[j] - u[i]) * inv2;
                    vxx = 2.0 * (v[j] - v[i]) * inv2;
                } else {
                    uxx = vxx = 0.0; // far field: spatial coupling dropped
                }
            } else {
                uxx = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv2;
                vxx = (v[i + 1] - 2.0 * v[i] + v[i - 1]) * inv2;
            }
            du[i] = v[i];
            dv[i] = p.epsilon * vxx + p.c * p.c * uxx - p.a * v[i] -
                    problem.rhs.F(x0 + i * cfg.dx, t, u[i], w.ux[i]);
        }
    };

    const double dt_max = cfg.dt > 0.0 ? cfg.dt : cfg.stable_dt(p);
    const int n_sub = std::max(1, static_cast<int>(std::ceil(g.dt() / dt_max - 1e-12)));
    const double dt = g.dt() / n_sub;

    SpaceTimeField out = make_field(g);
    std::vector<double> u1(n), v1(n), du(n), dv(n), au(n), av(n);
    double t = 0.0;
    for (int j = 0; j < g.nt; ++j) {
        for (int step = 0; step < n_sub; ++step) {
            // classic RK4
            rhs(t, w.u, w.v, du, dv);
            for (int i = 0; i < n; ++i) {
                au[i] = du[i];
                av[i] = dv[i];
                u1[i] = w.u[i] + 0.5 * dt * du[i];
                v1[i] = w.v[i] + 0.5 * dt * dv[i];
            }
            rhs(t + 0.5 * dt, u1, v1, du, dv);
            for (int i = 0; i < n; ++i) {
                au[i] += 2.0 * du[i];
                av[i] += 2.0 * dv[i];
                u1[i] = w.u[i] + 0.5 * dt * du[i];
                v1[i] = w.v[i] + 0.5 * dt * dv[i];
            }
            rhs(t + 0.5 * dt, u1, v1, du, dv);
            for (int i = 0; i < n; ++i) {
                au[i] += 2.0 * du[i];
                av[i] += 2.0 * dv[i];
                u1[i] = w.u[i] + dt * du[i];
                v1[i] = w.v[i] + dt * dv[i];
            }
            rhs(t + dt, u1, v1, du, dv);
            for (int i = 0; i < n; ++i) {
                w.u[i] += dt / 6.0 * (au[i] + du[i]);
                w.v[i] += dt / 6.0 * (av[i] + dv[i]);
            }
            t += dt;
        }
        double sup = 0.0;
        for (double uv : w.u) {
            if (!std::isfinite(uv)) { sup = std::numeric_limits<double>::infinity(); break; }
            sup = std::max(sup, std::fabs(uv));
        }
        if (sup > 1e6) throw ConsistencyError("fd_solve: solution blow-up (|u| > 1e6)");
        first_derivative(w.u, cfg.dx, w.ux);
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x_min + i * g.dx();
            out.u(j, i) = sample4(w.u, x0, cfg.dx, x);
            out.ux(j, i) = sample4(w.ux, x0, cfg.dx, x);
        }
    }
    return out;
}

Certification certify(const Problem& problem, const FdConfig& cfg, int levels,
                      double safety) {
    if (levels < 2) throw UsageError("certify: at least two refinement levels required");
    std::vector<SpaceTimeField> sols;
    FdConfig level_cfg = cfg;
    level_cfg.dt = 0.0; // re-derive the stable step per level
    for (int l = 0; l < levels; ++l) {
        sols.push_back(fd_solve(problem, level_cfg));
        level_cfg.dx *= 0.5;
    }
    Certification out;
    for (int l = 0; l + 1 < levels; ++l) {
        double gap = 0.0;
        for (std::size_t k = 0; k < sols[l].u_data().size(); ++k)
            gap = std::max(gap, std::fabs(sols[l].u_data()[k] - sols[l + 1].u_data()[k]));
        out.level_gaps.push_back(gap);
    }
    for (std::size_t l = 0; l + 1 < out.level_gaps.size(); ++l)
        if (out.level_gaps[l + 1] > out.level_gaps[l] && out.level_gaps[l] > 1e-14)
            throw ConsistencyError("certify: non-monotone refinement");
    if (levels >= 3 && out.level_gaps[levels - 2] > 1e-13) {
        out.observed_order =
            std::log2(out.level_gaps[levels - 3] / out.level_gaps[levels - 2]);
        if (out.observed_order < 1.5 || out.observed_order > 2.5)
            throw ConsistencyError("certify: observed order far from 2");
    }
    const SpaceTimeField& fine = sols[levels - 1];
    const SpaceTimeField& prev = sols[levels - 2];
    SpaceTimeField band = make_field(problem.grid);
    double sup = 0.0;
    for (int j = 0; j < problem.grid.nt; ++j)
        for (int i = 0; i < problem.grid.nx; ++i) {
            const double e = safety / 3.0 * std::fabs(fine.u(j, i) - prev.u(j, i));
            band.u(j, i) = e;
            sup = std::max(sup, e);
        }
    out.solution = fine;
    out.band = std::move(band);
    out.band_sup = sup;
    return out;
}

} // namespace dws
