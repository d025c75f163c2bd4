#include "dws/picard.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "json.hpp"

namespace dws {

// ---------------------------------------------------------------------------
// RhsSpec
// ---------------------------------------------------------------------------

RhsSpec RhsSpec::zero() {
    RhsSpec r;
    r.F = [](double, double, double, double) { return 0.0; };
    r.beta_F = 0.0;
    r.sup_bound = 0.0;
    r.depends_on_state = false;
    r.label = "zero";
    return r;
}

RhsSpec RhsSpec::source(SourceFn f) {
    RhsSpec r;
    r.F = [f = std::move(f)](double x, double t, double, double) { return f(x, t); };
    r.beta_F = 0.0;
    r.sup_bound = 0.0; // unknown a priori; carried by the caller when needed
    r.depends_on_state = false;
    r.label = "source";
    return r;
}

RhsSpec RhsSpec::sine_gordon() {
    RhsSpec r;
    r.F = [](double, double, double u, double) { return std::sin(u); };
    r.beta_F = 1.0;
    r.sup_bound = 1.0;
    r.depends_on_state = true;
    r.label = "sine-gordon";
    return r;
}

RhsSpec RhsSpec::cubic() {
    RhsSpec r;
    r.F = [](double, double, double u, double) { return u * u * u / (1.0 + u * u); };
    // d/du [u^3/(1+u^2)] = (3u^2 + u^4)/(1+u^2)^2 peaks at u^2 = 3 with value 9/8.
    r.beta_F = 1.125;
    r.sup_bound = 10.0;
    r.depends_on_state = true;
    r.label = "cubic";
    return r;
}

RhsSpec RhsSpec::from_expression(const Expression& e, double beta_F, double sup_bound) {
    RhsSpec r;
    r.F = [e](double x, double t, double u, double p) { return e.eval(x, t, u, p); };
    r.beta_F = beta_F;
    r.sup_bound = sup_bound;
    r.depends_on_state = e.uses('u') || e.uses('p');
    r.label = "expr";
    return r;
}

double RhsSpec::probe_lipschitz(std::uint64_t seed, int n, double box) const {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-5.0, 5.0), ut(0.0, 5.0), us(-box, box);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = ux(rng), t = ut(rng);
        const double u1 = us(rng), p1 = us(rng), u2 = us(rng), p2 = us(rng);
        const double f1 = F(x, t, u1, p1), f2 = F(x, t, u2, p2);
        if (sup_bound > 0.0 && std::max(std::fabs(f1), std::fabs(f2)) > sup_bound * (1.0 + 1e-12))
            throw ConsistencyError("RhsSpec: sup bound violated at a probe point");
        const double den = std::fabs(u1 - u2) + std::fabs(p1 - p2);
        if (den < 1e-12) continue;
        worst = std::max(worst, std::fabs(f1 - f2) / den);
    }
    if (worst > beta_F * (1.0 + 1e-9) + 1e-15)
        throw ConsistencyError("RhsSpec: Lipschitz constant beta_F violated at a probe point");
    return worst;
}

void Problem::validate() const {
    grid.validate();
    if (rhs.depends_on_state && !(rhs.beta_F > 0.0))
        throw UsageError("Problem: state-dependent rhs requires beta_F > 0");
    if (!rhs.F) throw UsageError("Problem: rhs evaluator missing");
}

void SolverConfig::validate() const {
    if (!(theta > 0.0) || !(theta < 1.0))
        throw UsageError("SolverConfig: theta in (0,1) required");
    if (!(tol > 0.0) || max_iters < 1)
        throw UsageError("SolverConfig: tol > 0 and max_iters >= 1 required");
    potentials.validate();
}

// ---------------------------------------------------------------------------
// Contraction window
// ---------------------------------------------------------------------------

double contraction_window(const ModelParams& p, double beta_F, double theta,
                          double horizon) {
    if (beta_F < 0.0) throw DomainError("contraction_window: beta_F >= 0 required");
    if (beta_F == 0.0) return horizon;
    if (!p.strictly_dissipative())
        throw DomainError("contraction_window: a < b strictly required "
                          "(the x-derivative amplification constant diverges)");
    const double amp = 1.0 / p.a + 1.0 / std::sqrt(p.epsilon * (p.b - p.a));
    return theta / (beta_F * amp);
}

// ---------------------------------------------------------------------------
// PicardSolver
// ---------------------------------------------------------------------------

PicardSolver::PicardSolver(Problem problem, SolverConfig config)
    : problem_(std::move(problem)),
      config_(std::move(config)),
      eng_(problem_.grid, problem_.params, config_.potentials) {
    problem_.validate();
    config_.validate();
    eta_ = contraction_window(problem_.params, problem_.rhs.beta_F, config_.theta,
                              problem_.grid.T);
    win_levels_ = eta_ >= problem_.grid.T
                      ? eng_.levels()
                      : static_cast<int>(std::floor(eta_ / eng_.dt()));
    if (win_levels_ < 1)
        throw UsageError("PicardSolver: time step exceeds the contraction window; "
                         "increase nt or refine_t");
    data_ = eng_.data_terms(problem_.f0, problem_.f1);
    global_ = eng_.make_internal_field();
    hist_ = eng_.make_internal_field();
    src_.assign(static_cast<std::size_t>(eng_.levels() + 1) * eng_.nx(), 0.0);
    scratch_ = src_;
    // Source at t = 0 comes from the initial data.
    for (int i = 0; i < eng_.nx(); ++i) {
        const double x = eng_.x(i);
        src_[i] = problem_.rhs.F(x, 0.0, problem_.f0(x), problem_.f0.deriv(x));
    }
}

void PicardSolver::fill_source(const SpaceTimeField& v, int p_lo, int p_hi,
                               std::vector<double>& src) const {
    for (int p = p_lo; p <= p_hi; ++p)
        for (int i = 0; i < eng_.nx(); ++i)
            src[static_cast<std::size_t>(p) * eng_.nx() + i] =
                problem_.rhs.F(eng_.x(i), p * eng_.dt(), v.u(p - 1, i), v.ux(p - 1, i));
}

double PicardSolver::window_distance(const SpaceTimeField& lhs, const SpaceTimeField& rhs,
                                     int w_lo, int w_hi) const {
    double du = 0.0, dux = 0.0;
    for (int p = w_lo + 1; p <= w_hi; ++p)
        for (int i = 0; i < eng_.nx(); ++i) {
            du = std::max(du, std::fabs(lhs.u(p - 1, i) - rhs.u(p - 1, i)));
            dux = std::max(dux, std::fabs(lhs.ux(p - 1, i) - rhs.ux(p - 1, i)));
        }
    return du + dux;
}

void PicardSolver::prepare_window(int w_lo, int w_hi) {
    if (hist_lo_ == w_lo && hist_hi_ == w_hi) return;
    for (int p = w_lo + 1; p <= w_hi; ++p)
        for (int i = 0; i < eng_.nx(); ++i) {
            hist_.u(p - 1, i) = data_.u(p - 1, i);
            hist_.ux(p - 1, i) = data_.ux(p - 1, i);
        }
    if (w_lo >= 0)
        eng_.add_volume(src_, 0, w_lo, w_lo + 1, w_hi, -1.0, hist_);
    hist_lo_ = w_lo;
    hist_hi_ = w_hi;
}

SpaceTimeField PicardSolver::apply_map(const SpaceTimeField& v, int w_lo, int w_hi) {
    prepare_window(w_lo, w_hi);
    SpaceTimeField out = hist_;
    std::copy(src_.begin(), src_.end(), scratch_.begin());
    fill_source(v, w_lo + 1, w_hi, scratch_);
    eng_.add_volume(scratch_, w_lo + 1, w_hi, w_lo + 1, w_hi, -1.0, out);
    return out;
}

std::pair<SpaceTimeField, WindowReport> PicardSolver::solve_window(
    int w_lo, int w_hi, const SpaceTimeField& v_init) {
    WindowReport rep;
    rep.t_begin = w_lo * eng_.dt();
    rep.t_end = w_hi * eng_.dt();
    SpaceTimeField v = v_init;
    for (int it = 1; it <= config_.max_iters; ++it) {
        SpaceTimeField next = apply_map(v, w_lo, w_hi);
        const double diff = window_distance(next, v, w_lo, w_hi);
        rep.iterations = it;
        rep.diff_norms.push_back(diff);
        v = std::move(next);
        if (diff <= config_.tol) {
            for (std::size_t k = 1; k < rep.diff_norms.size(); ++k)
                if (rep.diff_norms[k - 1] > config_.tol)
                    rep.contraction_ratio = std::max(
                        rep.contraction_ratio, rep.diff_norms[k] / rep.diff_norms[k - 1]);
            return {std::move(v), std::move(rep)};
        }
        // A state-independent rhs converges after the second application.
        if (!problem_.rhs.depends_on_state && it >= 2 && diff == 0.0)
            return {std::move(v), std::move(rep)};
    }
    throw ConvergenceError("solve_window: no fixed point within max_iters",
                           rep.diff_norms);
}

void PicardSolver::freeze(const SpaceTimeField& fixed, int w_lo, int w_hi) {
    for (int p = w_lo + 1; p <= w_hi; ++p)
        for (int i = 0; i < eng_.nx(); ++i) {
            global_.u(p - 1, i) = fixed.u(p - 1, i);
            global_.ux(p - 1, i) = fixed.ux(p - 1, i);
        }
    fill_source(fixed, w_lo + 1, w_hi, src_);
}

std::pair<SpaceTimeField, SolveReport> PicardSolver::solve() {
    const auto t_start = std::chrono::steady_clock::now();
    SolveReport report;
    report.eta = eta_;
    report.lipschitz = problem_.rhs.beta_F > 0.0 ? config_.theta : 0.0;
    const int M = eng_.levels();
    int w_lo = 0;
    while (w_lo < M) {
        const int w_hi = std::min(w_lo + win_levels_, M);
        auto [fixed, rep] = solve_window(w_lo, w_hi, data_);
        freeze(fixed, w_lo, w_hi);
        // Fixed-point residual at the window end, evaluated from frozen data:
        // the junction-continuity observable for the continued solution.
        {
            SpaceTimeField probe = eng_.make_internal_field();
            for (int i = 0; i < eng_.nx(); ++i) {
                probe.u(w_hi - 1, i) = data_.u(w_hi - 1, i);
                probe.ux(w_hi - 1, i) = data_.ux(w_hi - 1, i);
            }
            eng_.add_volume(src_, 0, w_hi, w_hi, w_hi, -1.0, probe);
            rep.junction_gap = window_distance(probe, global_, w_hi - 1, w_hi);
            if (rep.junction_gap > 10.0 * config_.tol)
                throw ConsistencyError("continue_solution: junction gap above 10*tol");
        }
        report.windows.push_back(std::move(rep));
        w_lo = w_hi;
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return {eng_.restrict_to_output(global_), std::move(report)};
}

SpaceTimeField picard_map(const SpaceTimeField& v, const Problem& problem,
                          const SolverConfig& config) {
    PicardSolver solver(problem, config);
    return solver.apply_map(v, 0, solver.engine().levels());
}

std::pair<SpaceTimeField, SolveReport> continue_solution(const Problem& problem,
                                                         const SolverConfig& config) {
    PicardSolver solver(problem, config);
    return solver.solve();
}

// ---------------------------------------------------------------------------
// A-posteriori residual
// ---------------------------------------------------------------------------

double pde_residual(const SpaceTimeField& u, const Problem& problem) {
    const int nx = u.nx(), nt = u.nt();
    if (nx < 5 || nt < 5)
        throw UsageError("pde_residual: grid too coarse for 4th-order stencils");
    const double dx = u.xs()[1] - u.xs()[0];
    const double dt = u.ts()[1] - u.ts()[0];
    const ModelParams& p = problem.params;

    auto uxx = [&](int j, int i) {
        return (-u.u(j, i + 2) + 16.0 * u.u(j, i + 1) - 30.0 * u.u(j, i) +
                16.0 * u.u(j, i - 1) - u.u(j, i - 2)) /
               (12.0 * dx * dx);
    };
    double worst = 0.0;
    for (int j = 2; j < nt - 2; ++j)
        for (int i = 2; i < nx - 2; ++i) {
            const double ut = (-u.u(j + 2, i) + 8.0 * u.u(j + 1, i) -
                               8.0 * u.u(j - 1, i) + u.u(j - 2, i)) /
                              (12.0 * dt);
            const double utt = (-u.u(j + 2, i) + 16.0 * u.u(j + 1, i) -
                                30.0 * u.u(j, i) + 16.0 * u.u(j - 1, i) -
                                u.u(j - 2, i)) /
                               (12.0 * dt * dt);
            const double uxxv = uxx(j, i);
            const double uxxt = (-uxx(j + 2, i) + 8.0 * uxx(j + 1, i) -
                                 8.0 * uxx(j - 1, i) + uxx(j - 2, i)) /
                                (12.0 * dt);
            const double f =
                problem.rhs.F(u.xs()[i], u.ts()[j], u.u(j, i), u.ux(j, i));
            const double res =
                p.epsilon * uxxt + p.c * p.c * uxxv - utt - p.a * ut - f;
            worst = std::max(worst, std::fabs(res));
        }
    return worst;
}

// ---------------------------------------------------------------------------
// SolveReport JSON
// ---------------------------------------------------------------------------

std::string SolveReport::to_json() const {
    nlohmann::json j;
    j["eta"] = eta;
    j["lipschitz"] = lipschitz;
    j["wall_seconds"] = wall_seconds;
    j["windows"] = nlohmann::json::array();
    for (const auto& w : windows) {
        nlohmann::json jw;
        jw["t_begin"] = w.t_begin;
        jw["t_end"] = w.t_end;
        jw["iterations"] = w.iterations;
        jw["diff_norms"] = w.diff_norms;
        jw["contraction_ratio"] = w.contraction_ratio;
        jw["junction_gap"] = w.junction_gap;
        j["windows"].push_back(std::move(jw));
    }
    return j.dump(2);
}

} // namespace dws
