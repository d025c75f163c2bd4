// Acceptance gate: one line of output per criterion, nonzero exit if any
// criterion fails.  Tolerances are pinned here and nowhere else.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "dws/config.hpp"
#include "dws/oracle.hpp"

using namespace dws;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, const char* what, bool pass, const std::string& detail) {
    std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what,
                detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

const double kLatA[] = {0.5, 1.0, 2.0};
const double kLatB[] = {2.0, 4.0, 8.0};
const double kLatEps[] = {0.25, 0.5, 1.0};
const double kLatT[] = {0.1, 1.0, 3.0};

// --------------------------------------------------------------- criteria 1-2

void mass_and_moments() {
    double worst_mass = 0.0, worst_mom = 0.0;
    int points = 0;
    for (double a : kLatA)
        for (double b : kLatB)
            for (double eps : kLatEps) {
                const KernelEvaluator ke(ModelParams::from_rates(eps, a, b));
                for (double t : kLatT) {
                    ++points;
                    worst_mass = std::max(worst_mass,
                                          std::fabs(verify_mass(t, ke).residual()));
                    const MomentCheck m = verify_moment_identities(t, ke);
                    worst_mom = std::max({worst_mom, std::fabs(m.res_damped),
                                          std::fabs(m.res_rate_b),
                                          std::fabs(m.res_operator)});
                }
            }
    report(1, "mass law on the 81-point lattice", points == 81 && worst_mass <= 1e-6,
           fmt("worst residual %.2e, tol 1e-6", worst_mass));
    report(2, "moment identities on the lattice", points == 81 && worst_mom <= 1e-5,
           fmt("worst residual %.2e, tol 1e-5", worst_mom));
}

// ----------------------------------------------------------------- criterion 3

void laplace_cross_check() {
    const std::vector<LaplacePoint> samples = {
        {{0.7, 0.0}}, {{2.5, 0.0}}, {{2.0, 3.0}}, {{0.6, -1.5}}};
    double worst = 0.0;
    const KernelEvaluator ke(ModelParams(1.0, std::sqrt(2.0), 1.0));
    for (double r : {0.3, 1.0, 2.0}) // 3 x 4 = 12 (r, s) samples
        worst = std::max(worst, verify_laplace(r, samples, ke));
    report(3, "Laplace transform of the time-domain kernel", worst <= 1e-6,
           fmt("worst relative error %.2e, tol 1e-6", worst));
}

// ----------------------------------------------------------------- criterion 4

void flux_limit() {
    // finite-offset contamination grows with b t, so probe while b t <= 1
    struct Combo { double b, t; };
    const Combo combos[] = {{2.0, 0.3}, {2.0, 0.5}, {4.0, 0.2}};
    double worst = 0.0;
    int n = 0;
    for (double eps : kLatEps)
        for (const Combo& c : combos) {
            ++n;
            const KernelEvaluator ke(ModelParams::from_rates(eps, c.b / 2.0, c.b));
            worst = std::max(worst, std::fabs(verify_flux_limit(c.t, ke).rel_error()));
        }
    report(4, "small-offset flux limit, 9 combinations", n == 9 && worst <= 1e-3,
           fmt("worst relative error %.2e, tol 1e-3", worst));
}

// ----------------------------------------------------------------- criterion 5

void nonnegativity() {
    // The time-domain path integrates a pointwise-nonnegative integrand with
    // positive-weight rules, so a pass here certifies the sign structurally.
    // Small |x| puts a boundary layer at the lower endpoint: allow deep
    // subdivision and don't demand more than sign-level accuracy.
    QuadratureSpec quad;
    quad.rel_tol = 1e-6;
    quad.abs_tol = 1e-9;
    quad.max_subdivisions = 2000;
    const ModelParams sets[] = {ModelParams(1.0, std::sqrt(2.0), 1.0),
                                ModelParams::from_rates(0.5, 0.5, 4.0),
                                ModelParams::from_rates(0.25, 2.0, 4.0)};
    double min_k = 0.0;
    for (const ModelParams& p : sets) {
        const KernelEvaluator ke(p, quad, 1e-3, KernelPath::time_domain);
        for (int i = 0; i < 200; ++i)
            for (int j = 0; j < 50; ++j) {
                const double x = -3.0 + 6.0 * i / 199.0;
                const double t = 0.05 + 1.95 * j / 49.0;
                min_k = std::min(min_k, ke.k(x, t));
            }
    }
    report(5, "kernel nonnegativity on 200x50 grid, 3 parameter sets",
           min_k >= -1e-12, fmt("min K = %.2e, floor -1e-12", min_k));
}

// ----------------------------------------------------------------- criterion 6

void dual_path_agreement() {
    const ModelParams p(1.0, std::sqrt(2.0), 1.0);
    const KernelEvaluator td(p, {}, 1e-3, KernelPath::time_domain);
    const KernelEvaluator tb(p, {}, 1e-3, KernelPath::talbot);
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> ux(0.05, 1.8), ut(0.3, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double x = ux(rng), t = ut(rng);
        const double a = td.k(x, t), b = tb.k(x, t);
        worst = std::max(worst, std::fabs(a - b) / std::max(std::fabs(a), 1e-300));
    }
    report(6, "time-domain vs Talbot kernel, 500 probes", worst <= 1e-6,
           fmt("worst relative gap %.2e, tol 1e-6", worst));
}

// ----------------------------------------------------------------- criterion 7

double linf_u(const SpaceTimeField& a, const SpaceTimeField& b) {
    double m = 0.0;
    for (int j = 0; j < a.nt(); ++j)
        for (int i = 0; i < a.nx(); ++i)
            m = std::max(m, std::fabs(a.u(j, i) - b.u(j, i)));
    return m;
}

void linear_vs_oracle() {
    const GridSpec grid{-2.0, 2.0, 41, 0.5, 5};
    const ModelParams par(1.0, std::sqrt(2.0), 1.0);
    struct Fixture { const char* name; Problem p; };
    Problem base{par, SampledFunction::zero(), SampledFunction::zero(),
                 RhsSpec::zero(), grid};
    Fixture fx[3] = {{"gaussian f0", base}, {"f1 only", base}, {"constant source", base}};
    fx[0].p.f0 = SampledFunction::gaussian(0.0, 1.0);
    fx[1].p.f1 = SampledFunction::gaussian(0.0, 0.8);
    fx[2].p.rhs = RhsSpec::source([](double, double) { return 0.5; });
    bool pass = true;
    std::string detail;
    for (const Fixture& f : fx) {
        auto src = [&](double x, double t) { return f.p.rhs.F(x, t, 0.0, 0.0); };
        // Richardson-certify the explicit solution's own time discretization
        // the same way the oracle is certified (the oracle band alone can be
        // exactly zero, e.g. a spatially constant fixture solved exactly by
        // the FD scheme).
        PotentialConfig coarse, fine;
        fine.refine_t = 2 * coarse.refine_t;
        const SpaceTimeField u1 = linear_solve(src, f.p.f0, f.p.f1, grid, par, coarse);
        const SpaceTimeField u2 = linear_solve(src, f.p.f0, f.p.f1, grid, par, fine);
        const double own_band = 2.0 / 3.0 * linf_u(u1, u2); // O(k^2), safety 2
        const Certification cert = certify(f.p, FdConfig{});
        const double gap = linf_u(u2, cert.solution);
        const double band = cert.band_sup + own_band;
        const bool ok = gap <= band && band <= 1e-3;
        pass = pass && ok;
        detail += fmt("%.1e<=%.1e ", gap, band);
    }
    report(7, "explicit linear solution inside the certified bands", pass,
           detail + "band tol 1e-3");
}

// ----------------------------------------------------------------- criterion 8

void initial_condition_limits() {
    const ModelParams p(1.0, std::sqrt(2.0), 1.0);
    const SampledFunction g = SampledFunction::gaussian(0.0, 1.0);
    const double xs[] = {-0.7, 0.0, 1.1};
    const double ts[] = {1e-2, 1e-3, 1e-4};
    double err[3][4]; // per t: |u|, |dt u - g|, |u* - g|, |dt u*|
    for (int k = 0; k < 3; ++k) {
        double e0 = 0, e1 = 0, e2 = 0, e3 = 0;
        for (double x : xs) {
            e0 = std::max(e0, std::fabs(surface_potential(g, x, ts[k], p)));
            e1 = std::max(e1, std::fabs(surface_potential_dt(g, x, ts[k], p) - g(x)));
            e2 = std::max(e2, std::fabs(surface_potential_star(g, x, ts[k], p) - g(x)));
            e3 = std::max(e3, std::fabs(surface_potential_star_dt(g, x, ts[k], p)));
        }
        err[k][0] = e0; err[k][1] = e1; err[k][2] = e2; err[k][3] = e3;
    }
    bool pass = true;
    double final_worst = 0.0;
    for (int q = 0; q < 4; ++q) {
        pass = pass && err[1][q] < err[0][q] && err[2][q] < err[1][q];
        final_worst = std::max(final_worst, err[2][q]);
    }
    pass = pass && final_worst <= 1e-3;
    report(8, "short-time limits of the surface potentials", pass,
           fmt("decreasing along t = 1e-2..1e-4, final %.2e, tol 1e-3", final_worst));
}

// ----------------------------------------------------------- criteria 9/10/13

Problem sine_gordon_problem() {
    return Problem{ModelParams(1.0, std::sqrt(2.0), 1.0),
                   SampledFunction::gaussian(0.0, 1.0), SampledFunction::zero(),
                   RhsSpec::sine_gordon(), GridSpec{-3.0, 3.0, 61, 1.0, 20}};
}

void contraction_and_junctions() {
    SolverConfig cfg;
    cfg.tol = 1e-12; // drive the iteration further to expose the decay profile
    PicardSolver solver(sine_gordon_problem(), cfg);
    auto [u, rep] = solver.solve();
    bool geo = !rep.windows.empty();
    double worst_ratio = 0.0, worst_gap = 0.0;
    int min_iters = 1 << 20;
    for (const WindowReport& w : rep.windows) {
        worst_ratio = std::max(worst_ratio, w.contraction_ratio);
        worst_gap = std::max(worst_gap, w.junction_gap);
        min_iters = std::min(min_iters, w.iterations);
        for (std::size_t i = 1; i < w.diff_norms.size(); ++i)
            geo = geo && w.diff_norms[i] <= 0.5 * w.diff_norms[i - 1] + cfg.tol;
    }
    report(9, "windowed iteration contracts at theta = 0.5",
           geo && min_iters >= 4 && worst_ratio <= 0.5,
           fmt("worst ratio %.2e, min iterations %.0f >= 4", worst_ratio,
               static_cast<double>(min_iters)));
    report(13, "junction continuity at every window boundary",
           worst_gap <= 10.0 * cfg.tol,
           fmt("worst gap %.2e, tol %.1e", worst_gap, 10.0 * cfg.tol));
}

void uniqueness_probe() {
    SolverConfig cfg; // tol 1e-8, theta 0.5
    PicardSolver solver(sine_gordon_problem(), cfg);
    const int w = solver.window_levels();
    const SpaceTimeField v1 = solver.data_terms();
    SpaceTimeField v2 = v1;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> amp(-0.5, 0.5);
    for (int j = 0; j < w; ++j)
        for (int i = 0; i < solver.engine().nx(); ++i) {
            v2.u(j, i) += amp(rng);
            v2.ux(j, i) += amp(rng);
        }
    const SpaceTimeField f1 = solver.solve_window(0, w, v1).first;
    const SpaceTimeField f2 = solver.solve_window(0, w, v2).first;
    double gap = 0.0;
    for (int j = 0; j < w; ++j)
        for (int i = 0; i < solver.engine().nx(); ++i)
            gap = std::max({gap, std::fabs(f1.u(j, i) - f2.u(j, i)),
                            std::fabs(f1.ux(j, i) - f2.ux(j, i))});
    const double limit = 2.0 * cfg.tol / (1.0 - cfg.theta); // 4e-8
    report(10, "two initial iterates land on one fixed point", gap <= limit,
           fmt("window-norm gap %.2e, limit %.1e", gap, limit));
}

// ---------------------------------------------------------------- criterion 11

void nonlinear_vs_oracle() {
    const GridSpec grid{-2.0, 2.0, 41, 0.5, 5};
    const ModelParams par(1.0, std::sqrt(2.0), 1.0);
    bool pass = true;
    std::string detail;
    for (RhsSpec rhs : {RhsSpec::sine_gordon(), RhsSpec::cubic()}) {
        Problem p{par, SampledFunction::gaussian(0.0, 1.0), SampledFunction::zero(),
                  rhs, grid};
        const SpaceTimeField u = continue_solution(p).first;
        const Certification cert = certify(p, FdConfig{});
        const double gap = linf_u(u, cert.solution);
        const double budget = cert.band_sup + 1e-3;
        pass = pass && gap <= budget;
        detail += fmt("%.1e<=%.1e ", gap, budget);
    }
    report(11, "nonlinear fixtures inside oracle band + 1e-3", pass, detail);
}

// ---------------------------------------------------------------- criterion 12

void window_invariance() {
    const Problem p = sine_gordon_problem();
    SolverConfig coarse, fine;
    fine.theta = 0.25;
    const SpaceTimeField a = continue_solution(p, coarse).first;
    const SpaceTimeField b = continue_solution(p, fine).first;
    const double gap = SpaceTimeField::distance(a, b);
    report(12, "solution invariant under the window partition", gap <= 1e-6,
           fmt("theta 0.5 vs 0.25 gap %.2e, tol 1e-6", gap));
}

// ---------------------------------------------------------------- criterion 14

int run_cli(const std::string& cli, const std::string& args) {
    const std::string cmd = "\"" + cli + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void cli_contract(const std::string& cli) {
    const fs::path dir = fs::temp_directory_path() / "dws-acceptance";
    fs::create_directories(dir);
    const std::string good =
        "[model]\nepsilon = 1\nc = 1.4142135623730951\na = 1\n"
        "[grid]\nx_min = -2\nx_max = 2\nnx = 21\nT = 0.4\nnt = 4\n"
        "[initial]\nf0 = gaussian(0,1)\n";
    std::ofstream(dir / "good.cfg") << good;
    std::ofstream(dir / "bad.cfg") << good << "[model]\na = 9\n"; // a > b
    std::ofstream(dir / "stall.cfg") << good
                                     << "[rhs]\npreset = sine-gordon\n"
                                        "[solver]\nmax_iters = 1\ntol = 1e-14\n";

    // round-trip of the canonical text form
    const RunConfig parsed = parse_config(good);
    const bool round_trip = parse_config(print_config(parsed)) == parsed;

    const std::string out = " --out " + (dir / "out").string();
    const int ok = run_cli(cli, "--config " + (dir / "good.cfg").string() +
                                    out + " solve-linear");
    const int usage = run_cli(cli, "--config " + (dir / "bad.cfg").string() +
                                       out + " solve-linear");
    const int stall = run_cli(cli, "--config " + (dir / "stall.cfg").string() +
                                       out + " solve");
    const int idents = run_cli(cli, out + " verify-identities --lattice");
    const bool pass = round_trip && ok == 0 && usage == 2 && stall == 4 && idents == 0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "round-trip %s; exits solve-linear=%d usage=%d budget=%d identities=%d",
                  round_trip ? "ok" : "BROKEN", ok, usage, stall, idents);
    report(14, "CLI round-trip, exit codes, identity lattice", pass, buf);
}

} // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
    if (cli.empty()) {
        std::fprintf(stderr, "usage: acceptance --cli <path-to-dws-cli>\n");
        return 2;
    }
    // a throwing criterion is a failing criterion, not a dead gate
    auto guarded = [](int id, const char* what, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            report(id, what, false, std::string("exception: ") + e.what());
        }
        std::fflush(stdout);
    };
    guarded(1, "mass/moment lattice", mass_and_moments);
    guarded(3, "Laplace cross-check", laplace_cross_check);
    guarded(4, "flux limit", flux_limit);
    guarded(5, "nonnegativity", nonnegativity);
    guarded(6, "dual-path agreement", dual_path_agreement);
    guarded(7, "linear vs oracle", linear_vs_oracle);
    guarded(8, "short-time limits", initial_condition_limits);
    guarded(9, "contraction/junctions", contraction_and_junctions);
    guarded(10, "uniqueness probe", uniqueness_probe);
    guarded(11, "nonlinear vs oracle", nonlinear_vs_oracle);
    guarded(12, "window invariance", window_invariance);
    guarded(14, "CLI contract", [&] { cli_contract(cli); });
    if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
    else std::printf("all 14 criteria passed\n");
    return g_failures ? 1 : 0;
}
