// dws: solve the dissipative third-order wave problem from a config file.
//
// Exit codes: 0 ok, 2 config error, 3 tolerance/identity failure,
// 4 convergence failure, 5 oracle band violation.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dws/config.hpp"
#include "dws/oracle.hpp"
#include "dws/picard.hpp"
#include "dws/potentials.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 12345;
    bool verbose = false;
};

dws::RunConfig load_config(const Options& opt) {
    std::ifstream in(opt.config_path);
    if (!in) throw dws::UsageError("cannot open config file '" + opt.config_path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return dws::parse_config(ss.str());
}

fs::path ensure_out_dir(const Options& opt, const dws::RunConfig& cfg) {
    fs::path dir = opt.out_dir.empty() ? fs::path(cfg.directory) : fs::path(opt.out_dir);
    fs::create_directories(dir);
    return dir;
}

void write_field(const dws::SpaceTimeField& u, const dws::RunConfig& cfg,
                 const fs::path& dir, const std::string& stem, bool verbose) {
    if (cfg.formats.find("csv") != std::string::npos) {
        std::ofstream os(dir / (stem + ".csv"));
        u.write_csv(os);
        if (verbose) std::cout << "wrote " << (dir / (stem + ".csv")).string() << "\n";
    }
    if (cfg.formats.find("json") != std::string::npos) {
        std::ofstream os(dir / (stem + ".json"));
        os << u.to_json();
        if (verbose) std::cout << "wrote " << (dir / (stem + ".json")).string() << "\n";
    }
}

int cmd_kernel_table(const Options& opt, const std::vector<double>& xs,
                     const std::vector<double>& ts) {
    const dws::RunConfig cfg = load_config(opt);
    const dws::ModelParams p = cfg.model();
    const fs::path dir = ensure_out_dir(opt, cfg);
    const fs::path file = dir / "kernel-table.csv";
    std::ofstream os(file);
    os << "x,t,K,dK_dx,dK_dt\n";
    dws::KernelEvaluator ke(p);
    char buf[128];
    for (double t : ts)
        for (double x : xs) {
            const auto d = ke.derivatives(x, t);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", x, t, d.k,
                          d.dk_dx, d.dk_dt);
            os << buf;
        }
    std::cout << "wrote " << file.string() << "\n";
    return 0;
}

int cmd_verify_identities(const Options& opt, bool lattice) {
    // the built-in lattice sweep needs no model section; a config is only
    // required to name the single parameter set (or override the out dir)
    const bool need_cfg = !lattice || !opt.config_path.empty();
    const dws::RunConfig cfg = need_cfg ? load_config(opt) : dws::RunConfig{};
    const fs::path dir = ensure_out_dir(opt, cfg);
    json report;
    report["checks"] = json::array();
    bool ok = true;

    auto run_one = [&](const dws::ModelParams& p) {
        dws::KernelEvaluator ke(p);
        for (double t : {0.1, 1.0, 3.0}) {
            const auto mass = dws::verify_mass(t, ke);
            const auto mom = dws::verify_moment_identities(t, ke);
            const double mom_worst =
                std::max({std::fabs(mom.res_damped), std::fabs(mom.res_rate_b),
                          std::fabs(mom.res_operator)});
            json c;
            c["epsilon"] = p.epsilon;
            c["a"] = p.a;
            c["b"] = p.b;
            c["t"] = t;
            c["mass_residual"] = mass.residual();
            c["moment_residual"] = mom_worst;
            const bool pass = std::fabs(mass.residual()) <= 1e-6 && mom_worst <= 1e-5;
            c["pass"] = pass;
            ok = ok && pass;
            report["checks"].push_back(std::move(c));
        }
        // transform cross-check at a mix of real and complex frequencies
        const std::vector<dws::LaplacePoint> pts = {
            {{1.0, 0.0}}, {{0.5, 0.5}}, {{2.0, -1.0}}, {{4.0, 2.0}}};
        const double lap = dws::verify_laplace(1.0, pts, ke);
        // flux limit probed at b*t = 1/2: the finite-offset contamination of
        // the r -> 0 limit grows both for b*t >~ 1 and for very small t
        const auto flux = dws::verify_flux_limit(0.5 / p.b, ke);
        json c;
        c["epsilon"] = p.epsilon;
        c["a"] = p.a;
        c["b"] = p.b;
        c["laplace_rel_error"] = lap;
        c["flux_rel_error"] = flux.rel_error();
        const bool pass = lap <= 1e-6 && flux.rel_error() <= 1e-3;
        c["pass"] = pass;
        ok = ok && pass;
        report["checks"].push_back(std::move(c));
    };

    if (lattice) {
        for (double a : {0.5, 1.0, 2.0})
            for (double b : {2.0, 4.0, 8.0})
                for (double eps : {0.25, 0.5, 1.0})
                    run_one(dws::ModelParams::from_rates(eps, a, b));
    } else {
        run_one(cfg.model());
    }
    report["pass"] = ok;
    std::ofstream os(dir / "identities.json");
    os << report.dump(2) << "\n";
    std::cout << (ok ? "identities: pass" : "identities: FAIL") << " ("
              << report["checks"].size() << " checks, report in "
              << (dir / "identities.json").string() << ")\n";
    return ok ? 0 : 3;
}

int cmd_solve(const Options& opt, bool linear_only) {
    const dws::RunConfig cfg = load_config(opt);
    const fs::path dir = ensure_out_dir(opt, cfg);
    const dws::Problem prob = cfg.problem();
    if (linear_only && prob.rhs.depends_on_state)
        throw dws::UsageError("solve-linear requires a state-independent rhs");
    if (prob.rhs.depends_on_state && prob.rhs.beta_F > 0.0) {
        const double probed = prob.rhs.probe_lipschitz(opt.seed);
        if (opt.verbose)
            std::cout << "lipschitz probe: " << probed << " <= beta_F = " << prob.rhs.beta_F
                      << "\n";
    }
    if (linear_only) {
        auto f = [&](double x, double t) { return prob.rhs.F(x, t, 0.0, 0.0); };
        const dws::SpaceTimeField u =
            dws::linear_solve(f, prob.f0, prob.f1, prob.grid, prob.params,
                              cfg.solver().potentials);
        write_field(u, cfg, dir, "u", opt.verbose);
        std::cout << "solve-linear: done (sup norm " << u.sup_norm() << ")\n";
        return 0;
    }
    auto [u, report] = dws::continue_solution(prob, cfg.solver());
    write_field(u, cfg, dir, "u", opt.verbose);
    {
        std::ofstream os(dir / "report.json");
        os << report.to_json() << "\n";
    }
    std::cout << "solve: " << report.windows.size() << " window(s), eta " << report.eta
              << ", report in " << (dir / "report.json").string() << "\n";
    return 0;
}

int cmd_oracle_compare(const Options& opt, double fd_dx, int levels) {
    const dws::RunConfig cfg = load_config(opt);
    const fs::path dir = ensure_out_dir(opt, cfg);
    const dws::Problem prob = cfg.problem();

    dws::SpaceTimeField u = prob.rhs.depends_on_state
                                ? dws::continue_solution(prob, cfg.solver()).first
                                : dws::linear_solve(
                                      [&](double x, double t) {
                                          return prob.rhs.F(x, t, 0.0, 0.0);
                                      },
                                      prob.f0, prob.f1, prob.grid, prob.params,
                                      cfg.solver().potentials);
    dws::FdConfig fdc;
    fdc.dx = fd_dx;
    const dws::Certification cert = dws::certify(prob, fdc, levels);

    double gap = 0.0, gap_l2 = 0.0;
    for (std::size_t k = 0; k < u.u_data().size(); ++k) {
        const double d = std::fabs(u.u_data()[k] - cert.solution.u_data()[k]);
        gap = std::max(gap, d);
        gap_l2 += d * d;
    }
    gap_l2 = std::sqrt(gap_l2 / u.u_data().size());
    const double allowance = cert.band_sup + (prob.rhs.depends_on_state ? 1e-3 : 0.0);
    const bool ok = gap <= allowance;

    json report;
    report["linf_gap"] = gap;
    report["l2_gap"] = gap_l2;
    report["band_sup"] = cert.band_sup;
    report["observed_order"] = cert.observed_order;
    report["level_gaps"] = cert.level_gaps;
    report["pass"] = ok;
    std::ofstream os(dir / "oracle-compare.json");
    os << report.dump(2) << "\n";
    std::cout << (ok ? "oracle-compare: pass" : "oracle-compare: FAIL") << " (gap " << gap
              << ", band " << cert.band_sup << ")\n";
    return ok ? 0 : 5;
}

int cmd_emit_plot(const Options& opt, const std::vector<std::string>& fields) {
    const fs::path dir = opt.out_dir.empty() ? fs::path(".") : fs::path(opt.out_dir);
    fs::create_directories(dir);
    const fs::path script = dir / "plot.py";
    std::ofstream os(script);
    os << "#!/usr/bin/env python3\n"
          "\"\"\"Render the solver outputs: a space-time heat map per field CSV,\n"
          "time slices, and (if report.json is present) contraction-ratio curves.\"\"\"\n"
          "import csv, json, os, sys\n"
          "import matplotlib\n"
          "matplotlib.use('Agg')\n"
          "import matplotlib.pyplot as plt\n\n"
          "FIELDS = [\n";
    for (const auto& f : fields) os << "    " << json(f).dump() << ",\n";
    os << "]\n\n"
          "def load(path):\n"
          "    xs, ts, vals = [], [], {}\n"
          "    with open(path) as fh:\n"
          "        for row in csv.DictReader(fh):\n"
          "            x, t, u = float(row['x']), float(row['t']), float(row['u'])\n"
          "            if x not in xs: xs.append(x)\n"
          "            if t not in ts: ts.append(t)\n"
          "            vals[(x, t)] = u\n"
          "    grid = [[vals[(x, t)] for x in xs] for t in ts]\n"
          "    return xs, ts, grid\n\n"
          "for path in FIELDS:\n"
          "    xs, ts, grid = load(path)\n"
          "    stem = os.path.splitext(os.path.basename(path))[0]\n"
          "    fig, ax = plt.subplots()\n"
          "    im = ax.imshow(grid, origin='lower', aspect='auto',\n"
          "                   extent=[xs[0], xs[-1], ts[0], ts[-1]])\n"
          "    fig.colorbar(im); ax.set_xlabel('x'); ax.set_ylabel('t')\n"
          "    fig.savefig(stem + '_heatmap.png', dpi=150)\n"
          "    fig, ax = plt.subplots()\n"
          "    for j in range(0, len(ts), max(1, len(ts)//6)):\n"
          "        ax.plot(xs, grid[j], label=f't={ts[j]:.3g}')\n"
          "    ax.legend(); ax.set_xlabel('x'); ax.set_ylabel('u')\n"
          "    fig.savefig(stem + '_slices.png', dpi=150)\n\n"
          "if os.path.exists('report.json'):\n"
          "    rep = json.load(open('report.json'))\n"
          "    fig, ax = plt.subplots()\n"
          "    for w in rep['windows']:\n"
          "        ax.semilogy(w['diff_norms'], marker='o',\n"
          "                    label=f\"[{w['t_begin']:.3g},{w['t_end']:.3g}]\")\n"
          "    ax.legend(); ax.set_xlabel('iteration'); ax.set_ylabel('difference norm')\n"
          "    fig.savefig('contraction.png', dpi=150)\n";
    std::cout << "wrote " << script.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dissipative wave solver (fundamental-solution pipeline)"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--config", opt.config_path, "config file path");
    app.add_option("--out", opt.out_dir, "output directory (overrides config)");
    app.add_option("--seed", opt.seed, "seed for randomized property probes");
    app.add_flag("--verbose", opt.verbose, "chatty output");

    auto* kt = app.add_subcommand("kernel-table", "tabulate K and its derivatives");
    std::vector<double> kt_x{-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
    std::vector<double> kt_t{0.1, 0.5, 1.0, 2.0};
    kt->add_option("--x", kt_x, "x sample points");
    kt->add_option("--t", kt_t, "t sample points");

    auto* vi = app.add_subcommand("verify-identities", "kernel identity suite");
    bool lattice = false;
    vi->add_flag("--lattice", lattice, "sweep the full (a,b,eps) verification lattice");

    auto* sv = app.add_subcommand("solve", "windowed fixed-point solve");
    auto* sl = app.add_subcommand("solve-linear", "explicit linear solution");
    auto* oc = app.add_subcommand("oracle-compare", "compare against the FD reference");
    double fd_dx = 0.05;
    int fd_levels = 3;
    oc->add_option("--fd-dx", fd_dx, "coarsest FD spacing");
    oc->add_option("--fd-levels", fd_levels, "Richardson refinement levels");

    auto* ep = app.add_subcommand("emit-plot", "write a plotting script for field CSVs");
    std::vector<std::string> plot_fields;
    ep->add_option("fields", plot_fields, "field CSV files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (kt->parsed()) return cmd_kernel_table(opt, kt_x, kt_t);
        if (vi->parsed()) return cmd_verify_identities(opt, lattice);
        if (sv->parsed()) return cmd_solve(opt, false);
        if (sl->parsed()) return cmd_solve(opt, true);
        if (oc->parsed()) return cmd_oracle_compare(opt, fd_dx, fd_levels);
        if (ep->parsed()) return cmd_emit_plot(opt, plot_fields);
    } catch (const dws::ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 4;
    } catch (const dws::UsageError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const dws::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const dws::DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const dws::AccuracyError& e) {
        std::cerr << "tolerance failure: " << e.what() << "\n";
        return 3;
    } catch (const dws::ConsistencyError& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
