#include "dws/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace dws {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end && *end == '\0' && !s.empty() && std::isfinite(out);
}

bool parse_int(const std::string& s, int& out) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (!end || *end != '\0' || s.empty()) return false;
    out = static_cast<int>(v);
    return true;
}

/// "name" or "name(a,b,...)" -> (name, args); returns false if not that shape.
bool parse_call(const std::string& s, std::string& name, std::vector<double>& args) {
    std::size_t p = s.find('(');
    if (p == std::string::npos) {
        for (char ch : s)
            if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_'))
                return false;
        name = s;
        return true;
    }
    if (s.back() != ')') return false;
    name = trim(s.substr(0, p));
    std::string inner = s.substr(p + 1, s.size() - p - 2);
    std::stringstream ss(inner);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        double v;
        if (!parse_double(trim(tok), v)) return false;
        args.push_back(v);
    }
    return true;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Check a data spec without sampling it; returns a diagnostic or "".
std::string check_data_spec(const std::string& spec) {
    std::string name;
    std::vector<double> args;
    if (parse_call(spec, name, args)) {
        if (name == "zero" && args.empty()) return "";
        if (name == "constant" && args.size() == 1) return "";
        if (name == "gaussian" && args.size() == 2) {
            if (!(args[1] > 0.0)) return "gaussian sigma > 0 required";
            return "";
        }
        if (name == "sine" && args.size() == 1) return "";
        if ((name == "tanh-front" || name == "tanh_front") && args.size() <= 1) return "";
        if (name == "zero" || name == "constant" || name == "gaussian" ||
            name == "sine" || name == "tanh-front" || name == "tanh_front")
            return "wrong argument count for preset '" + name + "'";
        // fall through: maybe an expression like "exp(-x)"
    }
    try {
        Expression e = Expression::parse(spec);
        if (e.uses('u') || e.uses('p') || e.uses('t'))
            return "initial data may depend on x only";
    } catch (const ParseError& pe) {
        return std::string("expression error: ") + pe.what();
    }
    return "";
}

} // namespace

SampledFunction make_data_function(const std::string& spec, double lo, double hi) {
    std::string name;
    std::vector<double> args;
    if (parse_call(spec, name, args)) {
        if (name == "zero" && args.empty()) return SampledFunction::zero();
        if (name == "constant" && args.size() == 1) return SampledFunction::constant(args[0]);
        if (name == "gaussian" && args.size() == 2)
            return SampledFunction::gaussian(args[0], args[1]);
        if (name == "sine" && args.size() == 1) return SampledFunction::sine(args[0]);
        if ((name == "tanh-front" || name == "tanh_front") && args.size() <= 1)
            return SampledFunction::tanh_front(args.empty() ? 1.0 : args[0]);
    }
    Expression e = Expression::parse(spec);
    if (e.uses('u') || e.uses('p') || e.uses('t'))
        throw UsageError("initial data '" + spec + "' may depend on x only");
    const int n = std::max(2001, static_cast<int>((hi - lo) * 200));
    return SampledFunction::from_expression(e, lo, hi, n);
}

SolverConfig RunConfig::solver() const {
    SolverConfig s;
    s.theta = theta;
    s.tol = tol;
    s.max_iters = max_iters;
    s.potentials.refine_x = refine_x;
    s.potentials.refine_t = refine_t;
    return s;
}

Problem RunConfig::problem() const {
    const ModelParams p = model();
    const GridSpec g = grid();
    const double pad = p.c * g.T + 10.0 * std::sqrt(p.epsilon * g.T);
    const double lo = g.x_min - pad, hi = g.x_max + pad;

    RhsSpec rhs;
    if (rhs_preset == "zero") {
        rhs = RhsSpec::zero();
    } else if (rhs_preset == "sine-gordon") {
        rhs = RhsSpec::sine_gordon();
    } else if (rhs_preset == "cubic") {
        rhs = RhsSpec::cubic();
    } else if (rhs_preset == "source") {
        Expression e = Expression::parse(rhs_expr);
        rhs = RhsSpec::source([e](double x, double t) { return e.eval(x, t, 0.0, 0.0); });
        rhs.label = "source";
    } else if (rhs_preset == "expr") {
        rhs = RhsSpec::from_expression(Expression::parse(rhs_expr), beta_F, sup_bound);
    } else {
        throw UsageError("unknown rhs preset '" + rhs_preset + "'");
    }
    if (beta_F > 0.0) rhs.beta_F = beta_F;
    if (sup_bound > 0.0) rhs.sup_bound = sup_bound;

    return Problem{p, make_data_function(f0, lo, hi), make_data_function(f1, lo, hi),
                   std::move(rhs), g};
}

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::vector<std::string> errors;
    bool have_model = false, have_grid = false;
    bool explicit_expr = false;

    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    auto err = [&](const std::string& msg) {
        errors.push_back("line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                err("unterminated section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section == "model") have_model = true;
            else if (section == "grid") have_grid = true;
            else if (section != "initial" && section != "rhs" && section != "solver" &&
                     section != "output")
                err("unknown section [" + section + "]");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            err("expected 'key = value'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        auto num = [&](double& slot) {
            if (!parse_double(val, slot)) err("invalid number for '" + key + "'");
        };
        auto inum = [&](int& slot) {
            if (!parse_int(val, slot)) err("invalid integer for '" + key + "'");
        };
        if (section == "model") {
            if (key == "epsilon") num(c.epsilon);
            else if (key == "c") num(c.c);
            else if (key == "a") num(c.a);
            else err("unknown key '" + key + "' in [model]");
        } else if (section == "initial") {
            if (key == "f0") c.f0 = val;
            else if (key == "f1") c.f1 = val;
            else err("unknown key '" + key + "' in [initial]");
        } else if (section == "rhs") {
            if (key == "preset") c.rhs_preset = val;
            else if (key == "expr") { c.rhs_expr = val; explicit_expr = true; }
            else if (key == "beta_F") num(c.beta_F);
            else if (key == "sup_bound") num(c.sup_bound);
            else err("unknown key '" + key + "' in [rhs]");
        } else if (section == "grid") {
            if (key == "x_min") num(c.x_min);
            else if (key == "x_max") num(c.x_max);
            else if (key == "nx") inum(c.nx);
            else if (key == "T") num(c.T);
            else if (key == "nt") inum(c.nt);
            else err("unknown key '" + key + "' in [grid]");
        } else if (section == "solver") {
            if (key == "theta") num(c.theta);
            else if (key == "tol") num(c.tol);
            else if (key == "max_iters") inum(c.max_iters);
            else if (key == "refine_x") inum(c.refine_x);
            else if (key == "refine_t") inum(c.refine_t);
            else err("unknown key '" + key + "' in [solver]");
        } else if (section == "output") {
            if (key == "directory") c.directory = val;
            else if (key == "formats") c.formats = val;
            else err("unknown key '" + key + "' in [output]");
        } else {
            err("key outside any section");
        }
    }

    // Semantic validation (all violations reported together).
    auto sem = [&](const std::string& msg) { errors.push_back("config: " + msg); };
    if (!have_model) sem("[model] section required");
    if (!have_grid) sem("[grid] section required");
    if (!(c.epsilon > 0.0)) sem("epsilon > 0 required");
    if (!(c.c > 0.0)) sem("c > 0 required");
    if (!(c.a > 0.0)) sem("a > 0 required");
    if (c.epsilon > 0.0 && c.c > 0.0 && c.a > 0.0 && !(c.a < c.c * c.c / c.epsilon))
        sem("a < b required (b = c^2/epsilon = " + fmt(c.c * c.c / c.epsilon) + ")");
    if (have_grid) {
        if (!(c.x_min < c.x_max)) sem("x_min < x_max required");
        if (c.nx < 2) sem("nx >= 2 required");
        if (!(c.T > 0.0)) sem("T > 0 required");
        if (c.nt < 1) sem("nt >= 1 required");
    }
    if (!(c.theta > 0.0 && c.theta < 1.0)) sem("theta in (0,1) required");
    if (!(c.tol > 0.0)) sem("tol > 0 required");
    if (c.max_iters < 1) sem("max_iters >= 1 required");
    if (c.refine_x < 1 || c.refine_t < 1) sem("refine factors >= 1 required");
    if (c.beta_F < 0.0) sem("beta_F >= 0 required");

    if (c.rhs_preset != "zero" && c.rhs_preset != "source" && c.rhs_preset != "sine-gordon" &&
        c.rhs_preset != "cubic" && c.rhs_preset != "expr")
        sem("unknown rhs preset '" + c.rhs_preset + "'");
    if (explicit_expr && c.rhs_preset != "expr" && c.rhs_preset != "source")
        c.rhs_preset = "expr";
    if (c.rhs_preset == "expr" || c.rhs_preset == "source") {
        if (c.rhs_expr.empty()) {
            sem("rhs expr required for preset '" + c.rhs_preset + "'");
        } else {
            try {
                Expression e = Expression::parse(c.rhs_expr);
                const bool state = e.uses('u') || e.uses('p');
                if (c.rhs_preset == "source" && state)
                    sem("source rhs may depend on x and t only");
                if (c.rhs_preset == "expr" && state && !(c.beta_F > 0.0))
                    sem("beta_F required for a state-dependent rhs");
            } catch (const ParseError& pe) {
                sem(std::string("rhs expression: ") + pe.what());
            }
        }
    }
    for (const auto* slot : {&c.f0, &c.f1}) {
        const std::string diag = check_data_spec(*slot);
        if (!diag.empty())
            sem((slot == &c.f0 ? "f0: " : "f1: ") + diag);
    }

    if (!errors.empty()) {
        std::string all = "invalid configuration:";
        for (const auto& e : errors) all += "\n  " + e;
        throw UsageError(all);
    }
    return c;
}

std::string print_config(const RunConfig& c) {
    std::ostringstream os;
    os << "[model]\n"
       << "epsilon = " << fmt(c.epsilon) << "\n"
       << "c = " << fmt(c.c) << "\n"
       << "a = " << fmt(c.a) << "\n\n"
       << "[initial]\n"
       << "f0 = " << c.f0 << "\n"
       << "f1 = " << c.f1 << "\n\n"
       << "[rhs]\n"
       << "preset = " << c.rhs_preset << "\n";
    if (!c.rhs_expr.empty()) os << "expr = " << c.rhs_expr << "\n";
    os << "beta_F = " << fmt(c.beta_F) << "\n"
       << "sup_bound = " << fmt(c.sup_bound) << "\n\n"
       << "[grid]\n"
       << "x_min = " << fmt(c.x_min) << "\n"
       << "x_max = " << fmt(c.x_max) << "\n"
       << "nx = " << c.nx << "\n"
       << "T = " << fmt(c.T) << "\n"
       << "nt = " << c.nt << "\n\n"
       << "[solver]\n"
       << "theta = " << fmt(c.theta) << "\n"
       << "tol = " << fmt(c.tol) << "\n"
       << "max_iters = " << c.max_iters << "\n"
       << "refine_x = " << c.refine_x << "\n"
       << "refine_t = " << c.refine_t << "\n\n"
       << "[output]\n"
       << "directory = " << c.directory << "\n"
       << "formats = " << c.formats << "\n";
    return os.str();
}

} // namespace dws
