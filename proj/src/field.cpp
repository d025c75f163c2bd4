#include "dws/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace dws {

SpaceTimeField::SpaceTimeField(std::vector<double> xs, std::vector<double> ts)
    : xs_(std::move(xs)), ts_(std::move(ts)) {
    for (std::size_t i = 1; i < xs_.size(); ++i)
        if (!(xs_[i] > xs_[i - 1])) throw UsageError("SpaceTimeField: x grid must increase");
    for (std::size_t j = 1; j < ts_.size(); ++j)
        if (!(ts_[j] > ts_[j - 1])) throw UsageError("SpaceTimeField: t grid must increase");
    u_.assign(xs_.size() * ts_.size(), 0.0);
    ux_.assign(xs_.size() * ts_.size(), 0.0);
}

SpaceTimeField make_field(const GridSpec& grid) {
    grid.validate();
    std::vector<double> xs(grid.nx), ts(grid.nt);
    for (int i = 0; i < grid.nx; ++i) xs[i] = grid.x_min + i * grid.dx();
    for (int j = 0; j < grid.nt; ++j) ts[j] = (j + 1) * grid.dt();
    return SpaceTimeField(std::move(xs), std::move(ts));
}

double SpaceTimeField::sup_norm() const {
    double mu = 0.0, mux = 0.0;
    for (double v : u_) mu = std::max(mu, std::fabs(v));
    for (double v : ux_) mux = std::max(mux, std::fabs(v));
    return mu + mux;
}

void SpaceTimeField::require_same_grid(const SpaceTimeField& other) const {
    if (xs_ != other.xs_ || ts_ != other.ts_)
        throw UsageError("SpaceTimeField: grids do not match");
}

double SpaceTimeField::distance(const SpaceTimeField& lhs, const SpaceTimeField& rhs) {
    lhs.require_same_grid(rhs);
    double mu = 0.0, mux = 0.0;
    for (std::size_t k = 0; k < lhs.u_.size(); ++k) {
        mu = std::max(mu, std::fabs(lhs.u_[k] - rhs.u_[k]));
        mux = std::max(mux, std::fabs(lhs.ux_[k] - rhs.ux_[k]));
    }
    return mu + mux;
}

double SpaceTimeField::interpolate_u(double x, double t) const {
    if (xs_.empty() || ts_.empty()) throw UsageError("interpolate_u: empty field");
    auto locate = [](const std::vector<double>& g, double v) {
        const auto it = std::upper_bound(g.begin(), g.end(), v);
        int i = static_cast<int>(it - g.begin()) - 1;
        i = std::clamp(i, 0, static_cast<int>(g.size()) - 2);
        return i;
    };
    const int i = locate(xs_, x), j = locate(ts_, t);
    const double fx = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
    const double ft = (t - ts_[j]) / (ts_[j + 1] - ts_[j]);
    return (1 - fx) * (1 - ft) * u(j, i) + fx * (1 - ft) * u(j, i + 1) +
           (1 - fx) * ft * u(j + 1, i) + fx * ft * u(j + 1, i + 1);
}

namespace {
std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace

void SpaceTimeField::write_csv(std::ostream& os) const {
    os << "x,t,u,ux\n";
    for (int j = 0; j < nt(); ++j)
        for (int i = 0; i < nx(); ++i)
            os << fmt17(xs_[i]) << ',' << fmt17(ts_[j]) << ','
               << fmt17(u(j, i)) << ',' << fmt17(ux(j, i)) << '\n';
}

SpaceTimeField SpaceTimeField::read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("x,t,u,ux", 0) != 0)
        throw UsageError("read_csv: missing 'x,t,u,ux' header");
    std::vector<double> xs, ts, us, uxs;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double x, t, u, ux;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x, &t, &u, &ux) != 4)
            throw UsageError("read_csv: malformed row '" + line + "'");
        if (ts.empty() || t > ts.back()) ts.push_back(t);
        if (ts.size() == 1) xs.push_back(x);
        us.push_back(u);
        uxs.push_back(ux);
    }
    if (us.size() != xs.size() * ts.size())
        throw UsageError("read_csv: row count does not form a full grid");
    SpaceTimeField f(std::move(xs), std::move(ts));
    for (std::size_t k = 0; k < us.size(); ++k) {
        f.u_[k] = us[k];
        f.ux_[k] = uxs[k];
    }
    return f;
}

std::string SpaceTimeField::to_json() const {
    nlohmann::json j;
    j["grid"]["x"] = xs_;
    j["grid"]["t"] = ts_;
    j["u"] = u_;
    j["ux"] = ux_;
    return j.dump();
}

SpaceTimeField SpaceTimeField::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    SpaceTimeField f(j.at("grid").at("x").get<std::vector<double>>(),
                     j.at("grid").at("t").get<std::vector<double>>());
    f.u_ = j.at("u").get<std::vector<double>>();
    f.ux_ = j.at("ux").get<std::vector<double>>();
    if (f.u_.size() != f.xs_.size() * f.ts_.size() || f.ux_.size() != f.u_.size())
        throw UsageError("from_json: value arrays do not match the grid");
    return f;
}

} // namespace dws
