#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dws/errors.hpp"

namespace dws {

/// Uniform space-time output grid: nx points over [x_min, x_max] and nt time
/// levels dt, 2dt, ..., T (the open-at-zero convention of the problem).
struct GridSpec {
    double x_min, x_max;
    int nx;
    double T;
    int nt;

    void validate() const {
        if (!(x_max > x_min) || nx < 2 || !(T > 0.0) || nt < 1)
            throw UsageError("GridSpec: require x_max > x_min, nx >= 2, T > 0, nt >= 1");
    }
    double dx() const { return (x_max - x_min) / (nx - 1); }
    double dt() const { return T / nt; }
};

/// Sampled (x, t) grid of u and u_x, stored time-major: index (j, i) is
/// time level j, space node i.
class SpaceTimeField {
public:
    SpaceTimeField() = default;
    SpaceTimeField(std::vector<double> xs, std::vector<double> ts);

    int nx() const { return static_cast<int>(xs_.size()); }
    int nt() const { return static_cast<int>(ts_.size()); }
    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ts() const { return ts_; }

    double& u(int j, int i) { return u_[idx(j, i)]; }
    double u(int j, int i) const { return u_[idx(j, i)]; }
    double& ux(int j, int i) { return ux_[idx(j, i)]; }
    double ux(int j, int i) const { return ux_[idx(j, i)]; }

    const std::vector<double>& u_data() const { return u_; }
    const std::vector<double>& ux_data() const { return ux_; }

    /// sup|u| + sup|ux| over the whole grid (the discrete window norm).
    double sup_norm() const;
    /// Same norm applied to the difference of two fields on matching grids.
    static double distance(const SpaceTimeField& lhs, const SpaceTimeField& rhs);

    /// Verify grids match; throws UsageError otherwise.
    void require_same_grid(const SpaceTimeField& other) const;

    /// Cubic-free bilinear interpolation inside the grid (test convenience).
    double interpolate_u(double x, double t) const;

    // Long-form CSV: header "x,t,u,ux", one row per node, 17 significant digits.
    void write_csv(std::ostream& os) const;
    static SpaceTimeField read_csv(std::istream& is);

    // JSON: grid metadata plus row-major value arrays.
    std::string to_json() const;
    static SpaceTimeField from_json(const std::string& text);

private:
    std::size_t idx(int j, int i) const { return static_cast<std::size_t>(j) * xs_.size() + i; }

    std::vector<double> xs_, ts_;
    std::vector<double> u_, ux_;
};

/// Build the field skeleton for a grid spec.
SpaceTimeField make_field(const GridSpec& grid);

} // namespace dws
