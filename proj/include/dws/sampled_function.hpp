#pragma once

#include <string>
#include <vector>

#include "dws/errors.hpp"
#include "dws/expression.hpp"

namespace dws {

/// Bounded initial-data / source-profile function of x.
///
/// Presets are evaluated in closed form (with exact derivatives); expression
/// and tabulated data are sampled once onto a uniform grid and interpolated
/// with a natural cubic spline, constant beyond the sampling window.
class SampledFunction {
public:
    enum class Kind { preset, expression, tabulated };

    SampledFunction(); ///< the zero function

    static SampledFunction zero();
    static SampledFunction constant(double kappa);
    static SampledFunction gaussian(double mu, double sigma);
    static SampledFunction sine(double k);
    static SampledFunction tanh_front(double k = 1.0);

    static SampledFunction from_expression(const Expression& expr,
                                           double x_min, double x_max, int n = 2001);
    static SampledFunction tabulated(double x0, double dx, std::vector<double> values);

    double operator()(double x) const;
    double deriv(double x) const;

    Kind kind() const { return kind_; }
    /// Declared sup bound M over the truncated domain.
    double bound() const { return bound_; }
    /// Describes the function for config round-trips ("gaussian(0,1)", ...).
    const std::string& label() const { return label_; }

private:
    enum class Preset { zero, constant, gaussian, sine, tanh_front };

    void build_spline();

    Kind kind_ = Kind::preset;
    Preset preset_ = Preset::zero;
    double p0_ = 0.0, p1_ = 1.0; // preset parameters
    double bound_ = 0.0;
    std::string label_ = "zero";

    // spline data (expression / tabulated)
    double x0_ = 0.0, dx_ = 1.0;
    std::vector<double> vals_;
    std::vector<double> m_; // second derivatives at the knots
};

} // namespace dws
