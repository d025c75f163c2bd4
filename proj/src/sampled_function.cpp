#include "dws/sampled_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dws {

SampledFunction::SampledFunction() = default;

SampledFunction SampledFunction::zero() { return {}; }

SampledFunction SampledFunction::constant(double kappa) {
    SampledFunction f;
    f.preset_ = Preset::constant;
    f.p0_ = kappa;
    f.bound_ = std::fabs(kappa);
    std::ostringstream os;
    os << "constant(" << kappa << ")";
    f.label_ = os.str();
    return f;
}

SampledFunction SampledFunction::gaussian(double mu, double sigma) {
    if (!(sigma > 0.0)) throw UsageError("gaussian: sigma must be positive");
    SampledFunction f;
    f.preset_ = Preset::gaussian;
    f.p0_ = mu;
    f.p1_ = sigma;
    f.bound_ = 1.0;
    std::ostringstream os;
    os << "gaussian(" << mu << "," << sigma << ")";
    f.label_ = os.str();
    return f;
}

SampledFunction SampledFunction::sine(double k) {
    SampledFunction f;
    f.preset_ = Preset::sine;
    f.p0_ = k;
    f.bound_ = 1.0;
    std::ostringstream os;
    os << "sine(" << k << ")";
    f.label_ = os.str();
    return f;
}

SampledFunction SampledFunction::tanh_front(double k) {
    SampledFunction f;
    f.preset_ = Preset::tanh_front;
    f.p0_ = k;
    f.bound_ = 1.0;
    std::ostringstream os;
    os << "tanh(" << k << ")";
    f.label_ = os.str();
    return f;
}

SampledFunction SampledFunction::from_expression(const Expression& expr,
                                                 double x_min, double x_max, int n) {
    if (!(x_max > x_min) || n < 4)
        throw UsageError("from_expression: need x_max > x_min and n >= 4");
    SampledFunction f;
    f.kind_ = Kind::expression;
    f.x0_ = x_min;
    f.dx_ = (x_max - x_min) / (n - 1);
    f.vals_.resize(n);
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = expr.eval(x_min + i * f.dx_, 0.0);
        if (!std::isfinite(v))
            throw EvaluationError("initial-data expression is not finite on the grid");
        f.vals_[i] = v;
        m = std::max(m, std::fabs(v));
    }
    f.bound_ = m;
    f.label_ = "expr:" + expr.source();
    f.build_spline();
    return f;
}

SampledFunction SampledFunction::tabulated(double x0, double dx, std::vector<double> values) {
    if (values.size() < 4 || !(dx > 0.0))
        throw UsageError("tabulated: need dx > 0 and at least 4 samples");
    SampledFunction f;
    f.kind_ = Kind::tabulated;
    f.x0_ = x0;
    f.dx_ = dx;
    f.vals_ = std::move(values);
    double m = 0.0;
    for (double v : f.vals_) {
        if (!std::isfinite(v)) throw UsageError("tabulated: samples must be finite");
        m = std::max(m, std::fabs(v));
    }
    f.bound_ = m;
    f.label_ = "tabulated";
    f.build_spline();
    return f;
}

// Natural cubic spline second derivatives via the standard tridiagonal solve.
void SampledFunction::build_spline() {
    const int n = static_cast<int>(vals_.size());
    m_.assign(n, 0.0);
    std::vector<double> c(n, 0.0), rhs(n, 0.0);
    for (int i = 1; i < n - 1; ++i)
        rhs[i] = 6.0 * (vals_[i - 1] - 2.0 * vals_[i] + vals_[i + 1]) / (dx_ * dx_);
    // Thomas algorithm on the (1, 4, 1)/... system scaled by dx.
    std::vector<double> cp(n, 0.0), dp(n, 0.0);
    for (int i = 1; i < n - 1; ++i) {
        const double denom = 4.0 - (i > 1 ? cp[i - 1] : 0.0);
        cp[i] = 1.0 / denom;
        dp[i] = (rhs[i] - (i > 1 ? dp[i - 1] : 0.0)) / denom;
    }
    for (int i = n - 2; i >= 1; --i)
        m_[i] = dp[i] - cp[i] * m_[i + 1];
}

double SampledFunction::operator()(double x) const {
    if (kind_ == Kind::preset) {
        switch (preset_) {
        case Preset::zero: return 0.0;
        case Preset::constant: return p0_;
        case Preset::gaussian: {
            const double z = (x - p0_) / p1_;
            return std::exp(-0.5 * z * z);
        }
        case Preset::sine: return std::sin(p0_ * x);
        case Preset::tanh_front: return std::tanh(p0_ * x);
        }
    }
    const int n = static_cast<int>(vals_.size());
    double s = (x - x0_) / dx_;
    if (s <= 0.0) return vals_.front();
    if (s >= n - 1) return vals_.back();
    const int i = static_cast<int>(s);
    const double u = s - i;
    const double h2 = dx_ * dx_;
    return vals_[i] * (1.0 - u) + vals_[i + 1] * u +
           h2 / 6.0 * ((1.0 - u) * ((1.0 - u) * (1.0 - u) - 1.0) * m_[i] +
                       u * (u * u - 1.0) * m_[i + 1]);
}

double SampledFunction::deriv(double x) const {
    if (kind_ == Kind::preset) {
        switch (preset_) {
        case Preset::zero: return 0.0;
        case Preset::constant: return 0.0;
        case Preset::gaussian: {
            const double z = (x - p0_) / p1_;
            return -z / p1_ * std::exp(-0.5 * z * z);
        }
        case Preset::sine: return p0_ * std::cos(p0_ * x);
        case Preset::tanh_front: {
            const double th = std::tanh(p0_ * x);
            return p0_ * (1.0 - th * th);
        }
        }
    }
    const int n = static_cast<int>(vals_.size());
    double s = (x - x0_) / dx_;
    if (s <= 0.0 || s >= n - 1) return 0.0; // constant extrapolation
    const int i = static_cast<int>(s);
    const double u = s - i;
    return (vals_[i + 1] - vals_[i]) / dx_ +
           dx_ / 6.0 * ((3.0 * u * u - 1.0) * m_[i + 1] - (3.0 * (1.0 - u) * (1.0 - u) - 1.0) * m_[i]);
}

} // namespace dws
