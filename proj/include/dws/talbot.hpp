#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace dws {

/// Fixed-Talbot contour for numerical Laplace inversion at one time t > 0.
///
/// With N nodes, r = 2N/(5t), theta_k = k*pi/N:
///   s_0 = r,  s_k = r*theta_k*(cot(theta_k) + i)
/// and f(t) = Re( sum_k weight_k * F(s_k) ), where the weights absorb
/// e^{t s_k} and the contour Jacobian.  Precomputing nodes and weights lets
/// a whole kernel slice reuse one contour.
class TalbotContour {
public:
    explicit TalbotContour(double t, int n = 32);

    double t() const { return t_; }
    int size() const { return static_cast<int>(nodes_.size()); }
    const std::vector<std::complex<double>>& nodes() const { return nodes_; }
    const std::vector<std::complex<double>>& weights() const { return weights_; }

    /// Invert a transform given as a callable on the contour nodes.
    double invert(const std::function<std::complex<double>(std::complex<double>)>& transform) const;

    /// Invert from precomputed transform values at the contour nodes.
    double combine(const std::vector<std::complex<double>>& values) const;

private:
    double t_;
    std::vector<std::complex<double>> nodes_;
    std::vector<std::complex<double>> weights_;
};

/// One-shot inversion helper.
double talbot_invert(const std::function<std::complex<double>(std::complex<double>)>& transform,
                     double t, int n = 32);

} // namespace dws
