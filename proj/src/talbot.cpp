#include "dws/talbot.hpp"

#include <cmath>
#include <stdexcept>

namespace dws {

TalbotContour::TalbotContour(double t, int n) : t_(t) {
    if (!(t > 0.0)) throw std::domain_error("TalbotContour: t must be positive");
    if (n < 4) throw std::domain_error("TalbotContour: need at least 4 nodes");
    const double r = 2.0 * n / (5.0 * t);
    nodes_.resize(n);
    weights_.resize(n);
    nodes_[0] = {r, 0.0};
    weights_[0] = {0.5 * std::exp(r * t) * r / n, 0.0};
    for (int k = 1; k < n; ++k) {
        const double th = k * M_PI / n;
        const double cot = std::cos(th) / std::sin(th);
        const std::complex<double> s(r * th * cot, r * th);
        const double sigma = th + (th * cot - 1.0) * cot;
        // weight = (r/N) * e^{t s} * (1 + i sigma); only the real part of
        // weight*F(s) contributes, handled in combine().
        weights_[k] = std::exp(s * t_) * std::complex<double>(1.0, sigma) * (r / n);
        nodes_[k] = s;
    }
}

double TalbotContour::combine(const std::vector<std::complex<double>>& values) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < nodes_.size(); ++k)
        acc += (weights_[k] * values[k]).real();
    return acc;
}

double TalbotContour::invert(
    const std::function<std::complex<double>(std::complex<double>)>& transform) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < nodes_.size(); ++k)
        acc += (weights_[k] * transform(nodes_[k])).real();
    return acc;
}

double talbot_invert(const std::function<std::complex<double>(std::complex<double>)>& transform,
                     double t, int n) {
    return TalbotContour(t, n).invert(transform);
}

} // namespace dws
