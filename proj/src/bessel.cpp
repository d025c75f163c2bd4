#include "dws/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace dws {

namespace {

// Largest argument for which e^z stays representable.
constexpr double kOverflowArg = 709.0;

// Power series sum_{k>=0} (z^2/4)^k / (k!)^2, summed to machine convergence.
double i0_series(double z) {
    const double q = 0.25 * z * z;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

// sum_{k>=0} (z/2)^{2k+1} / (k! (k+1)!)
double i1_series(double z) {
    const double q = 0.25 * z * z;
    double term = 0.5 * z, sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * (k + 1));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

// Asymptotic series for e^{-z} I_nu(z), nu = 0 or 1, valid for large z:
//   (2 pi z)^{-1/2} sum_k (-1)^k a_k(nu) / z^k,  a_k = prod ((4nu^2-(2j-1)^2)/(8j)).
double ive_asymptotic(int nu, double z) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 30; ++k) {
        const double num = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        term *= -num / (8.0 * k * z);
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return sum / std::sqrt(2.0 * M_PI * z);
}

constexpr double kSeriesCut = 18.0;

} // namespace

double bessel_i0e(double z) {
    if (z < 0.0) throw std::domain_error("bessel_i0e: z must be nonnegative");
    if (z < kSeriesCut) return i0_series(z) * std::exp(-z);
    return ive_asymptotic(0, z);
}

double bessel_i1e(double z) {
    if (z < 0.0) throw std::domain_error("bessel_i1e: z must be nonnegative");
    if (z < kSeriesCut) return i1_series(z) * std::exp(-z);
    return ive_asymptotic(1, z);
}

double bessel_i0(double z) {
    if (z < 0.0) throw std::domain_error("bessel_i0: z must be nonnegative");
    if (!std::isfinite(z)) throw std::domain_error("bessel_i0: z must be finite");
    if (z > kOverflowArg) throw std::range_error("bessel_i0: overflow for z > 709");
    if (z < kSeriesCut) return i0_series(z);
    return ive_asymptotic(0, z) * std::exp(z);
}

double bessel_i1(double z) {
    if (z < 0.0) throw std::domain_error("bessel_i1: z must be nonnegative");
    if (!std::isfinite(z)) throw std::domain_error("bessel_i1: z must be finite");
    if (z > kOverflowArg) throw std::range_error("bessel_i1: overflow for z > 709");
    if (z < kSeriesCut) return i1_series(z);
    return ive_asymptotic(1, z) * std::exp(z);
}

} // namespace dws
