#pragma once

namespace dws {

/// Modified Bessel function of the first kind, order 0.
/// Throws std::range_error if the result would overflow.
double bessel_i0(double z);

/// Modified Bessel function of the first kind, order 1 (I0' = I1).
double bessel_i1(double z);

/// Exponentially scaled variants e^{-z} I0(z), e^{-z} I1(z) for z >= 0.
/// These never overflow and are what the kernel integrands actually use.
double bessel_i0e(double z);
double bessel_i1e(double z);

} // namespace dws
