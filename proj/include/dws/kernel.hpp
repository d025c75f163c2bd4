#pragma once

#include <complex>
#include <vector>

#include "dws/params.hpp"
#include "dws/talbot.hpp"

namespace dws {

// ---------------------------------------------------------------------------
// Transform-domain formulas.  All square roots are principal-branch factors,
// so the expressions continue analytically off the negative real axis and can
// be evaluated on a Talbot contour as well as in the convergence half-plane.
// ---------------------------------------------------------------------------

/// G-hat(r, s) = exp(-r sqrt(s(s+a)/(s+b))) / (2 sqrt(eps) sqrt((s+a)(s+b))),
/// with r = |x|/sqrt(eps).  Throws DomainError left of Re(s) = max(-a,-b).
std::complex<double> g_hat(double r, LaplacePoint s, const ModelParams& p);

/// K-hat = G-hat / sqrt(s).
std::complex<double> k_hat(double r, LaplacePoint s, const ModelParams& p);

namespace transform {
// Unguarded building blocks in the physical x variable, usable on Talbot
// contours.  d is the nonnegative spatial offset |x|.
std::complex<double> decay_rate(std::complex<double> s, const ModelParams& p); // sqrt(s(s+a)/(eps s + c^2))
std::complex<double> khat_x(double d, std::complex<double> s, const ModelParams& p);
std::complex<double> ghat_r(double r, std::complex<double> s, const ModelParams& p);
// Smooth part of (dt + a - eps dxx) K:  c^2 (s+a) / (eps s + c^2) * K-hat.
std::complex<double> star_multiplier(std::complex<double> s, const ModelParams& p);
} // namespace transform

// ---------------------------------------------------------------------------
// Time-domain formulas.
// ---------------------------------------------------------------------------

/// G(r, t) by the explicit Bessel-integral representation, computed after the
/// substitution v = r^2/(4 q^2) which removes the v^{-3/2} e^{-r^2/4v}
/// endpoint singularity:
///   G = (1/sqrt(pi eps)) Int_{q0}^{inf} exp(-(q - mu)^2 - a (t - v)) i0e(z) dq,
/// mu = sqrt((b-a)(t-v)), z = 2 q mu, q0 = r / (2 sqrt(t)).
double g_time(double r, double t, const ModelParams& p, const QuadratureSpec& quad);

/// K(r, t) by the Abel convolution K = Int_0^t G(r, tau) dtau / sqrt(pi(t-tau)),
/// with the endpoint singularity absorbed by tau = t - w^2.
double k_time_td(double r, double t, const ModelParams& p, const QuadratureSpec& quad);

/// dG/dr by differentiating the Bessel integral (I0' = I1).
double g_time_dr(double r, double t, const ModelParams& p, const QuadratureSpec& quad);

// ---------------------------------------------------------------------------
// Dual-path evaluator.
// ---------------------------------------------------------------------------

enum class KernelPath { time_domain, talbot, cross_checked };

struct KernelValues {
    double k;     ///< K(x, t)
    double dk_dx; ///< dK/dx
    double dk_dt; ///< dK/dt
    double dk_dxx;///< d2K/dx2 (classical part, x != 0)
};

/// Configured evaluator of the fundamental solution K and its derivatives.
/// In cross_checked mode the time-domain and Talbot paths must agree within
/// 100 * quad.rel_tol relative wherever both are defined.
class KernelEvaluator {
public:
    explicit KernelEvaluator(ModelParams params,
                             QuadratureSpec quad = {},
                             double r_switch = 1e-3,
                             KernelPath path = KernelPath::talbot);

    const ModelParams& params() const { return params_; }
    const QuadratureSpec& quad() const { return quad_; }
    double r_switch() const { return r_switch_; }
    KernelPath path() const { return path_; }

    /// K(x, t); even in x by construction (routes through |x|).
    double k(double x, double t) const;
    /// dK/dx; odd in x.  The time-domain path needs |x|/sqrt(eps) >= r_switch.
    double dk_dx(double x, double t) const;
    /// dK/dt via Talbot of s*K-hat (K(.,0+) = 0).
    double dk_dt(double x, double t) const;
    /// d2K/dx2 via Talbot of decay_rate^2 * K-hat (classical part).
    double dk_dxx(double x, double t) const;
    KernelValues derivatives(double x, double t) const;

    /// W(x, t) = (dt + a - eps dxx) K, smooth part (the e^{-bt} delta term of
    /// the star potential is carried separately by the caller).
    double w_star(double x, double t) const;
    double w_star_dx(double x, double t) const;

    /// J(x, t) = Int_0^t K(x, sigma) d sigma, via Talbot of K-hat / s.
    double k_time_integral(double x, double t) const;
    double dk_dx_time_integral(double x, double t) const;

private:
    double k_talbot(double d, double t) const;
    double dk_dx_td(double x, double t) const;

    ModelParams params_;
    QuadratureSpec quad_;
    double r_switch_;
    KernelPath path_;
};

// ---------------------------------------------------------------------------
// Identity verifiers.
// ---------------------------------------------------------------------------

struct MassCheck {
    double numeric; ///< truncated-domain quadrature of Int K dx
    double exact;   ///< (1 - e^{-at}) / a
    double residual() const { return numeric - exact; }
};

/// Mass law Int_R K(|x|, t) dx = (1 - e^{-at})/a.
MassCheck verify_mass(double t, const KernelEvaluator& ke);

struct MomentCheck {
    double res_damped;  ///< Int (dt + a) K dx - 1
    double res_rate_b;  ///< Int (dt + b) K dx - (e^{-at} + b(1-e^{-at})/a)
    double res_operator;///< Int (dt + a - eps dxx) K dx - (1 - e^{-bt})
};

MomentCheck verify_moment_identities(double t, const KernelEvaluator& ke);

/// Worst relative error of the numerically computed Laplace integral of
/// g_time against the closed-form G-hat over the given samples.
double verify_laplace(double r, const std::vector<LaplacePoint>& samples,
                      const KernelEvaluator& ke);

struct FluxCheck {
    double numeric; ///< dK/dx at x = 1e-3 sqrt(eps)
    double exact;   ///< -e^{-bt} / (2 eps)
    double rel_error() const;
};

/// Small-offset limit of the kernel flux at the origin.
FluxCheck verify_flux_limit(double t, const KernelEvaluator& ke);

/// Half-width beyond which the kernel mass at time t is negligible:
/// covers the hyperbolic cone plus diffusive spreading.
double kernel_support_halfwidth(double t, const ModelParams& p);

} // namespace dws
