#pragma once

#include <functional>
#include <vector>

#include "dws/field.hpp"
#include "dws/kernel.hpp"
#include "dws/sampled_function.hpp"

namespace dws {

/// Knobs for potential evaluation: quadrature tolerances for the point API,
/// truncation half-width (0 = auto-certified from the kernel tail), and the
/// internal refinement of the grid engine relative to the output grid.
struct PotentialConfig {
    QuadratureSpec quad{};
    double x_cut = 0.0;
    int refine_x = 2;
    int refine_t = 2;

    void validate() const {
        quad.validate();
        if (x_cut < 0.0 || refine_x < 1 || refine_t < 1)
            throw UsageError("PotentialConfig: x_cut >= 0 and refine factors >= 1 required");
    }
};

using SourceFn = std::function<double(double, double)>;

// ---------------------------------------------------------------------------
// Point evaluation (adaptive quadrature against the dual-path kernel).
// ---------------------------------------------------------------------------

/// u_g(x,t) = Int g(xi) K(x - xi, t) d xi over the certified window.
double surface_potential(const SampledFunction& g, double x, double t,
                         const ModelParams& p, const PotentialConfig& cfg = {});

/// dt u_g; tends to g(x) as t -> 0+.
double surface_potential_dt(const SampledFunction& g, double x, double t,
                            const ModelParams& p, const PotentialConfig& cfg = {});

/// u*_g = (dt + a - eps dxx) u_g = e^{-bt} g(x) + Int g(xi) W(x - xi, t) d xi;
/// tends to g(x) as t -> 0+.
double surface_potential_star(const SampledFunction& g, double x, double t,
                              const ModelParams& p, const PotentialConfig& cfg = {});

/// dt u*_g; tends to 0 as t -> 0+.
double surface_potential_star_dt(const SampledFunction& g, double x, double t,
                                 const ModelParams& p, const PotentialConfig& cfg = {});

/// u_f(x,t) = Int_0^t d tau Int f(xi,tau) K(x - xi, t - tau) d xi, with the
/// weakly singular time endpoint absorbed by tau = t - w^2.  Asserts the
/// a-priori bound |u_f| <= t sup|f| / a against the sampled sup of f.
double volume_potential(const SourceFn& f, double x, double t,
                        const ModelParams& p, const PotentialConfig& cfg = {});

// ---------------------------------------------------------------------------
// Grid engine: shared discretization for the linear explicit solution and the
// fixed-point iteration (so the two agree to roundoff on linear problems).
// ---------------------------------------------------------------------------

/// Precomputes kernel slices K, dK/dx, W, dW/dx on an extended uniform grid
/// (one Talbot contour per time level, offset recurrence along x) and exposes
/// discrete convolution building blocks:
///   - data_terms: u*_{f0} + u_{f1} with both channels,
///   - add_volume: the tau-trapezoid volume potential with a product-rule
///     endpoint (first kernel moments J0) absorbing the weak singularity,
///   - restrict_to_output: internal grid -> requested output grid.
/// Internal time levels are k, 2k, ..., Mk with k = grid.dt()/refine_t; the
/// source matrix carries one extra leading row for tau = 0.
class ConvolutionEngine {
public:
    ConvolutionEngine(const GridSpec& grid, const ModelParams& params,
                      PotentialConfig cfg = {});

    const GridSpec& grid() const { return grid_; }
    const ModelParams& params() const { return params_; }
    const PotentialConfig& config() const { return cfg_; }

    double x_cut() const { return x_cut_; }
    int nx() const { return N_; }          ///< internal spatial nodes
    int levels() const { return M_; }      ///< internal time levels (t = k..Mk)
    double dx() const { return h_; }
    double dt() const { return k_; }
    double x(int i) const { return xs_[i]; }
    const std::vector<double>& xs() const { return xs_; }

    /// Physical time level of output row j (output times are (j+1) grid.dt()).
    int level_of_output_row(int j) const { return (j + 1) * cfg_.refine_t; }
    /// Internal column of output node i.
    int col_of_output_node(int i) const { return pad_ + i * cfg_.refine_x; }

    /// Zero-filled field on the internal grid (rows = levels 1..M).
    SpaceTimeField make_internal_field() const;

    /// u*_{f0} + u_{f1} on the internal grid, u and ux channels.
    SpaceTimeField data_terms(const SampledFunction& f0, const SampledFunction& f1) const;

    /// Sample f(x, t) into an (M+1) x nx matrix; row q holds t = q k.
    std::vector<double> sample_source(const SourceFn& f) const;

    /// Accumulate sign * volume potential of `src` restricted to source levels
    /// q in [q_lo, q_hi] into internal rows with physical level p in
    /// [p_lo, p_hi].  Splitting [q_lo, q_hi] at any point and calling twice
    /// reproduces the unsplit sum exactly (windowed continuation relies on it).
    void add_volume(const std::vector<double>& src, int q_lo, int q_hi,
                    int p_lo, int p_hi, double sign, SpaceTimeField& out) const;

    SpaceTimeField restrict_to_output(const SpaceTimeField& internal) const;

private:
    void build_tables();
    // Trapezoid convolution acc[i] += scale * h * sum_l src[i -+ l] * tab[l]
    // plus the Euler-Maclaurin correction for the kernel kink at the origin:
    // d0 is the one-sided x-derivative (even tables) resp. one-sided value
    // (odd tables) of the kernel channel at 0+, known in closed form from the
    // flux limit.  Lifts the kink error from O(h^2) to O(h^4).
    void convolve_even(const double* src, const std::vector<double>& tab,
                       double d0, double scale, double* acc_row, int stride) const;
    void convolve_odd(const double* src, const std::vector<double>& tab,
                      double d0, double scale, double* acc_row, int stride) const;

    GridSpec grid_;
    ModelParams params_;
    PotentialConfig cfg_;
    double h_, k_, x_cut_;
    int pad_, N_, M_;
    std::vector<double> xs_;
    // per time level d = 1..M (index d-1): samples at offsets 0, h, 2h, ...
    std::vector<std::vector<double>> k_tab_, kx_tab_, w_tab_, wx_tab_;
    // endpoint moments Int_0^k K(d h, sigma) d sigma and the dx counterpart
    std::vector<double> j0_, jx0_;
    // closed-form kink coefficients at 0+ per level: dK/dx and dW/dx
    std::vector<double> kx0_, wx0_;
    double jx00_ = 0.0;
};

/// Explicit solution of the linear problem L u = f, u(x,0) = f0, u_t(x,0) = f1:
/// u = -u_f + u_{f1} + (dt + a - eps dxx) u_{f0}, sampled on the output grid
/// with the ux channel from the dx-kernel convolutions.
SpaceTimeField linear_solve(const SourceFn& f, const SampledFunction& f0,
                            const SampledFunction& f1, const GridSpec& grid,
                            const ModelParams& params, const PotentialConfig& cfg = {});

} // namespace dws
