#include "dws/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "dws/quadrature.hpp"
#include "dws/talbot.hpp"

namespace dws {

namespace {

using cplx = std::complex<double>;

/// Convolution of g against one kernel channel, split at the xi = x kink.
template <typename Kernel>
double convolve_point(const SampledFunction& g, double x, double t,
                      const ModelParams& p, const PotentialConfig& cfg,
                      Kernel&& kern) {
    const double r = std::max(kernel_support_halfwidth(t, p), cfg.x_cut);
    auto f = [&](double xi) { return g(xi) * kern(x - xi, t); };
    return integrate(f, x - r, x, cfg.quad) + integrate(f, x, x + r, cfg.quad);
}

} // namespace

double surface_potential(const SampledFunction& g, double x, double t,
                         const ModelParams& p, const PotentialConfig& cfg) {
    cfg.validate();
    if (!(t > 0.0)) throw DomainError("surface_potential: t > 0 required");
    KernelEvaluator ke(p, cfg.quad);
    return convolve_point(g, x, t, p, cfg,
                          [&](double d, double tt) { return ke.k(d, tt); });
}

double surface_potential_dt(const SampledFunction& g, double x, double t,
                            const ModelParams& p, const PotentialConfig& cfg) {
    cfg.validate();
    if (!(t > 0.0)) throw DomainError("surface_potential_dt: t > 0 required");
    KernelEvaluator ke(p, cfg.quad);
    return convolve_point(g, x, t, p, cfg,
                          [&](double d, double tt) { return ke.dk_dt(d, tt); });
}

double surface_potential_star(const SampledFunction& g, double x, double t,
                              const ModelParams& p, const PotentialConfig& cfg) {
    cfg.validate();
    if (!(t > 0.0)) throw DomainError("surface_potential_star: t > 0 required");
    KernelEvaluator ke(p, cfg.quad);
    const double conv = convolve_point(g, x, t, p, cfg,
                                       [&](double d, double tt) { return ke.w_star(d, tt); });
    return std::exp(-p.b * t) * g(x) + conv;
}

double surface_potential_star_dt(const SampledFunction& g, double x, double t,
                                 const ModelParams& p, const PotentialConfig& cfg) {
    cfg.validate();
    if (!(t > 0.0)) throw DomainError("surface_potential_star_dt: t > 0 required");
    // s * W-hat on a short-time Talbot contour carries ~1e-11 relative jitter;
    // don't ask the quadrature for more than the kernel values can deliver.
    PotentialConfig local = cfg;
    local.quad.rel_tol = std::max(local.quad.rel_tol, 1e-8);
    local.quad.abs_tol = std::max(local.quad.abs_tol, 1e-12);
    // dt of the smooth part transforms to s * W-hat (W(., 0+) = 0).
    auto w_dt = [&](double d, double tt) {
        const double ad = std::fabs(d);
        return talbot_invert(
            [&](cplx s) {
                return s * transform::star_multiplier(s, p) * transform::khat_x(ad, s, p);
            },
            tt);
    };
    const double conv = convolve_point(g, x, t, p, local, w_dt);
    return -p.b * std::exp(-p.b * t) * g(x) + conv;
}

double volume_potential(const SourceFn& f, double x, double t,
                        const ModelParams& p, const PotentialConfig& cfg) {
    cfg.validate();
    if (!(t > 0.0)) throw DomainError("volume_potential: t > 0 required");
    KernelEvaluator ke(p, cfg.quad);
    double sup_f = 0.0;
    // Inner spatial convolution at elapsed time delta = t - tau.
    auto slice = [&](double tau, double delta) {
        const double r = std::max(kernel_support_halfwidth(delta, p), cfg.x_cut);
        auto integrand = [&](double xi) {
            const double fv = f(xi, tau);
            sup_f = std::max(sup_f, std::fabs(fv));
            return fv * ke.k(x - xi, delta);
        };
        return integrate(integrand, x - r, x, cfg.quad) +
               integrate(integrand, x, x + r, cfg.quad);
    };
    // tau = t - w^2 removes the Abel-type endpoint.
    QuadratureSpec outer = cfg.quad;
    outer.rel_tol = std::max(outer.rel_tol, 1e-9);
    const double u = integrate(
        [&](double w) { return 2.0 * w * slice(t - w * w, w * w); },
        0.0, std::sqrt(t), outer);
    const double bound = t * sup_f / p.a;
    if (std::fabs(u) > bound * (1.0 + 1e-6) + 1e-12)
        throw ConsistencyError("volume_potential: a-priori bound t sup|f|/a violated");
    return u;
}

// ---------------------------------------------------------------------------
// Grid engine.
// ---------------------------------------------------------------------------

ConvolutionEngine::ConvolutionEngine(const GridSpec& grid, const ModelParams& params,
                                     PotentialConfig cfg)
    : grid_(grid), params_(params), cfg_(cfg) {
    grid_.validate();
    cfg_.validate();
    h_ = grid_.dx() / cfg_.refine_x;
    k_ = grid_.dt() / cfg_.refine_t;
    M_ = grid_.nt * cfg_.refine_t;
    const double auto_pad =
        params_.c * grid_.T + 10.0 * std::sqrt(params_.epsilon * grid_.T);
    const double amp = std::max(std::fabs(grid_.x_min), std::fabs(grid_.x_max));
    const double pad = std::max(auto_pad, cfg_.x_cut - amp);
    pad_ = static_cast<int>(std::ceil(pad / h_));
    N_ = 2 * pad_ + (grid_.nx - 1) * cfg_.refine_x + 1;
    x_cut_ = amp + pad_ * h_;
    xs_.resize(N_);
    for (int i = 0; i < N_; ++i) xs_[i] = grid_.x_min - pad_ * h_ + i * h_;
    build_tables();
}

void ConvolutionEngine::build_tables() {
    k_tab_.resize(M_);
    kx_tab_.resize(M_);
    w_tab_.resize(M_);
    wx_tab_.resize(M_);
    kx0_.resize(M_);
    wx0_.resize(M_);
    // One-sided x-derivatives at the origin, from the flux limit
    // dK/dx(0+, t) = -e^{-bt}/(2 eps) and its star-multiplier analogue
    // dW/dx(0+, t) = -(b/(2 eps)) e^{-bt} (1 + (a - b) t).
    for (int d = 1; d <= M_; ++d) {
        const double delta = d * k_;
        const double ebt = std::exp(-params_.b * delta);
        kx0_[d - 1] = -ebt / (2.0 * params_.epsilon);
        wx0_[d - 1] = -(params_.b / (2.0 * params_.epsilon)) * ebt *
                      (1.0 + (params_.a - params_.b) * delta);
    }
    jx00_ = -(1.0 - std::exp(-params_.b * k_)) / (2.0 * params_.epsilon * params_.b);
    for (int d = 1; d <= M_; ++d) {
        const double delta = d * k_;
        int S = static_cast<int>(std::ceil(kernel_support_halfwidth(delta, params_) / h_));
        S = std::min(S, N_ - 1);
        auto& kt = k_tab_[d - 1];
        auto& kx = kx_tab_[d - 1];
        auto& wt = w_tab_[d - 1];
        auto& wx = wx_tab_[d - 1];
        kt.assign(S + 1, 0.0);
        kx.assign(S + 1, 0.0);
        wt.assign(S + 1, 0.0);
        wx.assign(S + 1, 0.0);
        const bool endpoint = (d == 1);
        if (endpoint) {
            j0_.assign(S + 1, 0.0);
            jx0_.assign(S + 1, 0.0);
        }
        const TalbotContour tc(delta);
        for (int m = 0; m < tc.size(); ++m) {
            const cplx s = tc.nodes()[m];
            const cplx w = tc.weights()[m];
            const cplx khat0 = transform::khat_x(0.0, s, params_);
            const cplx phi = transform::decay_rate(s, params_);
            const cplx star = transform::star_multiplier(s, params_);
            const cplx step = std::exp(-h_ * phi);
            cplx e = 1.0;
            for (int l = 0; l <= S; ++l) {
                const cplx khat = khat0 * e;
                kt[l] += (w * khat).real();
                kx[l] += (w * (-phi * khat)).real();
                wt[l] += (w * (star * khat)).real();
                wx[l] += (w * (-star * phi * khat)).real();
                if (endpoint) {
                    j0_[l] += (w * (khat / s)).real();
                    jx0_[l] += (w * (-phi * khat / s)).real();
                }
                e *= step;
            }
        }
        // Odd channels take their principal value at the origin.
        kx[0] = 0.0;
        wx[0] = 0.0;
        if (endpoint) jx0_[0] = 0.0;
    }
}

SpaceTimeField ConvolutionEngine::make_internal_field() const {
    std::vector<double> ts(M_);
    for (int j = 0; j < M_; ++j) ts[j] = (j + 1) * k_;
    return SpaceTimeField(xs_, std::move(ts));
}

void ConvolutionEngine::convolve_even(const double* src, const std::vector<double>& tab,
                                      double d0, double scale, double* acc, int stride) const {
    const int S = static_cast<int>(tab.size()) - 1;
    const double kink = h_ * h_ / 6.0 * d0;
    for (int i = 0; i < N_; ++i) {
        double sum = src[i] * tab[0];
        for (int l = 1; l <= S; ++l) {
            const int lo = std::max(i - l, 0);
            const int hi = std::min(i + l, N_ - 1);
            sum += (src[lo] + src[hi]) * tab[l];
        }
        acc[static_cast<std::size_t>(i) * stride] += scale * (h_ * sum + kink * src[i]);
    }
}

void ConvolutionEngine::convolve_odd(const double* src, const std::vector<double>& tab,
                                     double d0, double scale, double* acc, int stride) const {
    const int S = static_cast<int>(tab.size()) - 1;
    // kink term: -h^2/6 * T(0+) * g'(x), with g' by central difference
    const double kink = -h_ / 12.0 * d0;
    for (int i = 0; i < N_; ++i) {
        double sum = 0.0;
        for (int l = 1; l <= S; ++l) {
            const int lo = std::max(i - l, 0);
            const int hi = std::min(i + l, N_ - 1);
            sum += (src[lo] - src[hi]) * tab[l];
        }
        const double gp = src[std::min(i + 1, N_ - 1)] - src[std::max(i - 1, 0)];
        acc[static_cast<std::size_t>(i) * stride] += scale * (h_ * sum + kink * gp);
    }
}

SpaceTimeField ConvolutionEngine::data_terms(const SampledFunction& f0,
                                             const SampledFunction& f1) const {
    std::vector<double> g0(N_), g0p(N_), g1(N_), g1p(N_);
    for (int i = 0; i < N_; ++i) {
        g0[i] = f0(xs_[i]);
        g0p[i] = f0.deriv(xs_[i]);
        g1[i] = f1(xs_[i]);
        g1p[i] = f1.deriv(xs_[i]);
    }
    SpaceTimeField out = make_internal_field();
    std::vector<double> urow(N_), uxrow(N_);
    for (int p = 1; p <= M_; ++p) {
        std::fill(urow.begin(), urow.end(), 0.0);
        std::fill(uxrow.begin(), uxrow.end(), 0.0);
        const double ebt = std::exp(-params_.b * p * k_);
        convolve_even(g0.data(), w_tab_[p - 1], wx0_[p - 1], 1.0, urow.data(), 1);
        convolve_even(g1.data(), k_tab_[p - 1], kx0_[p - 1], 1.0, urow.data(), 1);
        convolve_odd(g0.data(), wx_tab_[p - 1], wx0_[p - 1], 1.0, uxrow.data(), 1);
        convolve_odd(g1.data(), kx_tab_[p - 1], kx0_[p - 1], 1.0, uxrow.data(), 1);
        for (int i = 0; i < N_; ++i) {
            out.u(p - 1, i) = ebt * g0[i] + urow[i];
            out.ux(p - 1, i) = ebt * g0p[i] + uxrow[i];
        }
    }
    return out;
}

std::vector<double> ConvolutionEngine::sample_source(const SourceFn& f) const {
    std::vector<double> src(static_cast<std::size_t>(M_ + 1) * N_);
    for (int q = 0; q <= M_; ++q)
        for (int i = 0; i < N_; ++i)
            src[static_cast<std::size_t>(q) * N_ + i] = f(xs_[i], q * k_);
    return src;
}

void ConvolutionEngine::add_volume(const std::vector<double>& src, int q_lo, int q_hi,
                                   int p_lo, int p_hi, double sign,
                                   SpaceTimeField& out) const {
    if (src.size() != static_cast<std::size_t>(M_ + 1) * N_)
        throw UsageError("add_volume: source matrix must be (levels+1) x nx");
    p_lo = std::max(p_lo, 1);
    p_hi = std::min(p_hi, M_);
    q_lo = std::max(q_lo, 0);
    for (int p = p_lo; p <= p_hi; ++p) {
        double* urow = &out.u(p - 1, 0);
        double* uxrow = &out.ux(p - 1, 0);
        const int q_top = std::min(q_hi, p);
        for (int q = q_lo; q <= q_top; ++q) {
            const double* srow = &src[static_cast<std::size_t>(q) * N_];
            if (q == p) {
                // Product-rule endpoint: Int_{t-k}^{t} with the exact kernel
                // moment J0 and the source frozen at tau = t.
                convolve_even(srow, j0_, jx00_, sign, urow, 1);
                convolve_odd(srow, jx0_, jx00_, sign, uxrow, 1);
            } else if (p >= 2) {
                // Trapezoid over tau in [0, (p-1)k].
                const double wq = (q == 0 || q == p - 1) ? 0.5 : 1.0;
                convolve_even(srow, k_tab_[p - q - 1], kx0_[p - q - 1], sign * k_ * wq, urow, 1);
                convolve_odd(srow, kx_tab_[p - q - 1], kx0_[p - q - 1], sign * k_ * wq, uxrow, 1);
            }
        }
    }
}

SpaceTimeField ConvolutionEngine::restrict_to_output(const SpaceTimeField& internal) const {
    SpaceTimeField out = make_field(grid_);
    for (int j = 0; j < grid_.nt; ++j) {
        const int p = level_of_output_row(j);
        for (int i = 0; i < grid_.nx; ++i) {
            const int col = col_of_output_node(i);
            out.u(j, i) = internal.u(p - 1, col);
            out.ux(j, i) = internal.ux(p - 1, col);
        }
    }
    return out;
}

SpaceTimeField linear_solve(const SourceFn& f, const SampledFunction& f0,
                            const SampledFunction& f1, const GridSpec& grid,
                            const ModelParams& params, const PotentialConfig& cfg) {
    const ConvolutionEngine eng(grid, params, cfg);
    SpaceTimeField u = eng.data_terms(f0, f1);
    const std::vector<double> src = eng.sample_source(f);
    eng.add_volume(src, 0, eng.levels(), 1, eng.levels(), -1.0, u);
    return eng.restrict_to_output(u);
}

} // namespace dws
