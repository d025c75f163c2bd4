#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dws/potentials.hpp"

namespace dws {

/// Right-hand side F(x, t, u, p) with its global Lipschitz constant in (u, p)
/// and a sup bound on the working set.
struct RhsSpec {
    std::function<double(double, double, double, double)> F;
    double beta_F = 0.0;
    double sup_bound = 0.0;
    bool depends_on_state = true;
    std::string label = "zero";

    static RhsSpec zero();
    static RhsSpec source(SourceFn f);             ///< F(x,t), state-independent
    static RhsSpec sine_gordon();                  ///< sin(u), beta_F = 1
    static RhsSpec cubic();                        ///< u^3/(1+u^2), beta_F = 1.125
    static RhsSpec from_expression(const Expression& e, double beta_F, double sup_bound);

    /// Randomized spot check of the declared Lipschitz constant and sup bound
    /// over the box |x| <= 5, t in [0, 5], |u|,|p| <= box; returns the largest
    /// ratio seen and throws ConsistencyError on violation.
    double probe_lipschitz(std::uint64_t seed, int n = 2000, double box = 3.0) const;
};

/// Initial-value problem on the output grid's space-time window.
struct Problem {
    ModelParams params;
    SampledFunction f0, f1;
    RhsSpec rhs;
    GridSpec grid;

    void validate() const;
};

struct SolverConfig {
    double theta = 0.5;  ///< window safety factor; Lipschitz target L = theta
    double tol = 1e-8;   ///< fixed-point tolerance in the window sup norm
    int max_iters = 50;
    PotentialConfig potentials{};

    void validate() const;
};

struct WindowReport {
    double t_begin = 0.0, t_end = 0.0;
    int iterations = 0;
    std::vector<double> diff_norms;      ///< ||v_{k+1} - v_k|| per iteration
    double contraction_ratio = 0.0;      ///< max consecutive-difference ratio
    double junction_gap = 0.0;           ///< fixed-point residual at the window end
};

struct SolveReport {
    double eta = 0.0;       ///< contraction window length
    double lipschitz = 0.0; ///< theoretical contraction factor (= theta)
    std::vector<WindowReport> windows;
    double wall_seconds = 0.0;

    std::string to_json() const;
};

/// Window length eta = theta / (beta_F (1/a + 1/sqrt(eps(b-a)))) making the
/// fixed-point map a contraction with factor theta; infinite (returned as
/// horizon) when beta_F = 0.  Requires a < b strictly when beta_F > 0.
double contraction_window(const ModelParams& p, double beta_F, double theta,
                          double horizon);

/// Fixed-point machinery on the shared convolution engine.  Windows are
/// aligned to internal time levels; the history integral over already-frozen
/// levels is computed once per window.
class PicardSolver {
public:
    explicit PicardSolver(Problem problem, SolverConfig config = {});

    const Problem& problem() const { return problem_; }
    const SolverConfig& config() const { return config_; }
    const ConvolutionEngine& engine() const { return eng_; }
    double eta() const { return eta_; }
    int window_levels() const { return win_levels_; }

    /// One application of the window map to v (an internal-grid field whose
    /// rows inside (w_lo, w_hi] are read); returns the mapped field on those
    /// rows, history and data terms included.
    SpaceTimeField apply_map(const SpaceTimeField& v, int w_lo, int w_hi);

    /// Iterate the map on window (w_lo, w_hi] from v_init until the window
    /// sup-norm difference drops below tol.
    std::pair<SpaceTimeField, WindowReport> solve_window(int w_lo, int w_hi,
                                                         const SpaceTimeField& v_init);

    /// Data-only terms (the default initial iterate).
    const SpaceTimeField& data_terms() const { return data_; }

    /// Full continuation over [0, T]; returns the output-grid field.
    std::pair<SpaceTimeField, SolveReport> solve();

private:
    void prepare_window(int w_lo, int w_hi); ///< build history for the window
    void fill_source(const SpaceTimeField& v, int p_lo, int p_hi,
                     std::vector<double>& src) const;
    double window_distance(const SpaceTimeField& lhs, const SpaceTimeField& rhs,
                           int w_lo, int w_hi) const;
    void freeze(const SpaceTimeField& fixed, int w_lo, int w_hi);

    Problem problem_;
    SolverConfig config_;
    ConvolutionEngine eng_;
    SpaceTimeField data_;    ///< u*_{f0} + u_{f1} on the internal grid
    SpaceTimeField global_;  ///< frozen solution rows
    SpaceTimeField hist_;    ///< data + frozen-history volume for current window
    std::vector<double> src_;     ///< frozen source levels
    std::vector<double> scratch_; ///< per-apply source buffer
    double eta_ = 0.0;
    int win_levels_ = 0;
    int hist_lo_ = -1, hist_hi_ = -1;
};

/// Convenience wrappers matching the windowed-contraction operations.
SpaceTimeField picard_map(const SpaceTimeField& v, const Problem& problem,
                          const SolverConfig& config = {});
std::pair<SpaceTimeField, SolveReport> continue_solution(const Problem& problem,
                                                         const SolverConfig& config = {});

/// A-posteriori residual (eps dt + c^2) u_xx - (dt + a) u_t - F(x,t,u,u_x),
/// sup over interior nodes via 4th-order stencils on the output grid.
double pde_residual(const SpaceTimeField& u, const Problem& problem);

} // namespace dws
