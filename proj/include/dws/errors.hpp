#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dws {

/// Input outside the mathematical domain of an operation (e.g. Laplace
/// point left of the convergence abscissa, a >= b at construction).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A quadrature or inversion failed to reach the requested tolerance.
/// Carries the error estimate that was actually achieved.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

/// Fixed-point iteration did not converge within the iteration budget.
/// Carries the history of iterate-difference norms.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::vector<double> diffs)
        : std::runtime_error(what), diffs_(std::move(diffs)) {}
    const std::vector<double>& diff_history() const { return diffs_; }

private:
    std::vector<double> diffs_;
};

/// Internal consistency violated (junction gap, cross-check mismatch).
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// RHS or expression evaluation failed; message carries the location.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller misuse (inconsistent grids, stencil too wide for the grid, ...).
class UsageError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace dws
