#pragma once

#include <memory>
#include <string>

#include "dws/errors.hpp"

namespace dws {

/// Parse error with 1-based line/column location.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line, int column)
        : std::runtime_error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

/// A parsed arithmetic expression over the free variables {x, t, u, p}.
///
/// Grammar: + - * / ^ (right-assoc), unary -, parentheses, numeric literals,
/// and the functions sin, cos, exp, tanh, abs, sqrt.
class Expression {
public:
    struct Node;

    Expression() = default;

    static Expression parse(const std::string& text);

    bool empty() const { return !root_; }
    const std::string& source() const { return source_; }

    /// Evaluate with the given variable bindings.  Throws EvaluationError on
    /// domain violations (sqrt of a negative, division by zero).
    double eval(double x, double t, double u = 0.0, double p = 0.0) const;

    /// Which of the four variables actually appear.
    bool uses(char var) const;
    /// True if the expression references u or p (state-dependent RHS).
    bool depends_on_state() const { return uses('u') || uses('p'); }

private:
    std::shared_ptr<const Node> root_;
    std::string source_;
};

} // namespace dws
