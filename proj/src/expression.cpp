#include "dws/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace dws {

namespace {

enum class Fn { sin, cos, exp, tanh, abs, sqrt };

enum class Kind { literal, variable, unary_minus, add, sub, mul, div, pow, call };

} // namespace

struct Expression::Node {
    Kind kind;
    double value = 0.0;                 // literal
    char var = 0;                       // variable
    Fn fn = Fn::sin;                    // call
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make(Kind k, NodePtr l = nullptr, NodePtr r = nullptr) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr run() {
        skip_ws();
        if (eof()) fail("empty expression");
        NodePtr e = parse_sum();
        skip_ws();
        if (!eof()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, col_);
    }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return eof() ? '\0' : text_[pos_]; }

    char advance() {
        const char c = text_[pos_++];
        if (c == '\n') { ++line_; col_ = 1; } else { ++col_; }
        return c;
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    bool accept(char c) {
        skip_ws();
        if (peek() == c) { advance(); return true; }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    NodePtr parse_sum() {
        NodePtr e = parse_product();
        for (;;) {
            if (accept('+')) e = make(Kind::add, e, parse_product());
            else if (accept('-')) e = make(Kind::sub, e, parse_product());
            else return e;
        }
    }

    NodePtr parse_product() {
        NodePtr e = parse_unary();
        for (;;) {
            if (accept('*')) e = make(Kind::mul, e, parse_unary());
            else if (accept('/')) e = make(Kind::div, e, parse_unary());
            else return e;
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make(Kind::unary_minus, parse_unary());
        return parse_power();
    }

    // '^' binds tighter than unary minus and associates to the right.
    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (accept('^')) {
            NodePtr expo = accept('-') ? make(Kind::unary_minus, parse_power()) : parse_power();
            return make(Kind::pow, base, expo);
        }
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (eof()) fail("unexpected end of expression");
        const char c = peek();
        if (c == '(') {
            advance();
            NodePtr e = parse_sum();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.'))
            advance();
        if (!eof() && (peek() == 'e' || peek() == 'E')) {
            advance();
            if (peek() == '+' || peek() == '-') advance();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed exponent");
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
        }
        const std::string tok = text_.substr(start, pos_ - start);
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size()) fail("malformed number '" + tok + "'");
        auto n = std::make_shared<Expression::Node>();
        n->kind = Kind::literal;
        n->value = v;
        return n;
    }

    NodePtr parse_name() {
        const std::size_t start = pos_;
        while (!eof() && std::isalpha(static_cast<unsigned char>(peek()))) advance();
        const std::string name = text_.substr(start, pos_ - start);
        if (name.size() == 1 && (name[0] == 'x' || name[0] == 't' || name[0] == 'u' || name[0] == 'p')) {
            auto n = std::make_shared<Expression::Node>();
            n->kind = Kind::variable;
            n->var = name[0];
            return n;
        }
        static const std::vector<std::pair<std::string, Fn>> fns = {
            {"sin", Fn::sin}, {"cos", Fn::cos}, {"exp", Fn::exp},
            {"tanh", Fn::tanh}, {"abs", Fn::abs}, {"sqrt", Fn::sqrt}};
        for (const auto& [fname, fn] : fns) {
            if (name == fname) {
                expect('(');
                NodePtr arg = parse_sum();
                expect(')');
                auto n = std::make_shared<Expression::Node>();
                n->kind = Kind::call;
                n->fn = fn;
                n->lhs = arg;
                return n;
            }
        }
        fail("unknown identifier '" + name + "'");
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

double eval_node(const Expression::Node& n, double x, double t, double u, double p) {
    switch (n.kind) {
    case Kind::literal: return n.value;
    case Kind::variable:
        switch (n.var) {
        case 'x': return x;
        case 't': return t;
        case 'u': return u;
        default: return p;
        }
    case Kind::unary_minus: return -eval_node(*n.lhs, x, t, u, p);
    case Kind::add: return eval_node(*n.lhs, x, t, u, p) + eval_node(*n.rhs, x, t, u, p);
    case Kind::sub: return eval_node(*n.lhs, x, t, u, p) - eval_node(*n.rhs, x, t, u, p);
    case Kind::mul: return eval_node(*n.lhs, x, t, u, p) * eval_node(*n.rhs, x, t, u, p);
    case Kind::div: {
        const double den = eval_node(*n.rhs, x, t, u, p);
        if (den == 0.0) throw EvaluationError("division by zero");
        return eval_node(*n.lhs, x, t, u, p) / den;
    }
    case Kind::pow:
        return std::pow(eval_node(*n.lhs, x, t, u, p), eval_node(*n.rhs, x, t, u, p));
    case Kind::call: {
        const double a = eval_node(*n.lhs, x, t, u, p);
        switch (n.fn) {
        case Fn::sin: return std::sin(a);
        case Fn::cos: return std::cos(a);
        case Fn::exp: return std::exp(a);
        case Fn::tanh: return std::tanh(a);
        case Fn::abs: return std::fabs(a);
        case Fn::sqrt:
            if (a < 0.0) throw EvaluationError("sqrt of negative value");
            return std::sqrt(a);
        }
    }
    }
    throw EvaluationError("corrupt expression tree");
}

bool node_uses(const Expression::Node& n, char var) {
    if (n.kind == Kind::variable) return n.var == var;
    if (n.lhs && node_uses(*n.lhs, var)) return true;
    if (n.rhs && node_uses(*n.rhs, var)) return true;
    return false;
}

} // namespace

Expression Expression::parse(const std::string& text) {
    Expression e;
    e.root_ = Parser(text).run();
    e.source_ = text;
    return e;
}

double Expression::eval(double x, double t, double u, double p) const {
    if (!root_) throw UsageError("Expression::eval: empty expression");
    return eval_node(*root_, x, t, u, p);
}

bool Expression::uses(char var) const {
    return root_ && node_uses(*root_, var);
}

} // namespace dws
