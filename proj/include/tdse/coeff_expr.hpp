// coeff_expr.hpp — parser/evaluator for closed-form real functions of one
// time variable `t`.  These supply every user-facing coefficient function
// (Hamiltonian coefficients and gauge functions).
//
// Grammar (precedence low to high):
//   expr   := term  (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?              -- right-associative
//   atom   := number | 't' | fn '(' expr ')' | '(' expr ')'
//   fn     := sin | cos | exp | ln | tanh | sqrt | abs
//
// Parsed expressions are immutable; evaluation is pure and thread-safe.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tdse/errors.hpp"

namespace tdse {

class CoeffExpr {
public:
    // Parses `source`; throws ParseError (with byte offset) on bad syntax or
    // an identifier outside the fixed function set.
    static CoeffExpr parse(std::string_view source);

    // Evaluates at time t.  Throws EvalError on domain violations (division
    // by zero, ln of non-positive, sqrt of negative, overflow); never
    // returns a non-finite value.
    double eval(double t) const;
    double operator()(double t) const { return eval(t); }

    const std::string& source() const { return source_; }

    // Minimal-parentheses rendering; re-parses to a structurally equal tree.
    std::string pretty() const;

    bool structurally_equal(const CoeffExpr& other) const;

    // True when the tree is the literal constant 0 (used to skip quadrature
    // of identically-zero drives).
    bool is_literal_zero() const;

private:
    enum class Op : unsigned char {
        Number, Time,
        Add, Sub, Mul, Div, Pow, Neg,
        Sin, Cos, Exp, Ln, Tanh, Sqrt, Abs,
    };

    struct Node {
        Op op;
        double value;  // Op::Number only
        int lhs;       // -1 when absent
        int rhs;
    };

    CoeffExpr() = default;

    void print_node(int idx, int parent_level, bool rhs_of_parent, std::string& out) const;

    std::vector<Node> nodes_;  // postorder: children precede parents
    int root_ = -1;
    std::string source_;

    friend class ExprParser;
};

}  // namespace tdse
