#include "tdse/coeff_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace tdse {

namespace {

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

class ExprParser {
public:
    explicit ExprParser(std::string_view src) : src_(src) {}

    CoeffExpr run() {
        CoeffExpr e;
        e.source_ = std::string(src_);
        skip_ws();
        if (pos_ >= src_.size())
            throw ParseError("empty expression", pos_);
        e.root_ = parse_expr(e);
        skip_ws();
        if (pos_ < src_.size())
            throw ParseError(std::string("unexpected trailing input '") + src_[pos_] + "'", pos_);
        return e;
    }

private:
    using Op = CoeffExpr::Op;

    int emit(CoeffExpr& e, Op op, double value = 0.0, int lhs = -1, int rhs = -1) {
        e.nodes_.push_back({op, value, lhs, rhs});
        return static_cast<int>(e.nodes_.size()) - 1;
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) { ++pos_; return true; }
        return false;
    }

    void expect(char c, const char* what) {
        skip_ws();
        if (pos_ >= src_.size() || src_[pos_] != c)
            throw ParseError(std::string("expected ") + what, pos_);
        ++pos_;
    }

    int parse_expr(CoeffExpr& e) {
        int lhs = parse_term(e);
        for (;;) {
            if (accept('+'))      lhs = emit(e, Op::Add, 0.0, lhs, parse_term(e));
            else if (accept('-')) lhs = emit(e, Op::Sub, 0.0, lhs, parse_term(e));
            else break;
        }
        return lhs;
    }

    int parse_term(CoeffExpr& e) {
        int lhs = parse_unary(e);
        for (;;) {
            if (accept('*'))      lhs = emit(e, Op::Mul, 0.0, lhs, parse_unary(e));
            else if (accept('/')) lhs = emit(e, Op::Div, 0.0, lhs, parse_unary(e));
            else break;
        }
        return lhs;
    }

    int parse_unary(CoeffExpr& e) {
        if (accept('-')) return emit(e, Op::Neg, 0.0, parse_unary(e));
        return parse_power(e);
    }

    int parse_power(CoeffExpr& e) {
        int base = parse_atom(e);
        if (accept('^')) {
            // right-associative; the exponent may carry a unary minus
            int exp = parse_unary(e);
            return emit(e, Op::Pow, 0.0, base, exp);
        }
        return base;
    }

    int parse_atom(CoeffExpr& e) {
        skip_ws();
        if (pos_ >= src_.size())
            throw ParseError("unexpected end of input", pos_);
        char c = src_[pos_];

        if (c == '(') {
            ++pos_;
            int inner = parse_expr(e);
            expect(')', "')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number(e);
        if (std::isalpha(static_cast<unsigned char>(c)))
            return parse_ident(e);
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    int parse_number(CoeffExpr& e) {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
            ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                pos_ = mark;  // not an exponent; leave for the caller
            else
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        const std::string text(src_.substr(start, pos_ - start));
        char* end = nullptr;
        double v = std::strtod(text.c_str(), &end);
        if (end != text.c_str() + text.size())
            throw ParseError("malformed number '" + text + "'", start);
        return emit(e, Op::Number, v);
    }

    int parse_ident(CoeffExpr& e) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
        std::string_view name = src_.substr(start, pos_ - start);

        if (name == "t") return emit(e, Op::Time);

        Op op;
        if      (name == "sin")  op = Op::Sin;
        else if (name == "cos")  op = Op::Cos;
        else if (name == "exp")  op = Op::Exp;
        else if (name == "ln")   op = Op::Ln;
        else if (name == "tanh") op = Op::Tanh;
        else if (name == "sqrt") op = Op::Sqrt;
        else if (name == "abs")  op = Op::Abs;
        else
            throw ParseError("unknown identifier '" + std::string(name) + "'", start);

        expect('(', "'(' after function name");
        int arg = parse_expr(e);
        expect(')', "')'");
        return emit(e, op, 0.0, arg);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

CoeffExpr CoeffExpr::parse(std::string_view source) {
    return ExprParser(source).run();
}

double CoeffExpr::eval(double t) const {
    // Nodes are in postorder, so a single linear pass suffices.
    thread_local std::vector<double> stack;
    stack.resize(nodes_.size());

    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        double v = 0.0;
        switch (n.op) {
            case Op::Number: v = n.value; break;
            case Op::Time:   v = t; break;
            case Op::Add:    v = stack[n.lhs] + stack[n.rhs]; break;
            case Op::Sub:    v = stack[n.lhs] - stack[n.rhs]; break;
            case Op::Mul:    v = stack[n.lhs] * stack[n.rhs]; break;
            case Op::Div:
                if (stack[n.rhs] == 0.0)
                    throw EvalError("division by zero in '" + source_ + "'");
                v = stack[n.lhs] / stack[n.rhs];
                break;
            case Op::Pow:    v = std::pow(stack[n.lhs], stack[n.rhs]); break;
            case Op::Neg:    v = -stack[n.lhs]; break;
            case Op::Sin:    v = std::sin(stack[n.lhs]); break;
            case Op::Cos:    v = std::cos(stack[n.lhs]); break;
            case Op::Exp:    v = std::exp(stack[n.lhs]); break;
            case Op::Ln:
                if (stack[n.lhs] <= 0.0)
                    throw EvalError("ln of non-positive value in '" + source_ + "'");
                v = std::log(stack[n.lhs]);
                break;
            case Op::Tanh:   v = std::tanh(stack[n.lhs]); break;
            case Op::Sqrt:
                if (stack[n.lhs] < 0.0)
                    throw EvalError("sqrt of negative value in '" + source_ + "'");
                v = std::sqrt(stack[n.lhs]);
                break;
            case Op::Abs:    v = std::fabs(stack[n.lhs]); break;
        }
        if (!std::isfinite(v))
            throw EvalError("non-finite value while evaluating '" + source_ + "'");
        stack[i] = v;
    }
    return stack[root_];
}

bool CoeffExpr::is_literal_zero() const {
    return nodes_.size() == 1 && nodes_[0].op == Op::Number && nodes_[0].value == 0.0;
}

void CoeffExpr::print_node(int idx, int parent_level, bool rhs_of_parent, std::string& out) const {
    const Node& n = nodes_[idx];

    auto my_level = [&]() -> int {
        switch (n.op) {
            case Op::Add: case Op::Sub: return 1;
            case Op::Mul: case Op::Div: return 2;
            case Op::Neg:               return 3;
            case Op::Pow:               return 4;
            default:                    return 5;
        }
    }();

    // Parenthesize when this node binds looser than its context, or equally
    // tight on the non-associative side (right for -, /; left for ^).
    bool need_parens = my_level < parent_level ||
                       (my_level == parent_level && rhs_of_parent);

    if (need_parens) out += '(';
    char buf[32];
    switch (n.op) {
        case Op::Number:
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += buf;
            break;
        case Op::Time: out += 't'; break;
        case Op::Add:
            print_node(n.lhs, 1, false, out); out += " + "; print_node(n.rhs, 1, true, out);
            break;
        case Op::Sub:
            print_node(n.lhs, 1, false, out); out += " - "; print_node(n.rhs, 1, true, out);
            break;
        case Op::Mul:
            print_node(n.lhs, 2, false, out); out += '*'; print_node(n.rhs, 2, true, out);
            break;
        case Op::Div:
            print_node(n.lhs, 2, false, out); out += '/'; print_node(n.rhs, 2, true, out);
            break;
        case Op::Neg:
            out += '-'; print_node(n.lhs, 4, false, out);
            break;
        case Op::Pow:
            // left operand of ^ is the non-associative side
            print_node(n.lhs, 4, true, out); out += '^'; print_node(n.rhs, 3, false, out);
            break;
        case Op::Sin:  out += "sin(";  print_node(n.lhs, 0, false, out); out += ')'; break;
        case Op::Cos:  out += "cos(";  print_node(n.lhs, 0, false, out); out += ')'; break;
        case Op::Exp:  out += "exp(";  print_node(n.lhs, 0, false, out); out += ')'; break;
        case Op::Ln:   out += "ln(";   print_node(n.lhs, 0, false, out); out += ')'; break;
        case Op::Tanh: out += "tanh("; print_node(n.lhs, 0, false, out); out += ')'; break;
        case Op::Sqrt: out += "sqrt("; print_node(n.lhs, 0, false, out); out += ')'; break;
        case Op::Abs:  out += "abs(";  print_node(n.lhs, 0, false, out); out += ')'; break;
    }
    if (need_parens) out += ')';
}

std::string CoeffExpr::pretty() const {
    std::string out;
    print_node(root_, 0, false, out);
    return out;
}

bool CoeffExpr::structurally_equal(const CoeffExpr& other) const {
    // Postorder construction is canonical for a given tree shape, so nodes
    // can be compared index-wise once roots match.
    if (nodes_.size() != other.nodes_.size() || root_ != other.root_) return false;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& a = nodes_[i];
        const Node& b = other.nodes_[i];
        if (a.op != b.op || a.lhs != b.lhs || a.rhs != b.rhs) return false;
        if (a.op == Op::Number && a.value != b.value) return false;
    }
    return true;
}

}  // namespace tdse
