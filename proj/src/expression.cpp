#include "shadowsim/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <utility>
#include <vector>

namespace shadowsim {

namespace detail {
namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

struct ConstNode : ExprNode {
    explicit ConstNode(double v) : value(v) {}
    double eval(double) const override { return value; }
    double value;
};

struct VarNode : ExprNode {
    double eval(double x) const override { return x; }
};

struct UnaryNode : ExprNode {
    UnaryNode(double sign, NodePtr inner) : sign(sign), inner(std::move(inner)) {}
    double eval(double x) const override { return sign * inner->eval(x); }
    double sign;
    NodePtr inner;
};

struct BinaryNode : ExprNode {
    enum Op { Add, Sub, Mul, Div, Pow };
    BinaryNode(Op op, NodePtr lhs, NodePtr rhs)
        : op(op), lhs(std::move(lhs)), rhs(std::move(rhs)) {}
    double eval(double x) const override {
        const double a = lhs->eval(x);
        const double b = rhs->eval(x);
        switch (op) {
            case Add: return a + b;
            case Sub: return a - b;
            case Mul: return a * b;
            case Div: return a / b;
            case Pow: return std::pow(a, b);
        }
        return 0.0;
    }
    Op op;
    NodePtr lhs, rhs;
};

struct CallNode : ExprNode {
    CallNode(std::function<double(const std::vector<double>&)> fn, std::vector<NodePtr> args)
        : fn(std::move(fn)), args(std::move(args)) {}
    double eval(double x) const override {
        std::vector<double> vals(args.size());
        for (std::size_t i = 0; i < args.size(); ++i) vals[i] = args[i]->eval(x);
        return fn(vals);
    }
    std::function<double(const std::vector<double>&)> fn;
    std::vector<NodePtr> args;
};

struct PiecewiseNode : ExprNode {
    PiecewiseNode(NodePtr lo, NodePtr hi, NodePtr inside, NodePtr outside)
        : lo(std::move(lo)), hi(std::move(hi)), inside(std::move(inside)),
          outside(std::move(outside)) {}
    double eval(double x) const override {
        return (x >= lo->eval(x) && x <= hi->eval(x)) ? inside->eval(x) : outside->eval(x);
    }
    NodePtr lo, hi, inside, outside;
};

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr parse() {
        NodePtr node = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ExpressionError("unexpected trailing input", pos_);
        }
        return node;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }
    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr node = term();
        while (true) {
            if (consume('+')) {
                node = std::make_shared<BinaryNode>(BinaryNode::Add, node, term());
            } else if (consume('-')) {
                node = std::make_shared<BinaryNode>(BinaryNode::Sub, node, term());
            } else {
                return node;
            }
        }
    }

    NodePtr term() {
        NodePtr node = factor();
        while (true) {
            if (consume('*')) {
                node = std::make_shared<BinaryNode>(BinaryNode::Mul, node, factor());
            } else if (consume('/')) {
                node = std::make_shared<BinaryNode>(BinaryNode::Div, node, factor());
            } else {
                return node;
            }
        }
    }

    NodePtr factor() {
        NodePtr base = unary();
        if (consume('^')) {
            return std::make_shared<BinaryNode>(BinaryNode::Pow, base, factor());
        }
        return base;
    }

    NodePtr unary() {
        if (consume('-')) return std::make_shared<UnaryNode>(-1.0, unary());
        if (consume('+')) return unary();
        return primary();
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ExpressionError("unexpected end of expression", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr node = expr();
            if (!consume(')')) throw ExpressionError("expected ')'", pos_);
            return node;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        throw ExpressionError(std::string("unexpected character '") + c + "'", pos_);
    }

    NodePtr number() {
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        const double value = std::strtod(begin, &end);
        if (end == begin) throw ExpressionError("malformed number", pos_);
        pos_ += static_cast<std::size_t>(end - begin);
        return std::make_shared<ConstNode>(value);
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string name = text_.substr(start, pos_ - start);
        if (name == "x") return std::make_shared<VarNode>();
        if (name == "pi") return std::make_shared<ConstNode>(3.14159265358979323846);
        if (peek() != '(') {
            throw ExpressionError("unknown identifier '" + name + "'", start);
        }
        consume('(');
        std::vector<NodePtr> args;
        if (peek() != ')') {
            args.push_back(expr());
            while (consume(',')) args.push_back(expr());
        }
        if (!consume(')')) throw ExpressionError("expected ')' after arguments", pos_);
        return make_call(name, std::move(args), start);
    }

    NodePtr make_call(const std::string& name, std::vector<NodePtr> args, std::size_t at) {
        auto arity = [&](std::size_t n) {
            if (args.size() != n) {
                throw ExpressionError(name + " expects " + std::to_string(n) + " argument(s), got " +
                                          std::to_string(args.size()),
                                      at);
            }
        };
        if (name == "sin") {
            arity(1);
            return std::make_shared<CallNode>(
                [](const std::vector<double>& a) { return std::sin(a[0]); }, std::move(args));
        }
        if (name == "cos") {
            arity(1);
            return std::make_shared<CallNode>(
                [](const std::vector<double>& a) { return std::cos(a[0]); }, std::move(args));
        }
        if (name == "abs") {
            arity(1);
            return std::make_shared<CallNode>(
                [](const std::vector<double>& a) { return std::abs(a[0]); }, std::move(args));
        }
        if (name == "exp") {
            arity(1);
            return std::make_shared<CallNode>(
                [](const std::vector<double>& a) { return std::exp(a[0]); }, std::move(args));
        }
        if (name == "sqrt") {
            arity(1);
            return std::make_shared<CallNode>(
                [](const std::vector<double>& a) { return std::sqrt(a[0]); }, std::move(args));
        }
        if (name == "pow") {
            arity(2);
            return std::make_shared<CallNode>(
                [](const std::vector<double>& a) { return std::pow(a[0], a[1]); },
                std::move(args));
        }
        if (name == "min") {
            arity(2);
            return std::make_shared<CallNode>(
                [](const std::vector<double>& a) { return std::min(a[0], a[1]); },
                std::move(args));
        }
        if (name == "max") {
            arity(2);
            return std::make_shared<CallNode>(
                [](const std::vector<double>& a) { return std::max(a[0], a[1]); },
                std::move(args));
        }
        if (name == "piecewise") {
            arity(4);
            return std::make_shared<PiecewiseNode>(args[0], args[1], args[2], args[3]);
        }
        throw ExpressionError("unknown function '" + name + "'", at);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace
}  // namespace detail

Expression parse_expression(const std::string& text) {
    detail::Parser parser(text);
    Expression expr;
    expr.root_ = parser.parse();
    expr.source_ = text;
    return expr;
}

}  // namespace shadowsim
