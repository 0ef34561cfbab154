#pragma once

#include <memory>
#include <stdexcept>
#include <string>

namespace shadowsim {

class ExpressionError : public std::runtime_error {
public:
    ExpressionError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at column " + std::to_string(position + 1) + ")"),
          position(position) {}
    std::size_t position;
};

namespace detail {
struct ExprNode {
    virtual ~ExprNode() = default;
    virtual double eval(double x) const = 0;
};
}  // namespace detail

/// A parsed closed-form expression in the spatial variable x. Supports
/// + - * / ^, unary sign, parentheses, the constant pi, the functions
/// sin cos abs exp sqrt pow min max, and piecewise(lo, hi, inside, outside)
/// which selects `inside` for lo <= x <= hi.
class Expression {
public:
    Expression() = default;
    double operator()(double x) const {
        if (!root_) throw std::logic_error("Expression: empty");
        return root_->eval(x);
    }
    const std::string& source() const { return source_; }
    bool valid() const { return root_ != nullptr; }

private:
    friend Expression parse_expression(const std::string&);
    std::shared_ptr<const detail::ExprNode> root_;
    std::string source_;
};

/// Parses the expression text; malformed input throws ExpressionError with
/// the offending column.
Expression parse_expression(const std::string& text);

}  // namespace shadowsim
