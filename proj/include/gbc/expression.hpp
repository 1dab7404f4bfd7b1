#pragma once

#include <Eigen/Dense>
#include <memory>
#include <stdexcept>
#include <string>

namespace gbc::expr {

// Parse or evaluation failure with a 1-based position into the source text.
struct ExpressionError : std::runtime_error {
    ExpressionError(const std::string& what, int position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    int position;
};

struct Node;

// Scalar field over x1..xd: literals, + - * / ^ (with ^ right-associative),
// unary minus, and sin/cos/exp/log/sqrt.
class Expression {
public:
    Expression() = default;

    double evaluate(const Eigen::VectorXd& x) const;
    std::string print() const;
    int dim() const { return dim_; }

private:
    friend Expression parse_expression(const std::string& text, int dim);
    std::shared_ptr<const Node> root_;
    int dim_ = 0;
};

Expression parse_expression(const std::string& text, int dim);

}  // namespace gbc::expr
