#include <cmath>
#include <vector>

#include "doctest.h"
#include "gbc/expression.hpp"

using namespace gbc;

namespace {

Eigen::VectorXd pt(double a, double b = 0.0) {
    Eigen::VectorXd x(2);
    x << a, b;
    return x;
}

double eval(const std::string& text, double a, double b = 0.0, int dim = 2) {
    return expr::parse_expression(text, dim).evaluate(pt(a, b));
}

}  // namespace

TEST_CASE("basic evaluation and precedence") {
    CHECK(eval("2*sin(x1)*cos(x2)", M_PI / 2, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(eval("x1^2^3", 2.0) == 256.0);  // right associative
    CHECK(eval("-x1^2", 3.0) == -9.0);    // ^ binds above unary minus
    CHECK(eval("2^-1", 0.0) == 0.5);
    CHECK(eval("1+2*3", 0.0) == 7.0);
    CHECK(eval("(1+2)*3", 0.0) == 9.0);
    CHECK(eval("8/4/2", 0.0) == 1.0);  // left associative
    CHECK(eval("8-4-2", 0.0) == 2.0);
    CHECK(eval("--x1", 5.0) == 5.0);
}

TEST_CASE("reference table of expression values") {
    struct Triple {
        const char* text;
        double x1, x2, expected;
    };
    const double a = 0.7, b = -1.3;
    const std::vector<Triple> table = {
        {"1", 0, 0, 1.0},
        {"-1", 0, 0, -1.0},
        {"2.5e-1", 0, 0, 0.25},
        {"x1", a, b, a},
        {"x2", a, b, b},
        {"x1+x2", a, b, a + b},
        {"x1-x2", a, b, a - b},
        {"x1*x2", a, b, a * b},
        {"x1/x2", a, b, a / b},
        {"x1^2", a, b, a * a},
        {"x2^3", a, b, b * b * b},
        {"x1^x1", a, b, std::pow(a, a)},
        {"sin(x1)", a, b, std::sin(a)},
        {"cos(x2)", a, b, std::cos(b)},
        {"exp(x1)", a, b, std::exp(a)},
        {"log(x1)", a, b, std::log(a)},
        {"sqrt(x1)", a, b, std::sqrt(a)},
        {"sin(cos(x1))", a, b, std::sin(std::cos(a))},
        {"exp(-x1^2)", a, b, std::exp(-a * a)},
        {"log(exp(x2))", a, b, b},
        {"sqrt(x1^2+x2^2)", a, b, std::hypot(a, b)},
        {"2*sin(x1)*cos(x2)", a, b, 2.0 * std::sin(a) * std::cos(b)},
        {"sin(x1)^2+cos(x1)^2", a, b, 1.0},
        {"x1^2^2", a, b, std::pow(a, 4.0)},
        {"(x1^2)^2", a, b, std::pow(a, 4.0)},
        {"-x1^2+x2", a, b, -a * a + b},
        {"(-x1)^2", a, b, a * a},
        {"1/(1+x1^2)", a, b, 1.0 / (1.0 + a * a)},
        {"4/(1+x1^2+x2^2)^2", a, b, 4.0 / std::pow(1.0 + a * a + b * b, 2.0)},
        {"exp(0.6*sin(x1)*cos(x2))", a, b, std::exp(0.6 * std::sin(a) * std::cos(b))},
        {"x1*x2+x1/x2", a, b, a * b + a / b},
        {"x1-x2*x1", a, b, a - b * a},
        {"3-2-1", a, b, 0.0},
        {"3-(2-1)", a, b, 2.0},
        {"2*3^2", a, b, 18.0},
        {"(2*3)^2", a, b, 36.0},
        {"1e2", a, b, 100.0},
        {"0.5*cos(x2)", a, b, 0.5 * std::cos(b)},
        {"0.5*sin(x1)", a, b, 0.5 * std::sin(a)},
        {"x1 + x2 * 2", a, b, a + 2.0 * b},
        {"sin(x1+x2)", a, b, std::sin(a + b)},
        {"cos(x1*x2)", a, b, std::cos(a * b)},
        {"exp(x1)*exp(x2)", a, b, std::exp(a + b)},
        {"sqrt(exp(x2))", a, b, std::exp(0.5 * b)},
        {"log(x1^2)", a, b, 2.0 * std::log(a)},
        {"x1^0", a, b, 1.0},
        {"0^x1", a, b, 0.0},
        {"-(x1+x2)", a, b, -(a + b)},
        {"2^x1^2", a, b, std::pow(2.0, a * a)},
        {"1/2+1/4+1/8", a, b, 0.875},
    };
    CHECK(table.size() >= 50);
    for (const auto& t : table) {
        CAPTURE(t.text);
        const double v = eval(t.text, t.x1, t.x2);
        CHECK(std::abs(v - t.expected) <= 1e-14 * std::max(1.0, std::abs(t.expected)));
    }
}

TEST_CASE("parse-print-parse is a fixed point") {
    const std::vector<std::string> exprs = {
        "2*sin(x1)*cos(x2)", "x1^2^3",     "-x1^2",         "(x1+x2)*x1",
        "4/(1+x1^2+x2^2)^2", "(2*3)^2",    "x1-(x2-1)",     "8/4/2",
        "-(x1+x2)",          "(x1^2)^2",   "exp(-x1^2)",    "1/(1+x1)",
        "0.30000000000000004*x1",          "2^-1",          "sqrt(x1^2+x2^2)",
    };
    for (const auto& text : exprs) {
        CAPTURE(text);
        auto p1 = expr::parse_expression(text, 2);
        const std::string s1 = p1.print();
        auto p2 = expr::parse_expression(s1, 2);
        CHECK(p2.print() == s1);
        for (double a : {0.3, 1.7}) {
            const auto x = pt(a, -0.9);
            CHECK(p1.evaluate(x) == p2.evaluate(x));
        }
    }
}

TEST_CASE("syntax errors carry positions") {
    auto position_of = [](const std::string& text, int dim) {
        try {
            expr::parse_expression(text, dim);
        } catch (const expr::ExpressionError& e) {
            CHECK(std::string(e.what()).find("position") != std::string::npos);
            return e.position;
        }
        return -1;
    };
    CHECK(position_of("sin(x3)", 2) == 5);   // unknown identifier in d=2
    CHECK(position_of("x1 + * 2", 2) == 6);  // unexpected character
    CHECK(position_of("2*(x1", 2) == 6);     // missing ')'
    CHECK(position_of("x1 + ", 2) == 6);     // unexpected end
    CHECK(position_of("foo(x1)", 2) == 1);   // unknown function
    CHECK(position_of("x1 x2", 2) == 4);     // trailing input
    CHECK(expr::parse_expression("sin(x3)", 4).evaluate(Eigen::VectorXd::Zero(4)) == 0.0);
}

TEST_CASE("domain errors during evaluation") {
    CHECK_THROWS_AS(eval("log(x1)", -1.0), expr::ExpressionError);
    CHECK_THROWS_AS(eval("log(x1)", 0.0), expr::ExpressionError);
    CHECK_THROWS_AS(eval("sqrt(x1)", -2.0), expr::ExpressionError);
    CHECK_THROWS_AS(eval("1/x1", 0.0), expr::ExpressionError);
    CHECK_THROWS_AS(eval("x1^0.5", -1.0), expr::ExpressionError);
    CHECK(eval("x1^0.5", 4.0) == 2.0);
}
