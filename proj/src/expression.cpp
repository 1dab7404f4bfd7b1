#include "gbc/expression.hpp"

#include <cctype>
#include <cmath>
#include <vector>

namespace gbc::expr {

struct Node {
    enum class Kind { Number, Variable, Unary, Binary, Call };
    Kind kind;
    double value = 0.0;          // Number
    int index = 0;               // Variable: 0-based coordinate
    char op = 0;                 // Unary ('-') and Binary
    std::string func;            // Call
    std::shared_ptr<const Node> lhs, rhs;
    int position = 0;            // for evaluation diagnostics
};

namespace {

using NodePtr = std::shared_ptr<const Node>;

bool is_known_function(const std::string& name) {
    return name == "sin" || name == "cos" || name == "exp" || name == "log" ||
           name == "sqrt";
}

class Parser {
public:
    Parser(const std::string& text, int dim) : text_(text), dim_(dim) {}

    NodePtr parse() {
        NodePtr e = sum();
        skip_space();
        if (pos_ < text_.size())
            throw ExpressionError("unexpected trailing input", int(pos_) + 1);
        return e;
    }

private:
    // sum := product (('+'|'-') product)*      left associative
    NodePtr sum() {
        NodePtr lhs = product();
        while (true) {
            skip_space();
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                const char op = text_[pos_];
                const int at = int(pos_++) + 1;
                lhs = binary(op, lhs, product(), at);
            } else {
                return lhs;
            }
        }
    }

    // product := factor (('*'|'/') factor)*    left associative
    NodePtr product() {
        NodePtr lhs = factor();
        while (true) {
            skip_space();
            if (pos_ < text_.size() && (text_[pos_] == '*' || text_[pos_] == '/')) {
                const char op = text_[pos_];
                const int at = int(pos_++) + 1;
                lhs = binary(op, lhs, factor(), at);
            } else {
                return lhs;
            }
        }
    }

    // factor := '-' factor | power            unary minus binds below ^
    NodePtr factor() {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '-') {
            const int at = int(pos_++) + 1;
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Unary;
            n->op = '-';
            n->lhs = factor();
            n->position = at;
            return n;
        }
        return power();
    }

    // power := atom ('^' factor)?              right associative, so x^2^3 is
    // x^(2^3) and -x^2 is -(x^2)
    NodePtr power() {
        NodePtr base = atom();
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '^') {
            const int at = int(pos_++) + 1;
            return binary('^', base, factor(), at);
        }
        return base;
    }

    NodePtr atom() {
        skip_space();
        if (pos_ >= text_.size()) throw ExpressionError("unexpected end of input", int(pos_) + 1);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = sum();
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != ')')
                throw ExpressionError("missing ')'", int(pos_) + 1);
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw ExpressionError(std::string("unexpected character '") + c + "'", int(pos_) + 1);
    }

    NodePtr number() {
        const int at = int(pos_) + 1;
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(text_.substr(pos_), &used);
        } catch (const std::exception&) {
            throw ExpressionError("malformed number", at);
        }
        pos_ += used;
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Number;
        n->value = v;
        n->position = at;
        return n;
    }

    NodePtr identifier() {
        const int at = int(pos_) + 1;
        std::size_t end = pos_;
        while (end < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
            ++end;
        const std::string name = text_.substr(pos_, end - pos_);
        pos_ = end;

        if (name.size() >= 2 && name[0] == 'x' &&
            name.find_first_not_of("0123456789", 1) == std::string::npos) {
            const int idx = std::stoi(name.substr(1));
            if (idx < 1 || idx > dim_)
                throw ExpressionError("unknown identifier '" + name + "' in dimension " +
                                          std::to_string(dim_),
                                      at);
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Variable;
            n->index = idx - 1;
            n->position = at;
            return n;
        }
        if (is_known_function(name)) {
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != '(')
                throw ExpressionError("expected '(' after '" + name + "'", int(pos_) + 1);
            ++pos_;
            NodePtr arg = sum();
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != ')')
                throw ExpressionError("missing ')'", int(pos_) + 1);
            ++pos_;
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Call;
            n->func = name;
            n->lhs = arg;
            n->position = at;
            return n;
        }
        throw ExpressionError("unknown identifier '" + name + "'", at);
    }

    static NodePtr binary(char op, NodePtr lhs, NodePtr rhs, int at) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Binary;
        n->op = op;
        n->lhs = std::move(lhs);
        n->rhs = std::move(rhs);
        n->position = at;
        return n;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    const std::string& text_;
    int dim_;
    std::size_t pos_ = 0;
};

double eval_node(const Node& n, const Eigen::VectorXd& x) {
    switch (n.kind) {
        case Node::Kind::Number:
            return n.value;
        case Node::Kind::Variable:
            return x[n.index];
        case Node::Kind::Unary:
            return -eval_node(*n.lhs, x);
        case Node::Kind::Call: {
            const double a = eval_node(*n.lhs, x);
            if (n.func == "sin") return std::sin(a);
            if (n.func == "cos") return std::cos(a);
            if (n.func == "exp") return std::exp(a);
            if (n.func == "log") {
                if (a <= 0.0) throw ExpressionError("log of non-positive value", n.position);
                return std::log(a);
            }
            if (a < 0.0) throw ExpressionError("sqrt of negative value", n.position);
            return std::sqrt(a);
        }
        case Node::Kind::Binary: {
            const double a = eval_node(*n.lhs, x);
            const double b = eval_node(*n.rhs, x);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/':
                    if (b == 0.0) throw ExpressionError("division by zero", n.position);
                    return a / b;
                default: {
                    const double v = std::pow(a, b);
                    if (!std::isfinite(v))
                        throw ExpressionError("power outside the real domain", n.position);
                    return v;
                }
            }
        }
    }
    throw std::logic_error("unreachable");
}

int precedence(const Node& n) {
    switch (n.kind) {
        case Node::Kind::Binary:
            if (n.op == '+' || n.op == '-') return 1;
            if (n.op == '*' || n.op == '/') return 2;
            return 4;  // ^
        case Node::Kind::Unary:
            return 3;
        default:
            return 5;
    }
}

void print_node(const Node& n, std::string& out, int parent_prec, bool rhs_of_parent) {
    const int prec = precedence(n);
    const bool need_parens =
        prec < parent_prec ||
        (prec == parent_prec && rhs_of_parent && prec != 4);  // ^ reassociates right
    if (need_parens) out += '(';
    switch (n.kind) {
        case Node::Kind::Number: {
            char buf[32];
            for (int digits : {15, 16, 17}) {  // shortest round-trip form
                std::snprintf(buf, sizeof buf, "%.*g", digits, n.value);
                if (std::stod(buf) == n.value) break;
            }
            out += buf;
            break;
        }
        case Node::Kind::Variable:
            out += 'x';
            out += std::to_string(n.index + 1);
            break;
        case Node::Kind::Unary:
            out += '-';
            print_node(*n.lhs, out, prec, true);
            break;
        case Node::Kind::Call:
            out += n.func;
            out += '(';
            print_node(*n.lhs, out, 0, false);
            out += ')';
            break;
        case Node::Kind::Binary:
            // ^ is right associative: parenthesize its left child at equal
            // precedence instead of the right one
            print_node(*n.lhs, out, n.op == '^' ? prec + 1 : prec, false);
            out += n.op;
            print_node(*n.rhs, out, n.op == '^' ? prec : prec + 1, true);
            break;
    }
    if (need_parens) out += ')';
}

}  // namespace

double Expression::evaluate(const Eigen::VectorXd& x) const {
    if (!root_) throw std::logic_error("empty expression");
    if (x.size() < dim_) throw std::invalid_argument("point has too few coordinates");
    return eval_node(*root_, x);
}

std::string Expression::print() const {
    if (!root_) return "";
    std::string out;
    print_node(*root_, out, 0, false);
    return out;
}

Expression parse_expression(const std::string& text, int dim) {
    Expression e;
    e.dim_ = dim;
    e.root_ = Parser(text, dim).parse();
    return e;
}

}  // namespace gbc::expr
