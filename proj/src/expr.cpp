#include "nehari/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <vector>

#include <fmt/format.h>

namespace nehari {

ParseError::ParseError(const std::string& message, std::size_t offset)
    : std::runtime_error(fmt::format("{} at offset {}", message, offset)), offset_(offset) {}

enum class Op { constant, variable, neg, add, sub, mul, div, sin, cos, exp, sqrt, abs, min, max };

struct PotentialExpr::Node {
    Op op = Op::constant;
    double value = 0.0;
    int var = 0;
    std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const PotentialExpr::Node>;

NodePtr make(Op op, std::vector<NodePtr> args = {}) {
    auto n = std::make_shared<PotentialExpr::Node>();
    n->op = op;
    n->args = std::move(args);
    return n;
}

struct Function {
    std::string_view name;
    Op op;
    std::size_t arity;
};

constexpr Function functions[] = {
    {"sin", Op::sin, 1},   {"cos", Op::cos, 1}, {"exp", Op::exp, 1}, {"sqrt", Op::sqrt, 1},
    {"abs", Op::abs, 1},   {"min", Op::min, 2}, {"max", Op::max, 2},
};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        auto n = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ParseError(fmt::format("unexpected character '{}'", text_[pos_]), pos_);
        }
        return n;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        auto lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = make(Op::add, {lhs, term()});
            } else if (accept('-')) {
                lhs = make(Op::sub, {lhs, term()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        auto lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = make(Op::mul, {lhs, unary()});
            } else if (accept('/')) {
                lhs = make(Op::div, {lhs, unary()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        if (accept('-')) {
            return make(Op::neg, {unary()});
        }
        return primary();
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= text_.size()) {
            throw ParseError("unexpected end of expression", pos_);
        }
        const char c = text_[pos_];
        if (c == '(') {
            const std::size_t open = pos_;
            ++pos_;
            auto inner = expr();
            if (!accept(')')) {
                throw ParseError("unbalanced parenthesis opened", open);
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return identifier();
        }
        throw ParseError(fmt::format("unexpected character '{}'", c), pos_);
    }

    NodePtr number() {
        const std::size_t start = pos_;
        std::size_t end = pos_;
        while (end < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.')) {
            ++end;
        }
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            std::size_t e = end + 1;
            if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) {
                ++e;
            }
            if (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) {
                while (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) {
                    ++e;
                }
                end = e;
            }
        }
        double value = 0.0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + end, value);
        if (res.ec != std::errc() || res.ptr != text_.data() + end) {
            throw ParseError("malformed number", start);
        }
        pos_ = end;
        auto n = std::make_shared<PotentialExpr::Node>();
        n->op = Op::constant;
        n->value = value;
        return n;
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x1" || name == "x2" || name == "x3") {
            auto n = std::make_shared<PotentialExpr::Node>();
            n->op = Op::variable;
            n->var = name[1] - '1';
            return n;
        }
        for (const auto& fn : functions) {
            if (fn.name != name) {
                continue;
            }
            if (!accept('(')) {
                throw ParseError(fmt::format("expected '(' after '{}'", name), pos_);
            }
            std::vector<NodePtr> args;
            args.push_back(expr());
            while (accept(',')) {
                args.push_back(expr());
            }
            if (!accept(')')) {
                throw ParseError(fmt::format("unbalanced parenthesis in call to '{}'", name), pos_);
            }
            if (args.size() != fn.arity) {
                throw ParseError(
                    fmt::format("'{}' takes {} argument(s), got {}", name, fn.arity, args.size()), start);
            }
            return make(fn.op, std::move(args));
        }
        throw ParseError(fmt::format("unknown identifier '{}'", name), start);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

double eval_node(const PotentialExpr::Node& n, const std::array<double, 3>& x) {
    const auto arg = [&](std::size_t i) { return eval_node(*n.args[i], x); };
    switch (n.op) {
        case Op::constant:
            return n.value;
        case Op::variable:
            return x[static_cast<std::size_t>(n.var)];
        case Op::neg:
            return -arg(0);
        case Op::add:
            return arg(0) + arg(1);
        case Op::sub:
            return arg(0) - arg(1);
        case Op::mul:
            return arg(0) * arg(1);
        case Op::div: {
            const double den = arg(1);
            if (den == 0.0) {
                throw EvalError("division by zero");
            }
            return arg(0) / den;
        }
        case Op::sin:
            return std::sin(arg(0));
        case Op::cos:
            return std::cos(arg(0));
        case Op::exp:
            return std::exp(arg(0));
        case Op::sqrt:
            return std::sqrt(arg(0));
        case Op::abs:
            return std::abs(arg(0));
        case Op::min:
            return std::min(arg(0), arg(1));
        case Op::max:
            return std::max(arg(0), arg(1));
    }
    return 0.0;
}

bool uses_variables(const PotentialExpr::Node& n) {
    if (n.op == Op::variable) {
        return true;
    }
    for (const auto& a : n.args) {
        if (uses_variables(*a)) {
            return true;
        }
    }
    return false;
}

}  // namespace

PotentialExpr PotentialExpr::parse(std::string_view text) {
    PotentialExpr e;
    e.root_ = Parser(text).parse();
    e.source_ = std::string(text);
    return e;
}

double PotentialExpr::eval(const std::array<double, 3>& x) const { return eval_node(*root_, x); }

bool PotentialExpr::is_constant() const { return !uses_variables(*root_); }

PotentialExpr parse_expr(std::string_view text) { return PotentialExpr::parse(text); }

GridFunction sample_expr(const PotentialExpr& expr, const DomainPtr& domain, double period_tol) {
    const DomainSpec& d = *domain;
    GridFunction out(domain, 0.0);
    const int m = d.periodic() ? d.points_per_cell() : 0;
    const auto point = [&](const std::array<int, 3>& idx) {
        std::array<double, 3> x{0.0, 0.0, 0.0};
        for (int a = 0; a < d.dimension(); ++a) {
            x[static_cast<std::size_t>(a)] = d.coordinate(a, idx[static_cast<std::size_t>(a)]);
        }
        return x;
    };
    for (std::size_t flat = 0; flat < d.size(); ++flat) {
        auto idx = d.unravel(flat);
        if (d.periodic()) {
            for (int a = 0; a < d.dimension(); ++a) {
                idx[static_cast<std::size_t>(a)] %= m;
            }
        }
        const double value = expr.eval(point(idx));
        if (!std::isfinite(value)) {
            throw EvalError(fmt::format("expression '{}' is not finite at node {}", expr.source(), flat));
        }
        out[flat] = value;
    }
    if (d.periodic() && !expr.is_constant()) {
        // Compare the tiled cell against direct evaluation one period away.
        for (std::size_t flat = 0; flat < d.size(); ++flat) {
            auto idx = d.unravel(flat);
            bool in_cell = true;
            for (int a = 0; a < d.dimension(); ++a) {
                in_cell = in_cell && idx[static_cast<std::size_t>(a)] < m;
            }
            if (!in_cell) {
                continue;
            }
            auto x = point(idx);
            for (int a = 0; a < d.dimension(); ++a) {
                auto y = x;
                y[static_cast<std::size_t>(a)] += 1.0;
                const double ref = out[flat];
                const double shifted = expr.eval(y);
                if (std::abs(shifted - ref) > period_tol * std::max(1.0, std::abs(ref))) {
                    throw EvalError(fmt::format("expression '{}' is not 1-periodic in x{} (node {})",
                                                expr.source(), a + 1, flat));
                }
            }
        }
    }
    return out;
}

}  // namespace nehari
