#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nehari/grid.hpp"

namespace nehari {

/// Parse failure carrying the byte offset into the source text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t offset);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Closed-form scalar expression over x1, x2, x3.
 *
 * Grammar (left associative, unary minus binds tightest):
 *   expr   := term (('+' | '-') term)*
 *   term   := unary (('*' | '/') unary)*
 *   unary  := '-' unary | primary
 *   primary:= number | x1 | x2 | x3 | call | '(' expr ')'
 *   call   := name '(' expr (',' expr)* ')'  name in sin cos exp sqrt abs min max
 */
class PotentialExpr {
public:
    struct Node;

    static PotentialExpr parse(std::string_view text);

    double eval(const std::array<double, 3>& x) const;
    double eval(double x1, double x2 = 0.0, double x3 = 0.0) const { return eval({x1, x2, x3}); }
    const std::string& source() const { return source_; }
    /// True when the expression does not reference any coordinate.
    bool is_constant() const;

private:
    std::shared_ptr<const Node> root_;
    std::string source_;
};

PotentialExpr parse_expr(std::string_view text);

/// Samples `expr` on every node. On periodic domains the unit cell is
/// sampled once and tiled, so the field is bit-exactly 1-periodic; the
/// expression itself is checked for periodicity at tolerance `period_tol`
/// (relative) by comparing against shifted evaluations.
GridFunction sample_expr(const PotentialExpr& expr, const DomainPtr& domain, double period_tol = 1e-9);

}  // namespace nehari
