#pragma once

#include <functional>
#include <memory>
#include <string>

#include "isobeam/jet.hpp"

namespace isobeam {

/// Parse failure; offset() is the byte position in the input.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation failure inside a named node (log of non-positive value, ...).
class eval_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Closed-form expression in the single variable z.
///
/// Immutable after construction; shared freely across threads.
class ExprAst {
public:
    enum class Kind { constant, variable, neg, add, sub, mul, div, pow, call };
    enum class Fn { sin, cos, exp, log, sqrt };

    Kind kind() const { return kind_; }
    double number() const { return number_; }
    Fn fn() const { return fn_; }
    const ExprAst& lhs() const { return *lhs_; }
    const ExprAst& rhs() const { return *rhs_; }

    bool same_tree(const ExprAst& other) const;

    static std::shared_ptr<const ExprAst> make_constant(double v);
    static std::shared_ptr<const ExprAst> make_variable();
    static std::shared_ptr<const ExprAst> make_unary(Kind k, std::shared_ptr<const ExprAst> a);
    static std::shared_ptr<const ExprAst> make_binary(Kind k, std::shared_ptr<const ExprAst> a,
                                                      std::shared_ptr<const ExprAst> b);
    static std::shared_ptr<const ExprAst> make_call(Fn f, std::shared_ptr<const ExprAst> a);

private:
    ExprAst() = default;

    Kind kind_ = Kind::constant;
    double number_ = 0.0;
    Fn fn_ = Fn::sin;
    std::shared_ptr<const ExprAst> lhs_;
    std::shared_ptr<const ExprAst> rhs_;
};

using ExprPtr = std::shared_ptr<const ExprAst>;

/// Grammar:
///   expression := term (('+'|'-') term)*
///   term       := factor (('*'|'/') factor)*
///   factor     := '-' factor | power
///   power      := atom ('^' factor)?
///   atom       := number | 'z' | fn '(' expression ')' | '(' expression ')'
/// '^' is right-associative; unary minus binds looser than '^'.
ExprPtr parse(const std::string& text);

std::string unparse(const ExprAst& ast);

Jet eval_jet(const ExprAst& ast, double z0, int order);

inline Jet eval_jet(const ExprPtr& ast, double z0, int order) { return eval_jet(*ast, z0, order); }
inline double eval_value(const ExprAst& ast, double z0) { return eval_jet(ast, z0, 0).value(); }

/// Scalar function of z exposed through jet evaluation at a requested order.
using ScalarField = std::function<Jet(double z, int order)>;

inline ScalarField field_from_expr(ExprPtr ast) {
    return [ast](double z, int order) { return eval_jet(*ast, z, order); };
}

inline ScalarField field_constant(double v) {
    return [v](double z, int order) { return Jet::constant(z, order, v); };
}

} // namespace isobeam
