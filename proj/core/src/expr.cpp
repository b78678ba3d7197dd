#include "isobeam/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace isobeam {

std::shared_ptr<const ExprAst> ExprAst::make_constant(double v) {
    auto n = std::shared_ptr<ExprAst>(new ExprAst);
    n->kind_ = Kind::constant;
    n->number_ = v;
    return n;
}

std::shared_ptr<const ExprAst> ExprAst::make_variable() {
    auto n = std::shared_ptr<ExprAst>(new ExprAst);
    n->kind_ = Kind::variable;
    return n;
}

std::shared_ptr<const ExprAst> ExprAst::make_unary(Kind k, std::shared_ptr<const ExprAst> a) {
    auto n = std::shared_ptr<ExprAst>(new ExprAst);
    n->kind_ = k;
    n->lhs_ = std::move(a);
    return n;
}

std::shared_ptr<const ExprAst> ExprAst::make_binary(Kind k, std::shared_ptr<const ExprAst> a,
                                                    std::shared_ptr<const ExprAst> b) {
    auto n = std::shared_ptr<ExprAst>(new ExprAst);
    n->kind_ = k;
    n->lhs_ = std::move(a);
    n->rhs_ = std::move(b);
    return n;
}

std::shared_ptr<const ExprAst> ExprAst::make_call(Fn f, std::shared_ptr<const ExprAst> a) {
    auto n = std::shared_ptr<ExprAst>(new ExprAst);
    n->kind_ = Kind::call;
    n->fn_ = f;
    n->lhs_ = std::move(a);
    return n;
}

bool ExprAst::same_tree(const ExprAst& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case Kind::constant:
            return number_ == o.number_;
        case Kind::variable:
            return true;
        case Kind::neg:
            return lhs_->same_tree(*o.lhs_);
        case Kind::call:
            return fn_ == o.fn_ && lhs_->same_tree(*o.lhs_);
        default:
            return lhs_->same_tree(*o.lhs_) && rhs_->same_tree(*o.rhs_);
    }
}

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos); }

    ExprPtr expression() {
        ExprPtr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = ExprAst::make_binary(ExprAst::Kind::add, lhs, term());
            else if (accept('-'))
                lhs = ExprAst::make_binary(ExprAst::Kind::sub, lhs, term());
            else
                return lhs;
        }
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        for (;;) {
            if (accept('*'))
                lhs = ExprAst::make_binary(ExprAst::Kind::mul, lhs, factor());
            else if (accept('/'))
                lhs = ExprAst::make_binary(ExprAst::Kind::div, lhs, factor());
            else
                return lhs;
        }
    }

    ExprPtr factor() {
        if (accept('-')) return ExprAst::make_unary(ExprAst::Kind::neg, factor());
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (accept('^')) return ExprAst::make_binary(ExprAst::Kind::pow, base, factor());
        return base;
    }

    ExprPtr atom() {
        char c = peek();
        if (c == '(') {
            ++pos;
            ExprPtr e = expression();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return name();
        fail(pos >= text.size() ? "unexpected end of input" : "unexpected token");
    }

    ExprPtr number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        }
        if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
            std::size_t mark = pos;
            ++pos;
            if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            } else {
                pos = mark;  // 'e' was not an exponent
            }
        }
        if (pos == start) fail("expected number");
        return ExprAst::make_constant(std::strtod(text.substr(start, pos - start).c_str(), nullptr));
    }

    ExprPtr name() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
        std::string id = text.substr(start, pos - start);
        if (id == "z") return ExprAst::make_variable();
        ExprAst::Fn fn;
        if (id == "sin")
            fn = ExprAst::Fn::sin;
        else if (id == "cos")
            fn = ExprAst::Fn::cos;
        else if (id == "exp")
            fn = ExprAst::Fn::exp;
        else if (id == "log")
            fn = ExprAst::Fn::log;
        else if (id == "sqrt")
            fn = ExprAst::Fn::sqrt;
        else {
            pos = start;
            fail("unknown function '" + id + "'");
        }
        if (!accept('(')) fail("expected '(' after function name");
        ExprPtr arg = expression();
        if (!accept(')')) fail("expected ')'");
        return ExprAst::make_call(fn, arg);
    }
};

const char* fn_name(ExprAst::Fn f) {
    switch (f) {
        case ExprAst::Fn::sin: return "sin";
        case ExprAst::Fn::cos: return "cos";
        case ExprAst::Fn::exp: return "exp";
        case ExprAst::Fn::log: return "log";
        case ExprAst::Fn::sqrt: return "sqrt";
    }
    return "?";
}

void unparse_node(const ExprAst& n, std::ostream& out) {
    switch (n.kind()) {
        case ExprAst::Kind::constant: {
            std::ostringstream tmp;
            tmp.precision(17);
            tmp << n.number();
            out << tmp.str();
            break;
        }
        case ExprAst::Kind::variable:
            out << 'z';
            break;
        case ExprAst::Kind::neg:
            out << "(-";
            unparse_node(n.lhs(), out);
            out << ')';
            break;
        case ExprAst::Kind::add:
        case ExprAst::Kind::sub:
        case ExprAst::Kind::mul:
        case ExprAst::Kind::div:
        case ExprAst::Kind::pow: {
            char op = n.kind() == ExprAst::Kind::add   ? '+'
                      : n.kind() == ExprAst::Kind::sub ? '-'
                      : n.kind() == ExprAst::Kind::mul ? '*'
                      : n.kind() == ExprAst::Kind::div ? '/'
                                                       : '^';
            out << '(';
            unparse_node(n.lhs(), out);
            out << op;
            unparse_node(n.rhs(), out);
            out << ')';
            break;
        }
        case ExprAst::Kind::call:
            out << fn_name(n.fn()) << '(';
            unparse_node(n.lhs(), out);
            out << ')';
            break;
    }
}

bool is_constant_jet(const Jet& j) {
    for (int k = 1; k <= j.order(); ++k)
        if (j.coeff(k) != 0.0) return false;
    return true;
}

Jet eval_node(const ExprAst& n, double z0, int order) {
    switch (n.kind()) {
        case ExprAst::Kind::constant:
            return Jet::constant(z0, order, n.number());
        case ExprAst::Kind::variable:
            return Jet::variable(z0, order);
        case ExprAst::Kind::neg:
            return -eval_node(n.lhs(), z0, order);
        case ExprAst::Kind::add:
            return eval_node(n.lhs(), z0, order) + eval_node(n.rhs(), z0, order);
        case ExprAst::Kind::sub:
            return eval_node(n.lhs(), z0, order) - eval_node(n.rhs(), z0, order);
        case ExprAst::Kind::mul:
            return eval_node(n.lhs(), z0, order) * eval_node(n.rhs(), z0, order);
        case ExprAst::Kind::div: {
            Jet den = eval_node(n.rhs(), z0, order);
            if (den.value() == 0.0) throw eval_error("division by zero in '" + unparse(n.rhs()) + "'");
            return eval_node(n.lhs(), z0, order) / den;
        }
        case ExprAst::Kind::pow: {
            Jet base = eval_node(n.lhs(), z0, order);
            Jet expo = eval_node(n.rhs(), z0, order);
            if (is_constant_jet(expo)) return pow(base, expo.value());
            // variable exponent: b^e = exp(e*log b)
            if (base.value() <= 0.0)
                throw eval_error("non-positive base with variable exponent in '" + unparse(n) + "'");
            return exp(expo * log(base));
        }
        case ExprAst::Kind::call: {
            Jet arg = eval_node(n.lhs(), z0, order);
            switch (n.fn()) {
                case ExprAst::Fn::sin: return sin(arg);
                case ExprAst::Fn::cos: return cos(arg);
                case ExprAst::Fn::exp: return exp(arg);
                case ExprAst::Fn::log:
                    if (arg.value() <= 0.0)
                        throw eval_error("log of non-positive value in '" + unparse(n) + "'");
                    return log(arg);
                case ExprAst::Fn::sqrt:
                    if (arg.value() < 0.0)
                        throw eval_error("sqrt of negative value in '" + unparse(n) + "'");
                    return sqrt(arg);
            }
            throw eval_error("unreachable");
        }
    }
    throw eval_error("unreachable");
}

} // namespace

ExprPtr parse(const std::string& text) {
    Parser p(text);
    ExprPtr e = p.expression();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
}

std::string unparse(const ExprAst& ast) {
    std::ostringstream out;
    unparse_node(ast, out);
    return out.str();
}

Jet eval_jet(const ExprAst& ast, double z0, int order) {
    try {
        return eval_node(ast, z0, order);
    } catch (const singular_point_error& e) {
        throw eval_error(std::string(e.what()) + " while evaluating '" + unparse(ast) + "'");
    }
}

} // namespace isobeam
