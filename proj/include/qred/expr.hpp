#pragma once

#include <cctype>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "xalg.hpp"

namespace qred {

/// Syntax tree of an arithmetic expression in q and x.
struct Expr {
    enum class Kind { integer, sym_q, sym_x, neg, add, sub, mul, div, pow };

    Kind kind = Kind::integer;
    mpz_class value;  // integer literal
    long exponent = 0;
    std::size_t pos = 0;
    std::vector<Expr> args;
};

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : s_(text) {}

    Expr parse()
    {
        Expr e = expr();
        skip();
        if (i_ != s_.size())
            fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw error(errc::syntax_error, "at position " + std::to_string(i_) + ": " + msg);
    }

    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }

    bool accept(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    static Expr node(Expr::Kind k, std::size_t pos, std::vector<Expr> args = {})
    {
        Expr e;
        e.kind = k;
        e.pos = pos;
        e.args = std::move(args);
        return e;
    }

    Expr expr()
    {
        Expr lhs = term();
        for (;;) {
            skip();
            std::size_t p = i_;
            if (accept('+'))
                lhs = node(Expr::Kind::add, p, {std::move(lhs), term()});
            else if (accept('-'))
                lhs = node(Expr::Kind::sub, p, {std::move(lhs), term()});
            else
                return lhs;
        }
    }

    Expr term()
    {
        Expr lhs = factor();
        for (;;) {
            skip();
            std::size_t p = i_;
            if (accept('*'))
                lhs = node(Expr::Kind::mul, p, {std::move(lhs), factor()});
            else if (accept('/'))
                lhs = node(Expr::Kind::div, p, {std::move(lhs), factor()});
            else
                return lhs;
        }
    }

    Expr factor()
    {
        Expr base = atom();
        skip();
        std::size_t p = i_;
        if (!accept('^'))
            return base;
        Expr e = node(Expr::Kind::pow, p, {std::move(base)});
        e.exponent = exponent();
        return e;
    }

    mpz_class digits()
    {
        skip();
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
            ++i_;
        if (start == i_)
            fail("expected an integer");
        return mpz_class(std::string(s_.substr(start, i_ - start)));
    }

    static long small_exponent(const mpz_class& z, std::size_t pos)
    {
        if (abs(z) > 100000)
            throw error(errc::non_integer_exponent, "at position " + std::to_string(pos) + ": exponent too large");
        return z.get_si();
    }

    // int, -int, or a parenthesized expression that is an integer constant.
    long exponent()
    {
        skip();
        std::size_t p = i_;
        if (accept('-'))
            return -small_exponent(digits(), p);
        if (accept('(')) {
            Expr inner = expr();
            if (!accept(')'))
                fail("expected ')'");
            XRat v = evaluate_inner(inner);
            if (!v.is_polynomial() || v.num().degree() > 0 || !v.num().coeff(0).is_constant() ||
                v.num().coeff(0).constant_value().get_den() != 1)
                throw error(errc::non_integer_exponent, "at position " + std::to_string(p) + ": exponent is not an integer");
            return small_exponent(v.num().coeff(0).constant_value().get_num(), p);
        }
        if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
            return small_exponent(digits(), p);
        if (i_ == s_.size() || std::string_view("+-*/^)").find(s_[i_]) != std::string_view::npos)
            fail("expected an exponent");
        throw error(errc::non_integer_exponent, "at position " + std::to_string(p) + ": exponent must be an integer literal");
    }

    Expr atom()
    {
        skip();
        std::size_t p = i_;
        if (i_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Expr e = node(Expr::Kind::integer, p);
            e.value = digits();
            return e;
        }
        if (c == 'q' || c == 'x') {
            ++i_;
            return node(c == 'q' ? Expr::Kind::sym_q : Expr::Kind::sym_x, p);
        }
        if (accept('(')) {
            Expr e = expr();
            if (!accept(')'))
                fail("expected ')'");
            return e;
        }
        if (accept('-'))
            return node(Expr::Kind::neg, p, {factor()});
        fail("unexpected '" + std::string(1, c) + "'");
    }

    static XRat evaluate_inner(const Expr& e);

    std::string_view s_;
    std::size_t i_ = 0;
};

inline XRat evaluate(const Expr& e)
{
    using K = Expr::Kind;
    switch (e.kind) {
    case K::integer: return XRat(QRat(Rat(e.value)));
    case K::sym_q: return XRat(QRat::q());
    case K::sym_x: return XRat(xvar());
    case K::neg: return -evaluate(e.args[0]);
    case K::add: return evaluate(e.args[0]) + evaluate(e.args[1]);
    case K::sub: return evaluate(e.args[0]) - evaluate(e.args[1]);
    case K::mul: return evaluate(e.args[0]) * evaluate(e.args[1]);
    case K::div: {
        XRat d = evaluate(e.args[1]);
        if (d.is_zero())
            throw error(errc::division_by_zero_expression, "at position " + std::to_string(e.pos) + ": divisor is zero");
        return evaluate(e.args[0]) / d;
    }
    case K::pow: {
        XRat b = evaluate(e.args[0]);
        long n = e.exponent;
        if (n < 0) {
            if (b.is_zero())
                throw error(errc::division_by_zero_expression, "at position " + std::to_string(e.pos) + ": zero to a negative power");
            b = b.inv();
            n = -n;
        }
        XRat acc(QRat(1));
        while (n > 0) {
            if (n & 1)
                acc = acc * b;
            n >>= 1;
            if (n > 0)
                b = b * b;
        }
        return acc;
    }
    }
    throw error(errc::internal, "bad expression node");
}

inline XRat ExprParser::evaluate_inner(const Expr& e) { return evaluate(e); }

} // namespace detail

inline Expr parse_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

inline XRat parse_xrat(std::string_view text) { return detail::evaluate(parse_expr(text)); }

inline XPoly parse_xpoly(std::string_view text)
{
    XRat v = parse_xrat(text);
    if (!v.is_polynomial())
        throw error(errc::syntax_error, "expected a polynomial in x: " + std::string(text));
    return v.num() * v.den().lc().inv();
}

inline QRat parse_qrat(std::string_view text)
{
    XPoly p = parse_xpoly(text);
    if (p.degree() > 0)
        throw error(errc::syntax_error, "expected an expression free of x: " + std::string(text));
    return p.coeff(0);
}

inline LPoly parse_lpoly(std::string_view text)
{
    XRat v = parse_xrat(text);
    auto [k, rest] = strip_x(v.den());
    if (rest.degree() != 0)
        throw error(errc::syntax_error, "expected a Laurent polynomial in x: " + std::string(text));
    return LPoly(v.num() * rest.lc().inv(), -k);
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

namespace detail {

inline std::string power_text(char sym, long k)
{
    if (k == 1)
        return std::string(1, sym);
    return std::string(1, sym) + "^" + std::to_string(k);
}

// Joins signed terms: "a - b + c".
inline std::string join_terms(const std::vector<std::pair<bool, std::string>>& terms)
{
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& [negative, body] = terms[i];
        if (i == 0)
            out += negative ? "-" + body : body;
        else
            out += (negative ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

// |c| * sym^k without the sign.
inline std::string scaled_power(const Rat& c, char sym, long k)
{
    Rat m = abs(c);
    if (k == 0)
        return m.get_str();
    if (m == 1)
        return power_text(sym, k);
    return m.get_str() + "*" + power_text(sym, k);
}

inline bool single_q_term(const QRat& c, Rat& coef, long& power)
{
    if (!c.is_polynomial())
        return false;
    const QPoly& p = c.num();
    int nz = 0;
    for (int i = 0; i <= p.degree(); ++i)
        if (sgn(p[i]) != 0) {
            ++nz;
            coef = p[i];
            power = i;
        }
    return nz == 1;
}

} // namespace detail

/// Ascending powers of q, e.g. "q - q^5".
inline std::string to_string(const QPoly& p)
{
    std::vector<std::pair<bool, std::string>> terms;
    for (int i = 0; i <= p.degree(); ++i)
        if (sgn(p[i]) != 0)
            terms.emplace_back(sgn(p[i]) < 0, detail::scaled_power(p[i], 'q', i));
    return detail::join_terms(terms);
}

/// "num" when polynomial, otherwise "(num)/(den)" with monic denominator.
inline std::string to_string(const QRat& c)
{
    if (c.is_polynomial())
        return to_string(c.num());
    std::string n = to_string(c.num());
    if (!(c.num().degree() == 0 && sgn(c.num()[0]) > 0))
        n = "(" + n + ")";
    Rat coef;
    long power = 0;
    std::string d = to_string(c.den());
    if (!(detail::single_q_term(QRat(c.den()), coef, power) && coef == 1))
        d = "(" + d + ")";
    return n + "/" + d;
}

namespace detail {

inline std::string xterms(const XPoly& p, long shift)
{
    std::vector<std::pair<bool, std::string>> terms;
    for (int i = 0; i <= p.degree(); ++i) {
        const QRat& c = p[i];
        if (c.is_zero())
            continue;
        long e = i + shift;
        Rat coef;
        long qp = 0;
        if (single_q_term(c, coef, qp)) {
            std::string body;
            const std::string mag = Rat(abs(coef)).get_str();
            if (qp == 0)
                body = e == 0 ? mag : (abs(coef) == 1 ? "" : mag + "*");
            else
                body = (abs(coef) == 1 ? "" : mag + "*") + power_text('q', qp) + (e == 0 ? "" : "*");
            if (e != 0)
                body += power_text('x', e);
            terms.emplace_back(sgn(coef) < 0, body);
        } else if (e == 0 && terms.empty()) {
            std::string s = to_string(c);
            terms.emplace_back(false, s);
        } else {
            std::string s = "(" + to_string(c) + ")";
            if (e != 0)
                s += "*" + power_text('x', e);
            terms.emplace_back(false, s);
        }
    }
    return join_terms(terms);
}

} // namespace detail

/// Ascending powers of x; single-term coefficients inline, others parenthesized.
inline std::string to_string(const XPoly& p) { return detail::xterms(p, 0); }

inline std::string to_string(const LPoly& p) { return detail::xterms(p.poly(), p.valuation()); }

/// num/den rescaled by the lcm of all q-denominators, so both sides have coefficients in Q[q].
inline std::pair<XPoly, XPoly> cleared(const XRat& r)
{
    QPoly l(Rat(1));
    for (const XPoly* p : {&r.num(), &r.den()})
        for (const auto& c : p->coeffs())
            l = *exact_quotient(l * c.den(), gcd(l, c.den()));
    QRat s(l);
    return {r.num() * s, r.den() * s};
}

inline std::string to_string(const XRat& r)
{
    if (r.is_polynomial())
        return to_string(r.num());
    auto [num, den] = cleared(r);
    std::string n = to_string(num);
    std::string d = to_string(den);
    bool plain = num.degree() == 0 && num[0].is_constant() && sgn(num[0].constant_value()) > 0;
    return (plain ? n : "(" + n + ")") + "/(" + d + ")";
}

inline std::ostream& operator<<(std::ostream& os, const QRat& v) { return os << to_string(v); }
inline std::ostream& operator<<(std::ostream& os, const XPoly& v) { return os << to_string(v); }
inline std::ostream& operator<<(std::ostream& os, const LPoly& v) { return os << to_string(v); }
inline std::ostream& operator<<(std::ostream& os, const XRat& v) { return os << to_string(v); }

} // namespace qred
