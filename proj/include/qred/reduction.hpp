#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "xalg.hpp"

namespace qred {

/*
 * Shift quotient t_{k+1}/t_k = a(x)/b(x) at x = q^(step*k).
 */
struct QuotientPair {
    XPoly a;
    XPoly b;
    int step = 1;

    QuotientPair(XPoly a_, XPoly b_, int step_ = 1) : a(std::move(a_)), b(std::move(b_)), step(step_)
    {
        if (a.is_zero() || b.is_zero())
            throw error(errc::zero_polynomial, "quotient pair needs a*b != 0");
        if (step < 1)
            throw error(errc::domain_error, "step must be positive");
    }

    /// q^step, the multiplicative shift of x per summation index.
    QRat shift_factor() const { return QRat::q_power(step); }

    friend bool operator==(const QuotientPair&, const QuotientPair&) = default;
};

struct Degeneracy {
    std::optional<int> m0;

    bool degenerate() const noexcept { return m0.has_value(); }
};

/// Chosen factors a1 | a, b1 | b and their shift orders.
struct ShiftPairSpec {
    XPoly a1 = XPoly(QRat(1));
    XPoly b1 = XPoly(QRat(1));
    int n1 = 0;
    int n2 = 0;

    friend bool operator==(const ShiftPairSpec&, const ShiftPairSpec&) = default;
};

/*
 * Result of reducing p against a pair: p*D = sum coeffs[i]*p_i + remainder,
 * where p_i are the difference-space basis polynomials and D is
 * `denominator` (1 for plain polynomial reduction). The certificate rho
 * satisfies p - remainder/D = rho(q^l x) a/b - rho.
 */
struct ReductionOutput {
    std::map<int, QRat> coeffs;
    XPoly remainder;
    XPoly generator;
    std::set<int> residual_set;
    XRat certificate;
    XPoly denominator = XPoly(QRat(1));

    XRat reduced_multiplier() const { return XRat(remainder, denominator); }
};

struct RationalReduction {
    QuotientPair shifted;
    ReductionOutput out;
};

/// Number of reductions whose exactness identity has been checked in this process.
inline std::atomic<long> reduction_checks{0};

inline int degree_bound(const QuotientPair& pair) { return std::max(pair.a.degree(), pair.b.degree()); }

/// m with lc b(q^-l x) / lc a = q^(l*m), any integer m, when deg a = deg b.
inline std::optional<int> leading_shift_exponent(const XPoly& a, const XPoly& b, int step)
{
    if (a.degree() != b.degree())
        return std::nullopt;
    QRat ratio = b.lc().times_q_power(-step * b.degree()) / a.lc();
    auto m = power_of_q(ratio);
    if (!m || *m % step != 0)
        return std::nullopt;
    return *m / step;
}

inline Degeneracy is_degenerate(const QuotientPair& pair)
{
    auto m = leading_shift_exponent(pair.a, pair.b, pair.step);
    if (m && *m >= 0)
        return {m};
    return {};
}

inline std::set<int> residual_exponents(const QuotientPair& pair)
{
    const int d = degree_bound(pair);
    std::set<int> r;
    for (int i = 0; i < d; ++i)
        r.insert(i);
    if (auto deg = is_degenerate(pair); deg.degenerate())
        r.insert(d + *deg.m0);
    return r;
}

/// a(x) g(q^l x) - b(q^-l x) g(x).
inline XPoly difference_image(const QuotientPair& pair, const XPoly& g)
{
    return pair.a * xshift(g, 1, pair.step) - xshift(pair.b, -1, pair.step) * g;
}

inline XPoly basis_poly(const QuotientPair& pair, int i, const XPoly& g)
{
    if (g.degree() != i)
        throw error(errc::degree_mismatch, "generator degree differs from basis index");
    return difference_image(pair, g);
}

inline XPoly basis_poly(const QuotientPair& pair, int i) { return difference_image(pair, XPoly::monomial(QRat(1), i)); }

/// Generator of degree i used for the i-th basis polynomial.
using GeneratorFn = std::function<XPoly(int)>;

inline XPoly monomial_generator(int i) { return XPoly::monomial(QRat(1), i); }

/// p - remainder = difference_image(generator); the defining identity of a reduction.
inline bool reduction_is_exact(const QuotientPair& pair, const XPoly& p, const ReductionOutput& out)
{
    return p - out.remainder == difference_image(pair, out.generator);
}

inline ReductionOutput reduce_poly(const QuotientPair& pair, const XPoly& p, const GeneratorFn& generator = monomial_generator)
{
    const int d = degree_bound(pair);
    const Degeneracy deg = is_degenerate(pair);
    ReductionOutput out;
    out.residual_set = residual_exponents(pair);

    XPoly rest = p;
    XPoly extracted;
    for (int j = p.degree(); j >= d; --j) {
        QRat c = rest.coeff(j);
        if (c.is_zero())
            continue;
        if (deg.degenerate() && j == d + *deg.m0) {
            XPoly term = XPoly::monomial(c, j);
            rest -= term;
            extracted += term;
            continue;
        }
        const int i = j - d;
        XPoly g = generator(i);
        XPoly pi = basis_poly(pair, i, g);
        if (pi.degree() != j)
            throw error(errc::internal, "basis polynomial has unexpected degree");
        QRat ci = c / pi.lc();
        rest -= pi * ci;
        out.generator += g * ci;
        out.coeffs[i] = ci;
    }
    out.remainder = rest + extracted;
    out.certificate = XRat(xshift(pair.b, -1, pair.step) * out.generator);

    if (!reduction_is_exact(pair, p, out))
        throw error(errc::internal, "reduction identity violated");
    ++reduction_checks;
    return out;
}

struct SummableMultiplier {
    XPoly r;
    XRat certificate;
};

/// A nonzero r of degree <= d+1 with r(q^(lk)) t_k summable: p_0 when nonzero, else p_1.
inline SummableMultiplier summable_multiplier(const QuotientPair& pair)
{
    for (int i = 0; i <= 1; ++i) {
        XPoly g = monomial_generator(i);
        XPoly r = difference_image(pair, g);
        if (!r.is_zero())
            return {r, XRat(xshift(pair.b, -1, pair.step) * g)};
    }
    throw error(errc::internal, "p_0 and p_1 both vanish");
}

/*
 * Shift product of order n:
 *   n > 0: f(x) f(Qx) ... f(Q^(n-1) x)
 *   n = 0: 1
 *   n < 0: f(Q^n x) ... f(Q^-1 x)
 * with Q = q^step.
 */
inline XPoly shift_product(const XPoly& f, int n, int step = 1)
{
    XPoly acc(QRat(1));
    if (n > 0) {
        for (int i = 0; i < n; ++i)
            acc = acc * xshift(f, i, step);
    } else {
        for (int i = n; i < 0; ++i)
            acc = acc * xshift(f, i, step);
    }
    return acc;
}

/// The (a1, b1) shift pair of order (n1, n2); A and B share one q-power scaling that clears negative q-exponents.
inline QuotientPair shift_pair(const QuotientPair& pair, const ShiftPairSpec& spec)
{
    if (spec.n1 < 0 || spec.n2 < 0)
        throw error(errc::domain_error, "shift orders must be nonnegative");
    XPoly a_rest = xdiv_exact(pair.a, spec.a1);
    XPoly b_rest = xdiv_exact(pair.b, spec.b1);
    XPoly A = a_rest * xshift(spec.a1, -spec.n1, pair.step);
    XPoly B = b_rest * xshift(spec.b1, spec.n2, pair.step);
    int m = std::min(min_q_valuation(A), min_q_valuation(B));
    if (m < 0) {
        QRat s = QRat::q_power(-m);
        A *= s;
        B *= s;
    }
    return QuotientPair(std::move(A), std::move(B), pair.step);
}

/// The denominator SP_{-n1}(a1) * SP_{n2}(b1) carried by the reduced multiplier.
inline XPoly shift_denominator(const ShiftPairSpec& spec, int step)
{
    return shift_product(spec.a1, -spec.n1, step) * shift_product(spec.b1, spec.n2, step);
}

/// True iff rho(q^l x) a(x)/b(x) - rho(x) = r, checked by cross-multiplication.
inline bool telescopes(const QuotientPair& pair, const XRat& r, const XRat& rho)
{
    const XPoly n_up = xshift(rho.num(), 1, pair.step);
    const XPoly d_up = xshift(rho.den(), 1, pair.step);
    const XPoly lhs_num = n_up * pair.a * rho.den() - rho.num() * d_up * pair.b;
    const XPoly lhs_den = d_up * pair.b * rho.den();
    return lhs_num * r.den() == r.num() * lhs_den;
}

inline RationalReduction rational_reduce(const QuotientPair& pair, const ShiftPairSpec& spec, const XPoly& p)
{
    if (p.is_zero())
        throw error(errc::zero_polynomial, "rational_reduce needs p != 0");
    QuotientPair shifted = shift_pair(pair, spec);
    XPoly D = shift_denominator(spec, pair.step);
    ReductionOutput out = reduce_poly(shifted, p * D);
    out.denominator = D;
    out.certificate = XRat(xshift(shifted.b, -1, pair.step) * out.generator, D);
    if (!telescopes(pair, XRat(p) - out.reduced_multiplier(), out.certificate))
        throw error(errc::internal, "rational reduction identity violated");
    return {std::move(shifted), std::move(out)};
}

} // namespace qred
