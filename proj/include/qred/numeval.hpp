#pragma once

#include <deque>
#include <vector>

#include "bigfloat.hpp"
#include "identity.hpp"

namespace qred {

/// Coefficients of f with q replaced by the rational q0.
inline Poly<Rat> specialize(const XPoly& f, const Rat& q0)
{
    std::vector<Rat> c;
    c.reserve(f.coeffs().size());
    for (const auto& coef : f.coeffs())
        c.push_back(coef.eval(q0));
    return Poly<Rat>(std::move(c));
}

struct PochResult {
    BigFloat value;
    BigFloat tail_estimate;
    long terms_used = 0;
};

/*
 * (base; ratio)_inf = prod_{i>=0} (1 - base*ratio^i). Factors are multiplied
 * until |base*ratio^n| < 2^-bits (or exactly `terms` factors when terms > 0).
 * tail_estimate bounds the omitted factors plus final rounding.
 */
inline PochResult poch_inf(const BigFloat& base, const BigFloat& ratio, long bits, long terms = 0)
{
    const BigFloat one(1L, bits);
    if (base.is_zero())
        return {one, BigFloat(bits), 0};
    if (ratio.abs() >= one)
        throw error(errc::domain_error, "q-Pochhammer ratio must satisfy |ratio| < 1");
    const long work = bits + 32;
    BigFloat value(1L, work);
    BigFloat z = base.rounded(work);
    const BigFloat eps = BigFloat::pow2(-bits, work);
    long n = 0;
    while (terms > 0 ? n < terms : z.abs() >= eps) {
        value *= BigFloat(1L, work) - z;
        z *= ratio;
        ++n;
    }
    BigFloat rounded = value.rounded(bits);
    const BigFloat r = ratio.abs();
    BigFloat tail = rounded.abs() * (BigFloat(2L, bits) * z.abs() / (one - r) + BigFloat::pow2(1 - bits, bits));
    return {rounded, tail, n};
}

struct EvalReport {
    BigFloat lhs;
    BigFloat rhs;
    BigFloat absdiff;
    long terms_used = 0;
    BigFloat tail_estimate;
};

namespace detail {

inline void check_q0(const Rat& q0)
{
    if (sgn(q0) <= 0 || q0 >= 1)
        throw error(errc::domain_error, "evaluation point must lie in (0, 1)");
}

inline bool near_pole(const Rat& v, long bits)
{
    Rat threshold(1);
    mpz_class den = 1;
    den <<= static_cast<mp_bitcnt_t>(bits > 8 ? bits - 8 : 0);
    threshold /= den;
    return abs(v) < threshold;
}

inline Rat rat_pow(const Rat& b, long e)
{
    Rat acc(1);
    for (long i = 0; i < e; ++i)
        acc *= b;
    return acc;
}

// Iterates t_k exactly at q = q0, calling visit(k, x_k, t_k) for k = 0..count-1.
template <class Visit>
void walk_terms(const TermSpec& term, const Rat& q0, long count, long bits, Visit&& visit)
{
    const Poly<Rat> a = specialize(term.pair.a, q0);
    const Poly<Rat> b = specialize(term.pair.b, q0);
    const Rat Q = rat_pow(q0, term.pair.step);
    Rat x(1);
    Rat t = term.t0.eval(q0);
    for (long k = 0; k < count; ++k) {
        visit(k, x, t);
        Rat bx = b.eval(x);
        if (near_pole(bx, bits))
            throw pole_at_index(k, "b(x) vanishes in the term recurrence");
        t *= a.eval(x);
        t /= bx;
        x *= Q;
    }
}

inline Rat eval_rational(const Poly<Rat>& num, const Poly<Rat>& den, const Rat& x, long k, long bits)
{
    Rat d = den.eval(x);
    if (near_pole(d, bits))
        throw pole_at_index(k, "denominator vanishes");
    return Rat(num.eval(x) / d);
}

} // namespace detail

inline BigFloat eval_poch_term(const PochTerm& term, const Rat& q0, long bits)
{
    BigFloat v(term.prefactor.eval(q0), bits);
    for (const auto& f : term.factors) {
        BigFloat base(f.base.eval(q0), bits);
        BigFloat ratio(detail::rat_pow(q0, f.modulus), bits);
        BigFloat p = poch_inf(base, ratio, bits).value;
        v *= p.pow(f.exponent);
    }
    return v;
}

inline BigFloat eval_rhs(const std::vector<PochTerm>& rhs, const Rat& q0, long bits)
{
    BigFloat sum(bits);
    for (const auto& t : rhs)
        sum += eval_poch_term(t, q0, bits);
    return sum;
}

/// Both sides at q = q0, the left side truncated to its first nterms summands.
inline EvalReport eval_series(const SeriesIdentity& id, const Rat& q0, long nterms, long bits)
{
    detail::check_q0(q0);
    const Poly<Rat> mnum = specialize(id.multiplier.num(), q0);
    const Poly<Rat> mden = specialize(id.multiplier.den(), q0);
    BigFloat lhs(bits);
    BigFloat last(bits), prev(bits);
    detail::walk_terms(id.term, q0, nterms, bits, [&](long k, const Rat& x, const Rat& t) {
        BigFloat u(Rat(detail::eval_rational(mnum, mden, x, k, bits) * t), bits);
        lhs += u;
        prev = last;
        last = u.abs();
    });
    BigFloat tail = last;
    if (!prev.is_zero() && last < prev) {
        BigFloat r = last / prev;
        tail = last * r / (BigFloat(1L, bits) - r);
    }
    BigFloat rhs = eval_rhs(id.rhs, q0, bits);
    return {lhs, rhs, (lhs - rhs).abs(), nterms, tail};
}

struct TelescopeReport {
    BigFloat residual;
    BigFloat last_term;  // |T_{N+1}|
};

/*
 * |sum_{k=0}^{N} (base_k - derived_k) - (T_{N+1} - T_0)| with
 * T_k = certificate(q0^(lk)) t_k, together with |T_{N+1}|.
 */
inline TelescopeReport check_telescoping(const Derivation& d, const Rat& q0, long N, long bits)
{
    detail::check_q0(q0);
    const TermSpec& term = d.base.term;
    const Poly<Rat> bn = specialize(d.base.multiplier.num(), q0), bd = specialize(d.base.multiplier.den(), q0);
    const Poly<Rat> on = specialize(d.output.multiplier.num(), q0), od = specialize(d.output.multiplier.den(), q0);
    const Poly<Rat> rn = specialize(d.certificate.num(), q0), rd = specialize(d.certificate.den(), q0);
    BigFloat sum(bits);
    BigFloat T0(bits), Tlast(bits);
    detail::walk_terms(term, q0, N + 2, bits, [&](long k, const Rat& x, const Rat& t) {
        if (k <= N) {
            Rat diff = detail::eval_rational(bn, bd, x, k, bits) - detail::eval_rational(on, od, x, k, bits);
            sum += BigFloat(Rat(diff * t), bits);
        }
        if (k == 0)
            T0 = BigFloat(Rat(detail::eval_rational(rn, rd, x, k, bits) * t), bits);
        if (k == N + 1)
            Tlast = BigFloat(Rat(detail::eval_rational(rn, rd, x, k, bits) * t), bits);
    });
    BigFloat residual = (sum - (Tlast - T0)).abs();
    return {residual, Tlast.abs()};
}

/// Rational function of the summation index k over Q.
struct IndexRational {
    Poly<Rat> num;
    Poly<Rat> den = Poly<Rat>(Rat(1));
};

enum class Acceleration {
    none,
    /// Repeated averaging of the trailing partial sums (Euler transform); for alternating tails.
    averaging,
};

/// sum_{k=0}^{N} multiplier(k) t_k with t_{k+1} = ratio(k) t_k, exact up to the final conversion.
inline BigFloat eval_classical(const IndexRational& ratio, const IndexRational& multiplier, const Rat& t0, long N, long bits,
                               Acceleration acc = Acceleration::none)
{
    constexpr std::size_t levels = 24;
    Rat t = t0;
    Rat partial(0);
    std::deque<Rat> tail_sums;
    for (long k = 0; k <= N; ++k) {
        const Rat kk(k);
        partial += detail::eval_rational(multiplier.num, multiplier.den, kk, k, bits) * t;
        tail_sums.push_back(partial);
        if (tail_sums.size() > levels + 1)
            tail_sums.pop_front();
        if (k < N)
            t *= detail::eval_rational(ratio.num, ratio.den, kk, k, bits);
    }
    if (acc == Acceleration::averaging) {
        std::vector<Rat> s(tail_sums.begin(), tail_sums.end());
        while (s.size() > 1) {
            for (std::size_t i = 0; i + 1 < s.size(); ++i)
                s[i] = (s[i] + s[i + 1]) / 2;
            s.pop_back();
        }
        return BigFloat(s.front(), bits);
    }
    return BigFloat(partial, bits);
}

} // namespace qred
