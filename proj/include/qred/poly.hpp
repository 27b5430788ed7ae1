#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "error.hpp"

namespace qred {

/// Exact rationals. mpq_class keeps gcd(num, den) = 1 and den > 0 after every operation.
using Rat = mpq_class;

namespace detail {

inline bool coeff_is_zero(const mpq_class& c) { return sgn(c) == 0; }

template <class F>
bool coeff_is_zero(const F& c)
{
    return c.is_zero();
}

} // namespace detail

/*
 * Dense univariate polynomial over a field F; c_[i] is the coefficient of
 * the i-th power. The coefficient vector never carries trailing zeros, so
 * the zero polynomial is the empty vector and structural equality is
 * mathematical equality (given canonical F).
 */
template <class F>
class Poly {
public:
    using coeff_type = F;

    Poly() = default;

    explicit Poly(F c)
    {
        if (!detail::coeff_is_zero(c))
            c_.push_back(std::move(c));
    }

    explicit Poly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(F c, int k)
    {
        if (detail::coeff_is_zero(c))
            return Poly{};
        std::vector<F> v(static_cast<std::size_t>(k) + 1);
        v[static_cast<std::size_t>(k)] = std::move(c);
        return Poly(std::move(v));
    }

    static Poly variable() { return monomial(F(1), 1); }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<F>& coeffs() const noexcept { return c_; }

    const F& lc() const { return c_.back(); }
    const F& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

    F coeff(int i) const
    {
        if (i < 0 || i > degree())
            return F{};
        return c_[static_cast<std::size_t>(i)];
    }

    /// Lowest power with nonzero coefficient; -1 for the zero polynomial.
    int order() const noexcept
    {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!detail::coeff_is_zero(c_[i]))
                return static_cast<int>(i);
        return -1;
    }

    bool is_constant() const noexcept { return c_.size() <= 1; }

    Poly monic() const
    {
        if (is_zero())
            return *this;
        F inv = F(1) / lc();
        return *this * inv;
    }

    /// Multiply by var^k.
    Poly shift_up(int k) const
    {
        if (is_zero() || k == 0)
            return *this;
        std::vector<F> v(static_cast<std::size_t>(k), F{});
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(std::move(v));
    }

    /// Divide by var^k; requires order() >= k.
    Poly shift_down(int k) const
    {
        if (is_zero() || k == 0)
            return *this;
        return Poly(std::vector<F>(c_.begin() + k, c_.end()));
    }

    F eval(const F& at) const
    {
        F acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc *= at;
            acc += *it;
        }
        return acc;
    }

    Poly operator-() const
    {
        Poly r = *this;
        for (auto& c : r.c_)
            c = -c;
        return r;
    }

    Poly& operator+=(const Poly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] += o.c_[i];
        trim();
        return *this;
    }

    Poly& operator-=(const Poly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] -= o.c_[i];
        trim();
        return *this;
    }

    Poly& operator*=(const F& s)
    {
        if (detail::coeff_is_zero(s)) {
            c_.clear();
            return *this;
        }
        for (auto& c : c_)
            c *= s;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const F& s) { return a *= s; }
    friend Poly operator*(const F& s, Poly a) { return a *= s; }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero())
            return Poly{};
        std::vector<F> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (detail::coeff_is_zero(a.c_[i]))
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                v[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(v));
    }

    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    void trim()
    {
        while (!c_.empty() && detail::coeff_is_zero(c_.back()))
            c_.pop_back();
    }

    std::vector<F> c_;
};

/// Euclidean division f = quot*g + rem with deg rem < deg g.
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& f, const Poly<F>& g)
{
    if (g.is_zero())
        throw error(errc::divisor_zero, "polynomial division by zero");
    if (f.degree() < g.degree())
        return {Poly<F>{}, f};
    std::vector<F> rem = f.coeffs();
    std::vector<F> quot(static_cast<std::size_t>(f.degree() - g.degree()) + 1);
    const F inv_lc = F(1) / g.lc();
    const int dg = g.degree();
    for (int k = f.degree(); k >= dg; --k) {
        const F& top = rem[static_cast<std::size_t>(k)];
        if (detail::coeff_is_zero(top))
            continue;
        F c = top * inv_lc;
        const int shift = k - dg;
        for (int j = 0; j <= dg; ++j)
            rem[static_cast<std::size_t>(shift + j)] -= c * g[j];
        quot[static_cast<std::size_t>(shift)] = std::move(c);
    }
    rem.resize(static_cast<std::size_t>(dg));
    return {Poly<F>(std::move(quot)), Poly<F>(std::move(rem))};
}

/// Quotient f/g when g divides f exactly, otherwise nullopt.
template <class F>
std::optional<Poly<F>> exact_quotient(const Poly<F>& f, const Poly<F>& g)
{
    auto [quot, rem] = divmod(f, g);
    if (!rem.is_zero())
        return std::nullopt;
    return quot;
}

template <class F>
bool divides(const Poly<F>& g, const Poly<F>& f)
{
    return divmod(f, g).second.is_zero();
}

/// Monic gcd by Euclidean remainders; gcd(0, 0) is the zero polynomial.
template <class F>
Poly<F> gcd(Poly<F> f, Poly<F> g)
{
    while (!g.is_zero()) {
        Poly<F> r = divmod(f, g).second;
        f = std::move(g);
        g = r.monic();
    }
    return f.monic();
}

template <class F>
Poly<F> pow(Poly<F> base, unsigned e)
{
    Poly<F> acc(F(1));
    while (e) {
        if (e & 1u)
            acc = acc * base;
        e >>= 1u;
        if (e)
            base = base * base;
    }
    return acc;
}

} // namespace qred
