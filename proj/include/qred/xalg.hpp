#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qrat.hpp"

namespace qred {

/// Polynomials in x over Q(q). In the summation setting x stands for q^(step*k).
using XPoly = Poly<QRat>;

inline XPoly xconst(const QRat& c) { return XPoly(c); }
inline XPoly xvar() { return XPoly::variable(); }

class XRat;

/// Laurent polynomial x^valuation * poly, with poly(0) != 0 unless zero.
class LPoly {
public:
    LPoly() = default;

    LPoly(XPoly poly, int valuation = 0) : p_(std::move(poly)), v_(valuation) { normalize(); }

    static LPoly monomial(QRat c, int exponent) { return LPoly(XPoly(std::move(c)), exponent); }

    const XPoly& poly() const noexcept { return p_; }
    int valuation() const noexcept { return v_; }
    bool is_zero() const noexcept { return p_.is_zero(); }
    /// Highest exponent present.
    int degree() const noexcept { return v_ + p_.degree(); }

    QRat coeff(int e) const { return p_.coeff(e - v_); }

    /// The ordinary polynomial, when valuation >= 0.
    bool is_polynomial() const noexcept { return is_zero() || v_ >= 0; }
    XPoly to_xpoly() const
    {
        if (!is_polynomial())
            throw error(errc::domain_error, "Laurent polynomial has negative powers");
        return p_.shift_up(v_);
    }

    LPoly operator-() const { return LPoly(-p_, v_); }

    friend LPoly operator+(const LPoly& a, const LPoly& b)
    {
        if (a.is_zero())
            return b;
        if (b.is_zero())
            return a;
        int v = std::min(a.v_, b.v_);
        return LPoly(a.p_.shift_up(a.v_ - v) + b.p_.shift_up(b.v_ - v), v);
    }
    friend LPoly operator-(const LPoly& a, const LPoly& b) { return a + (-b); }
    friend LPoly operator*(const LPoly& a, const LPoly& b) { return LPoly(a.p_ * b.p_, a.v_ + b.v_); }
    friend LPoly operator*(const LPoly& a, const QRat& s) { return LPoly(a.p_ * s, a.v_); }

    friend bool operator==(const LPoly& a, const LPoly& b) { return a.p_ == b.p_ && a.v_ == b.v_; }
    friend bool operator!=(const LPoly& a, const LPoly& b) { return !(a == b); }

private:
    void normalize()
    {
        if (p_.is_zero()) {
            v_ = 0;
            return;
        }
        int o = p_.order();
        if (o > 0) {
            p_ = p_.shift_down(o);
            v_ += o;
        }
    }

    XPoly p_;
    int v_ = 0;
};

inline XPoly xgcd(const XPoly& f, const XPoly& g);

/*
 * Rational function num/den in x over Q(q): gcd(num, den) = 1 and den is
 * monic in x, so equality is structural.
 */
class XRat {
public:
    XRat() : den_(QRat(1)) {}
    XRat(const QRat& c) : num_(c), den_(QRat(1)) {}
    XRat(XPoly num) : num_(std::move(num)), den_(QRat(1)) {}
    XRat(const LPoly& l)
    {
        if (l.valuation() >= 0) {
            num_ = l.to_xpoly();
            den_ = XPoly(QRat(1));
        } else {
            num_ = l.poly();
            den_ = XPoly::monomial(QRat(1), -l.valuation());
        }
    }

    XRat(XPoly num, XPoly den) : num_(std::move(num)), den_(std::move(den))
    {
        if (den_.is_zero())
            throw error(errc::division_by_zero, "zero denominator in Q(q)(x)");
        normalize();
    }

    const XPoly& num() const noexcept { return num_; }
    const XPoly& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const noexcept { return den_.degree() == 0; }

    XRat inv() const
    {
        if (is_zero())
            throw error(errc::division_by_zero, "inverse of zero rational function");
        return XRat(den_, num_);
    }

    XRat operator-() const
    {
        XRat r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend XRat operator+(const XRat& a, const XRat& b)
    {
        if (a.is_polynomial() && b.is_polynomial())
            return XRat(a.num_ + b.num_);
        return XRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend XRat operator-(const XRat& a, const XRat& b) { return a + (-b); }
    friend XRat operator*(const XRat& a, const XRat& b)
    {
        if (a.is_polynomial() && b.is_polynomial())
            return XRat(a.num_ * b.num_);
        return XRat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend XRat operator/(const XRat& a, const XRat& b) { return a * b.inv(); }

    friend bool operator==(const XRat& a, const XRat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const XRat& a, const XRat& b) { return !(a == b); }

private:
    void normalize()
    {
        if (num_.is_zero()) {
            den_ = XPoly(QRat(1));
            return;
        }
        if (den_.degree() > 0) {
            XPoly g = xgcd(num_, den_);
            if (g.degree() > 0) {
                num_ = divmod(num_, g).first;
                den_ = divmod(den_, g).first;
            }
        }
        if (den_.lc() != QRat(1)) {
            QRat s = den_.lc().inv();
            num_ *= s;
            den_ *= s;
        }
    }

    XPoly num_;
    XPoly den_;
};

/// f(q^(step*n) x): coefficient i is multiplied by q^(step*n*i).
inline XPoly xshift(const XPoly& f, int n, int step = 1)
{
    if (n == 0 || f.is_zero())
        return f;
    std::vector<QRat> c(f.coeffs());
    for (std::size_t i = 1; i < c.size(); ++i)
        c[i] = c[i].times_q_power(step * n * static_cast<int>(i));
    return XPoly(std::move(c));
}

inline LPoly xshift(const LPoly& f, int n, int step = 1)
{
    if (f.is_zero())
        return f;
    QRat s = QRat::q_power(step * n * f.valuation());
    return LPoly(xshift(f.poly(), n, step) * s, f.valuation());
}

inline XRat xshift(const XRat& f, int n, int step = 1)
{
    return XRat(xshift(f.num(), n, step), xshift(f.den(), n, step));
}

namespace detail {

using QQPoly = std::vector<QPoly>;  // coefficients in Q[q], ascending x powers

inline QQPoly clear_denominators(const XPoly& f)
{
    QPoly l(Rat(1));
    for (int i = 0; i <= f.degree(); ++i)
        if (!f[i].is_zero())
            l = divmod(l * f[i].den(), gcd(l, f[i].den())).first;
    QQPoly out(static_cast<std::size_t>(f.degree() + 1));
    for (int i = 0; i <= f.degree(); ++i)
        if (!f[i].is_zero())
            out[static_cast<std::size_t>(i)] = f[i].num() * divmod(l, f[i].den()).first;
    return out;
}

inline void trim(QQPoly& f)
{
    while (!f.empty() && f.back().is_zero())
        f.pop_back();
}

// Pseudo-remainder lc(g)^(deg f - deg g + 1) f mod g in Q[q][x].
inline QQPoly pseudo_remainder(QQPoly f, const QQPoly& g)
{
    const QPoly& lg = g.back();
    if (f.size() < g.size())
        return f;
    for (std::size_t top = f.size(); top >= g.size(); --top) {
        const QPoly lf = f[top - 1];
        const std::size_t shift = top - g.size();
        for (QPoly& c : f)
            if (!c.is_zero())
                c = c * lg;
        if (!lf.is_zero())
            for (std::size_t i = 0; i < g.size(); ++i)
                f[shift + i] = f[shift + i] - lf * g[i];
    }
    trim(f);
    return f;
}

inline QPoly exact_div(const QPoly& f, const QPoly& g) { return divmod(f, g).first; }

inline QPoly power(const QPoly& f, std::size_t e)
{
    QPoly r(Rat(1));
    for (std::size_t i = 0; i < e; ++i)
        r = r * f;
    return r;
}

// Image of Q(q)[x] in F_p[x] under q -> q0, p = 2^61 - 1; nothing if a denominator or lc(f) vanishes.
constexpr std::uint64_t gcd_prime = 2305843009213693951ULL;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % gcd_prime);
}

inline std::uint64_t invmod(std::uint64_t a)
{
    std::uint64_t r = 1, e = gcd_prime - 2;
    for (; e; e >>= 1, a = mulmod(a, a))
        if (e & 1)
            r = mulmod(r, a);
    return r;
}

inline std::optional<std::uint64_t> rat_mod(const Rat& r)
{
    std::uint64_t d = mpz_fdiv_ui(r.get_den_mpz_t(), gcd_prime);
    if (d == 0)
        return std::nullopt;
    return mulmod(mpz_fdiv_ui(r.get_num_mpz_t(), gcd_prime), invmod(d));
}

inline std::optional<std::uint64_t> qpoly_mod(const QPoly& f, std::uint64_t q0)
{
    std::uint64_t acc = 0;
    for (int i = f.degree(); i >= 0; --i) {
        auto c = rat_mod(f[i]);
        if (!c)
            return std::nullopt;
        acc = (mulmod(acc, q0) + *c) % gcd_prime;
    }
    return acc;
}

inline std::optional<std::vector<std::uint64_t>> xpoly_mod(const XPoly& f, std::uint64_t q0)
{
    std::vector<std::uint64_t> out(static_cast<std::size_t>(f.degree() + 1));
    for (int i = 0; i <= f.degree(); ++i) {
        if (f[i].is_zero())
            continue;
        auto n = qpoly_mod(f[i].num(), q0), d = qpoly_mod(f[i].den(), q0);
        if (!n || !d || *d == 0)
            return std::nullopt;
        out[static_cast<std::size_t>(i)] = mulmod(*n, invmod(*d));
    }
    if (out.empty() || out.back() == 0)
        return std::nullopt;
    return out;
}

inline int gcd_degree_mod(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b)
{
    auto trim_mod = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0)
            v.pop_back();
    };
    trim_mod(a);
    trim_mod(b);
    while (!b.empty()) {
        if (a.size() < b.size())
            std::swap(a, b);
        const std::uint64_t inv = invmod(b.back());
        while (a.size() >= b.size()) {
            const std::uint64_t f = mulmod(a.back(), inv);
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = (a[shift + i] + gcd_prime - mulmod(f, b[i])) % gcd_prime;
            trim_mod(a);
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

} // namespace detail

/// Monic gcd over Q(q), computed by the subresultant remainder sequence in Q[q][x].
inline XPoly xgcd(const XPoly& f, const XPoly& g)
{
    if (f.is_zero() && g.is_zero())
        throw error(errc::both_zero, "xgcd of two zero polynomials");
    if (f.is_zero() || g.is_zero())
        return (f.is_zero() ? g : f).monic();
    // A specialization with surviving leading coefficients can only raise the gcd degree.
    for (std::uint64_t q0 : {1000003ULL, 7919ULL}) {
        auto fm = detail::xpoly_mod(f, q0), gm = detail::xpoly_mod(g, q0);
        if (!fm || !gm)
            continue;
        const int d = detail::gcd_degree_mod(std::move(*fm), std::move(*gm));
        if (d == 0)
            return XPoly(QRat(1));
        const XPoly& lo = f.degree() <= g.degree() ? f : g;
        const XPoly& hi = f.degree() <= g.degree() ? g : f;
        if (d == lo.degree() && divmod(hi, lo).second.is_zero())
            return lo.monic();
        break;
    }
    detail::QQPoly a = detail::clear_denominators(f), b = detail::clear_denominators(g);
    if (a.size() < b.size())
        std::swap(a, b);
    QPoly lead(Rat(1)), h(Rat(1));
    while (b.size() > 1) {
        const std::size_t delta = a.size() - b.size();
        detail::QQPoly r = detail::pseudo_remainder(std::move(a), b);
        a = std::move(b);
        b.clear();
        if (r.empty())
            break;
        const QPoly divisor = lead * detail::power(h, delta);
        for (QPoly& c : r)
            if (!c.is_zero())
                c = detail::exact_div(c, divisor);
        b = std::move(r);
        lead = a.back();
        h = delta == 0 ? h : detail::exact_div(detail::power(lead, delta), detail::power(h, delta - 1));
    }
    if (b.size() == 1)
        return XPoly(QRat(1));
    std::vector<QRat> c;
    c.reserve(a.size());
    for (QPoly& v : a)
        c.emplace_back(std::move(v));
    return XPoly(std::move(c)).monic();
}

inline std::pair<XPoly, XPoly> xdivmod(const XPoly& f, const XPoly& g)
{
    if (g.is_zero())
        throw error(errc::divisor_zero, "xdivmod by zero polynomial");
    return divmod(f, g);
}

/// Exact quotient f/g; NotAFactor if g does not divide f.
inline XPoly xdiv_exact(const XPoly& f, const XPoly& g)
{
    auto [quot, rem] = xdivmod(f, g);
    if (!rem.is_zero())
        throw error(errc::not_a_factor, "polynomial is not a factor");
    return quot;
}

/// Splits f = x^k * rest with rest(0) != 0.
inline std::pair<int, XPoly> strip_x(const XPoly& f)
{
    int k = f.order();
    if (k <= 0)
        return {0, f};
    return {k, f.shift_down(k)};
}

namespace detail {

// Determinant over the integral domain Q(q)[y] by fraction-free (Bareiss) elimination.
inline XPoly bareiss_det(std::vector<std::vector<XPoly>> m)
{
    const std::size_t n = m.size();
    if (n == 0)
        return XPoly(QRat(1));
    XPoly prev(QRat(1));
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero())
                ++p;
            if (p == n)
                return XPoly{};
            std::swap(m[k], m[p]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                XPoly t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = divmod(t, prev).first;
            }
            m[i][k] = XPoly{};
        }
        prev = m[k][k];
    }
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

} // namespace detail

/*
 * Res_x(f(x), g(y x)) as a polynomial in the auxiliary variable y (returned
 * as an XPoly whose variable is read as y). It vanishes at y = q^h exactly
 * when f(x) and g(q^h x) share a root.
 */
inline XPoly xresultant(const XPoly& f, const XPoly& g)
{
    if (f.is_zero() || g.is_zero())
        throw error(errc::zero_input, "xresultant of zero polynomial");
    const int m = f.degree();
    const int n = g.degree();
    std::vector<XPoly> gy(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        gy[static_cast<std::size_t>(i)] = XPoly::monomial(g[i], i);
    if (m == 0)
        return pow(XPoly(f[0]), static_cast<unsigned>(n));
    if (n == 0)
        return pow(gy[0], static_cast<unsigned>(m));
    const std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<XPoly>> syl(size, std::vector<XPoly>(size));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i)
            syl[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] = XPoly(f[m - i]);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i)
            syl[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + i)] = gy[static_cast<std::size_t>(n - i)];
    return detail::bareiss_det(std::move(syl));
}

/// f(q^(step*j)) as an element of Q(q).
inline QRat eval_at_qpower(const XPoly& f, int j, int step = 1)
{
    QRat acc;
    for (int i = 0; i <= f.degree(); ++i)
        if (!f[i].is_zero())
            acc += f[i].times_q_power(step * j * i);
    return acc;
}

inline QRat eval_at_qpower(const XRat& f, int j, int step = 1)
{
    QRat d = eval_at_qpower(f.den(), j, step);
    if (d.is_zero())
        throw error(errc::pole_at_point, "denominator vanishes at x = q^" + std::to_string(step * j));
    return eval_at_qpower(f.num(), j, step) / d;
}

/// Smallest q-valuation over all nonzero coefficients.
inline int min_q_valuation(const XPoly& f)
{
    int best = 0;
    bool first = true;
    for (const auto& c : f.coeffs()) {
        if (c.is_zero())
            continue;
        int v = q_valuation(c);
        if (first || v < best)
            best = v;
        first = false;
    }
    return best;
}

} // namespace qred
