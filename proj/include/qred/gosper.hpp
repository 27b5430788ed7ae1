#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "reduction.hpp"

namespace qred {

/// t_{k+1}/t_k = a(x)/b(x) * c(Qx)/c(x) with gcd(a(x), b(Q^h x)) = 1 for all h >= 0, Q = q^step.
struct GosperRep {
    XPoly a;
    XPoly b;
    XPoly c;
    int step = 1;
};

struct SolveResult {
    std::optional<LPoly> solution;
};

namespace detail {

/*
 * q-adic valuations of the nonzero roots of f over the algebraic closure of
 * Q(q), from the lower convex hull of the points (i, ord_q f_i). A root
 * valuation is the negated slope of a hull segment; valuations may be
 * fractional.
 */
inline std::set<Rat> root_valuations(const XPoly& f)
{
    std::vector<std::pair<int, int>> pts;
    for (int i = 0; i <= f.degree(); ++i)
        if (!f[i].is_zero())
            pts.emplace_back(i, q_valuation(f[i]));
    std::vector<std::pair<int, int>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& o = hull[hull.size() - 2];
            const auto& m = hull.back();
            long cross = long(m.first - o.first) * (p.second - o.second) - long(m.second - o.second) * (p.first - o.first);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    std::set<Rat> out;
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        Rat slope(hull[i + 1].second - hull[i].second, hull[i + 1].first - hull[i].first);
        slope.canonicalize();
        out.insert(Rat(-slope));
    }
    return out;
}

} // namespace detail

/*
 * All h >= 0 with gcd(a(x), b(Q^h x)) != 1. A common root alpha of a and of
 * b(Q^h x) forces v(Q^h alpha) = v(alpha) + step*h between root valuations,
 * which yields a finite candidate list; each candidate is confirmed by a
 * direct gcd.
 */
inline std::vector<int> dispersion_set(const XPoly& a, const XPoly& b, int step = 1)
{
    if (a.is_zero() || b.is_zero())
        throw error(errc::zero_input, "dispersion_set of zero polynomial");
    auto [ka, ra] = strip_x(a);
    auto [kb, rb] = strip_x(b);
    if (ka > 0 && kb > 0)
        throw error(errc::infinite_dispersion, "both polynomials vanish at x = 0");
    std::set<int> candidates;
    for (const Rat& va : detail::root_valuations(ra))
        for (const Rat& vb : detail::root_valuations(rb)) {
            Rat diff = vb - va;
            if (diff.get_den() != 1 || sgn(diff) < 0)
                continue;
            long h = diff.get_num().get_si();
            if (h % step == 0)
                candidates.insert(static_cast<int>(h / step));
        }
    std::vector<int> out;
    for (int h : candidates)
        if (xgcd(ra, xshift(rb, h, step)).degree() > 0)
            out.push_back(h);
    return out;
}

/// Gosper normalization of a/b * c(Qx)/c(x); the ratio is preserved exactly.
inline GosperRep gosper_representation(XPoly a, XPoly b, int step = 1, XPoly c = XPoly(QRat(1)))
{
    if (a.is_zero() || b.is_zero())
        throw error(errc::zero_input, "gosper_representation needs a*b != 0");
    const int common = std::min(a.order(), b.order());
    a = a.shift_down(common);
    b = b.shift_down(common);
    for (;;) {
        auto disp = dispersion_set(a, b, step);
        if (disp.empty())
            break;
        const int h = disp.back();
        XPoly s = xgcd(a, xshift(b, h, step));
        a = xdiv_exact(a, s);
        b = xdiv_exact(b, xshift(s, -h, step));
        for (int i = 1; i <= h; ++i)
            c = c * xshift(s, -i, step);
    }
    return {std::move(a), std::move(b), std::move(c), step};
}

namespace detail {

// Row reduction over Q(q); returns one solution (free unknowns set to zero) or nothing if inconsistent.
inline std::optional<std::vector<QRat>> solve_linear(std::vector<std::vector<QRat>> m, std::vector<QRat> rhs, std::size_t unknowns)
{
    const std::size_t rows = m.size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < unknowns && r < rows; ++col) {
        std::size_t p = r;
        while (p < rows && m[p][col].is_zero())
            ++p;
        if (p == rows)
            continue;
        std::swap(m[p], m[r]);
        std::swap(rhs[p], rhs[r]);
        QRat inv = m[r][col].inv();
        for (std::size_t j = col; j < unknowns; ++j)
            m[r][j] *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][col].is_zero())
                continue;
            QRat f = m[i][col];
            for (std::size_t j = col; j < unknowns; ++j)
                if (!m[r][j].is_zero())
                    m[i][j] -= f * m[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!rhs[i].is_zero())
            return std::nullopt;
    std::vector<QRat> x(unknowns);
    for (std::size_t i = 0; i < r; ++i)
        x[pivot_col[i]] = rhs[i];
    return x;
}

// Exponent e where a*Q^e and b(x/Q) cancel in their common extreme coefficient, when such an e exists.
inline std::optional<int> cancelling_exponent(const QRat& coeff_a, const QRat& coeff_bs, int step)
{
    auto m = power_of_q(coeff_bs / coeff_a);
    if (!m || *m % step != 0)
        return std::nullopt;
    return *m / step;
}

} // namespace detail

/*
 * Laurent solution g of a(x) g(Qx) - b(x/Q) g(x) = c(x), if one exists.
 * The exponent window [L, U] comes from comparing extreme coefficients on
 * both sides; inside it the equation is a linear system over Q(q).
 */
inline std::optional<LPoly> solve_q_gosper_equation(const XPoly& a, const XPoly& b, const LPoly& c, int step = 1)
{
    if (c.is_zero())
        return LPoly{};
    const XPoly bs = xshift(b, -1, step);
    const int da = a.degree(), db = bs.degree();
    const int oa = a.order(), ob = bs.order();

    int upper = c.degree() - std::max(da, db);
    if (da == db)
        if (auto m0 = detail::cancelling_exponent(a.lc(), bs.lc(), step))
            upper = std::max(upper, *m0);
    int lower = c.valuation() - std::min(oa, ob);
    if (oa == ob)
        if (auto l0 = detail::cancelling_exponent(a[oa], bs[ob], step))
            lower = std::min(lower, *l0);
    if (lower > upper)
        return std::nullopt;

    const std::size_t unknowns = static_cast<std::size_t>(upper - lower + 1);
    const int emin = std::min(lower + std::min(oa, ob), c.valuation());
    const int emax = std::max(upper + std::max(da, db), c.degree());
    const std::size_t rows = static_cast<std::size_t>(emax - emin + 1);
    std::vector<std::vector<QRat>> m(rows, std::vector<QRat>(unknowns));
    std::vector<QRat> rhs(rows);
    for (std::size_t i = 0; i < unknowns; ++i) {
        const int e = lower + static_cast<int>(i);
        // column: x^e * (Q^e a(x) - b(x/Q))
        const XPoly col = a * QRat::q_power(step * e) - bs;
        if (col.is_zero())
            continue;
        for (int j = col.order(); j <= col.degree(); ++j)
            m[static_cast<std::size_t>(e + j - emin)][i] = col[j];
    }
    for (int e = c.valuation(); e <= c.degree(); ++e)
        rhs[static_cast<std::size_t>(e - emin)] = c.coeff(e);

    auto sol = detail::solve_linear(std::move(m), std::move(rhs), unknowns);
    if (!sol)
        return std::nullopt;
    LPoly g(XPoly(std::move(*sol)), lower);
    const LPoly check = LPoly(a) * xshift(g, 1, step) - LPoly(bs) * g;
    if (check != c)
        throw error(errc::internal, "q-Gosper solution fails substitution check");
    return g;
}

inline SolveResult gosper_solve(const GosperRep& rep)
{
    return {solve_q_gosper_equation(rep.a, rep.b, LPoly(rep.c), rep.step)};
}

/*
 * Certificate rho with r(x) = rho(Qx) a(x)/b(x) - rho(x) when r(q^(lk)) t_k
 * is summable, nothing otherwise.
 */
inline std::optional<XRat> is_summable(const QuotientPair& pair, const XRat& r)
{
    if (r.is_zero())
        throw error(errc::zero_multiplier, "is_summable needs r != 0");
    const int l = pair.step;
    XPoly a0 = pair.a * r.den();
    XPoly b0 = pair.b * xshift(r.den(), 1, l);
    GosperRep rep = gosper_representation(std::move(a0), std::move(b0), l, r.num());
    auto g = gosper_solve(rep).solution;
    if (!g)
        return std::nullopt;
    // cancel factor by factor; the final normalization then only sees coprime parts
    const XRat gr(*g);
    std::vector<XPoly> num{r.num(), xshift(rep.b, -1, l), gr.num()}, den{r.den(), gr.den(), rep.c};
    for (XPoly& n : num)
        for (XPoly& d : den) {
            if (n.degree() <= 0 || d.degree() <= 0)
                continue;
            XPoly h = xgcd(n, d);
            if (h.degree() > 0) {
                n = xdiv_exact(n, h);
                d = xdiv_exact(d, h);
            }
        }
    XRat rho(num[0] * num[1] * num[2], den[0] * den[1] * den[2]);
    if (!telescopes(pair, r, rho))
        throw error(errc::internal, "Gosper certificate fails telescoping check");
    return rho;
}

/// Hypotheses of the structure theorem for a multiplier A/B, plus its conclusion B | A.
struct StructureReport {
    bool b_shift_coprime = false;  // gcd(B(x), B(Q^(h+1) x)) = 1
    bool a_coprime = false;        // gcd(B(x), a(Q^(-1-h) x)) = 1
    bool b_coprime = false;        // gcd(B(x), b(Q^h x)) = 1
    bool c_coprime = false;        // gcd(B(x), c(x)) = 1
    bool divides = false;          // B | A

    bool hypotheses_hold() const noexcept { return b_shift_coprime && a_coprime && b_coprime && c_coprime; }
};

namespace detail {

// Some h >= hmin with gcd(f(x), g(Q^h x)) != 1.
inline bool shares_shifted_root(const XPoly& f, const XPoly& g, int step, int hmin)
{
    if (f.order() > 0 && g.order() > 0)
        return true;
    auto disp = dispersion_set(strip_x(f).second, strip_x(g).second, step);
    return std::any_of(disp.begin(), disp.end(), [&](int h) { return h >= hmin; });
}

} // namespace detail

inline StructureReport structure_conditions(const XPoly& A, const XPoly& B, const GosperRep& rep)
{
    if (A.is_zero() || B.is_zero())
        throw error(errc::zero_input, "structure_conditions needs A, B nonzero");
    const int l = rep.step;
    StructureReport r;
    r.b_shift_coprime = B.order() == 0 && !detail::shares_shifted_root(B, B, l, 1);
    // gcd(B(x), a(Q^-(1+h) x)) != 1  <=>  gcd(a(x), B(Q^(1+h) x)) != 1
    r.a_coprime = !detail::shares_shifted_root(rep.a, B, l, 1);
    r.b_coprime = !detail::shares_shifted_root(B, rep.b, l, 0);
    r.c_coprime = xgcd(B, rep.c).degree() == 0;
    r.divides = divides(B, A);
    return r;
}

} // namespace qred
