#pragma once

#include <algorithm>
#include <optional>
#include <utility>

#include "poly.hpp"

namespace qred {

/// Polynomials in q with rational coefficients.
using QPoly = Poly<Rat>;

/*
 * Element of the coefficient field Q(q), q an indeterminate.
 *
 * Canonical form: gcd(num, den) = 1, den monic, zero is 0/1. Two values are
 * equal iff their (num, den) pairs are structurally equal.
 */
class QRat {
public:
    QRat() : den_(Rat(1)) {}
    QRat(int v) : num_(Rat(v)), den_(Rat(1)) {}
    QRat(long v) : num_(Rat(v)), den_(Rat(1)) {}
    QRat(const Rat& v) : num_(v), den_(Rat(1)) {}
    explicit QRat(QPoly num) : num_(std::move(num)), den_(Rat(1)) {}

    QRat(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den))
    {
        if (den_.is_zero())
            throw error(errc::division_by_zero, "zero denominator in Q(q)");
        normalize();
    }

    /// q^k for any integer k.
    static QRat q_power(int k)
    {
        if (k >= 0)
            return QRat(QPoly::monomial(Rat(1), k));
        QRat r;
        r.num_ = QPoly(Rat(1));
        r.den_ = QPoly::monomial(Rat(1), -k);
        return r;
    }

    static QRat q() { return q_power(1); }

    const QPoly& num() const noexcept { return num_; }
    const QPoly& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const noexcept { return den_.degree() == 0; }
    bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }

    /// The rational value of a constant element.
    Rat constant_value() const { return num_.is_zero() ? Rat(0) : Rat(num_[0] / den_[0]); }

    QRat inv() const
    {
        if (is_zero())
            throw error(errc::division_by_zero, "inverse of zero in Q(q)");
        QRat r;
        Rat s = Rat(1) / num_.lc();
        r.num_ = den_ * s;
        r.den_ = num_ * s;
        return r;
    }

    /// this * q^k, without a gcd computation.
    QRat times_q_power(int k) const
    {
        if (k == 0 || is_zero())
            return *this;
        QRat r;
        if (k > 0) {
            int m = std::min(den_.order(), k);
            r.den_ = den_.shift_down(m);
            r.num_ = num_.shift_up(k - m);
        } else {
            int kk = -k;
            int m = std::min(num_.order(), kk);
            r.num_ = num_.shift_down(m);
            r.den_ = den_.shift_up(kk - m);
        }
        return r;
    }

    /// Substitute a rational value for q.
    Rat eval(const Rat& q0) const
    {
        Rat d = den_.eval(q0);
        if (sgn(d) == 0)
            throw error(errc::division_by_zero, "denominator vanishes at q = " + q0.get_str());
        Rat n = num_.eval(q0);
        return Rat(n / d);
    }

    QRat operator-() const
    {
        QRat r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend QRat operator+(const QRat& a, const QRat& b)
    {
        if (a.is_zero())
            return b;
        if (b.is_zero())
            return a;
        if (a.is_polynomial() && b.is_polynomial())
            return QRat(a.num_ + b.num_);
        if (a.den_ == b.den_) {
            QRat r;
            r.num_ = a.num_ + b.num_;
            r.den_ = a.den_;
            r.normalize();
            return r;
        }
        return QRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend QRat operator-(const QRat& a, const QRat& b) { return a + (-b); }

    friend QRat operator*(const QRat& a, const QRat& b)
    {
        if (a.is_zero() || b.is_zero())
            return QRat{};
        if (a.is_polynomial() && b.is_polynomial())
            return QRat(a.num_ * b.num_);
        QPoly g1 = gcd(a.num_, b.den_);
        QPoly g2 = gcd(b.num_, a.den_);
        QRat r;
        r.num_ = div_exact(a.num_, g1) * div_exact(b.num_, g2);
        r.den_ = div_exact(a.den_, g2) * div_exact(b.den_, g1);
        Rat lc = r.den_.lc();
        if (lc != 1) {
            Rat s = Rat(1) / lc;
            r.num_ *= s;
            r.den_ *= s;
        }
        return r;
    }

    friend QRat operator/(const QRat& a, const QRat& b) { return a * b.inv(); }

    QRat& operator+=(const QRat& o) { return *this = *this + o; }
    QRat& operator-=(const QRat& o) { return *this = *this - o; }
    QRat& operator*=(const QRat& o) { return *this = *this * o; }
    QRat& operator/=(const QRat& o) { return *this = *this / o; }

    friend bool operator==(const QRat& a, const QRat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const QRat& a, const QRat& b) { return !(a == b); }

private:
    static QPoly div_exact(const QPoly& f, const QPoly& g)
    {
        if (g.degree() == 0)
            return f * (Rat(1) / g.lc());
        return divmod(f, g).first;
    }

    void normalize()
    {
        if (num_.is_zero()) {
            den_ = QPoly(Rat(1));
            return;
        }
        if (den_.degree() > 0) {
            QPoly g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = divmod(num_, g).first;
                den_ = divmod(den_, g).first;
            }
        }
        Rat lc = den_.lc();
        if (lc != 1) {
            Rat s = Rat(1) / lc;
            num_ *= s;
            den_ *= s;
        }
    }

    QPoly num_;
    QPoly den_;
};

/// m with f = q^m exactly, if any.
inline std::optional<int> power_of_q(const QRat& f)
{
    if (f.is_zero())
        throw error(errc::zero_input, "power_of_q of zero");
    const QPoly& n = f.num();
    const QPoly& d = f.den();
    if (n.order() != n.degree() || d.order() != d.degree())
        return std::nullopt;
    if (n.lc() != 1)
        return std::nullopt;
    return n.degree() - d.degree();
}

struct QDegreeSpan {
    int qdeg_num;
    int qord_num;
    int qdeg_den;
    int qord_den;

    friend bool operator==(const QDegreeSpan&, const QDegreeSpan&) = default;
};

inline QDegreeSpan q_degree_span(const QRat& f)
{
    if (f.is_zero())
        throw error(errc::zero_input, "q_degree_span of zero");
    return {f.num().degree(), f.num().order(), f.den().degree(), f.den().order()};
}

/// Order of vanishing at q = 0 (negative for poles).
inline int q_valuation(const QRat& f)
{
    if (f.is_zero())
        throw error(errc::zero_input, "q_valuation of zero");
    return f.num().order() - f.den().order();
}

inline QRat pow(const QRat& base, int e)
{
    if (e < 0)
        return pow(base.inv(), -e);
    QRat acc(1);
    for (int i = 0; i < e; ++i)
        acc *= base;
    return acc;
}

} // namespace qred
