#pragma once

#include <cstdlib>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

#include "error.hpp"

namespace qred {

/// Binary floating point of fixed precision (bits), round-to-nearest throughout.
class BigFloat {
public:
    explicit BigFloat(long bits = 256)
    {
        if (bits < 64)
            throw error(errc::domain_error, "BigFloat precision must be at least 64 bits");
        mpfr_init2(v_, static_cast<mpfr_prec_t>(bits));
        mpfr_set_zero(v_, 1);
    }

    BigFloat(const mpq_class& r, long bits) : BigFloat(bits) { mpfr_set_q(v_, r.get_mpq_t(), MPFR_RNDN); }

    BigFloat(long v, long bits) : BigFloat(bits) { mpfr_set_si(v_, v, MPFR_RNDN); }

    BigFloat(const BigFloat& o)
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }

    BigFloat(BigFloat&& o) noexcept
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }

    BigFloat& operator=(const BigFloat& o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    BigFloat& operator=(BigFloat&& o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }

    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat pi(long bits)
    {
        BigFloat r(bits);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    /// 2^e
    static BigFloat pow2(long e, long bits)
    {
        BigFloat r(1L, bits);
        mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }

    long precision() const noexcept { return static_cast<long>(mpfr_get_prec(v_)); }
    bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
    int sign() const noexcept { return mpfr_sgn(v_); }

    BigFloat abs() const
    {
        BigFloat r(precision());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }

    BigFloat pow(long e) const
    {
        BigFloat r(precision());
        mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
        return r;
    }

    /// Copy rounded to `bits` of precision.
    BigFloat rounded(long bits) const
    {
        BigFloat r(bits);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Scientific notation with `digits` significant decimal digits.
    std::string to_string(int digits = 30) const
    {
        char* buf = nullptr;
        std::string fmt = "%." + std::to_string(digits > 0 ? digits - 1 : 0) + "Re";
        mpfr_asprintf(&buf, fmt.c_str(), v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    BigFloat operator-() const
    {
        BigFloat r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    BigFloat& operator+=(const BigFloat& o) { return binop(o, mpfr_add); }
    BigFloat& operator-=(const BigFloat& o) { return binop(o, mpfr_sub); }
    BigFloat& operator*=(const BigFloat& o) { return binop(o, mpfr_mul); }
    BigFloat& operator/=(const BigFloat& o) { return binop(o, mpfr_div); }

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return b <= a; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    mpfr_srcptr get() const noexcept { return v_; }

private:
    template <class Op>
    BigFloat& binop(const BigFloat& o, Op op)
    {
        if (o.precision() > precision())
            mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
        op(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    mpfr_t v_;
};

/// Parses a decimal literal such as "1e-20".
inline BigFloat parse_bigfloat(const std::string& text, long bits)
{
    BigFloat r(bits);
    mpfr_ptr p = const_cast<mpfr_ptr>(r.get());
    if (mpfr_set_str(p, text.c_str(), 10, MPFR_RNDN) != 0)
        throw error(errc::syntax_error, "not a decimal number: " + text);
    return r;
}

} // namespace qred
