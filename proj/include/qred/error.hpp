#pragma once

#include <stdexcept>
#include <string>

namespace qred {

enum class errc {
    division_by_zero,
    zero_input,
    both_zero,
    divisor_zero,
    pole_at_point,
    degree_mismatch,
    zero_polynomial,
    not_a_factor,
    zero_multiplier,
    certificate_invalid,
    infinite_dispersion,
    domain_error,
    pole_at_index,
    syntax_error,
    non_integer_exponent,
    division_by_zero_expression,
    format_error,
    internal,
};

inline const char* errc_name(errc c) noexcept
{
    switch (c) {
    case errc::division_by_zero: return "DivisionByZero";
    case errc::zero_input: return "ZeroInput";
    case errc::both_zero: return "BothZero";
    case errc::divisor_zero: return "DivisorZero";
    case errc::pole_at_point: return "PoleAtPoint";
    case errc::degree_mismatch: return "DegreeMismatch";
    case errc::zero_polynomial: return "ZeroPolynomial";
    case errc::not_a_factor: return "NotAFactor";
    case errc::zero_multiplier: return "ZeroMultiplier";
    case errc::certificate_invalid: return "CertificateInvalid";
    case errc::infinite_dispersion: return "InfiniteDispersion";
    case errc::domain_error: return "DomainError";
    case errc::pole_at_index: return "PoleAtIndex";
    case errc::syntax_error: return "SyntaxError";
    case errc::non_integer_exponent: return "NonIntegerExponent";
    case errc::division_by_zero_expression: return "DivisionByZeroExpression";
    case errc::format_error: return "FormatError";
    case errc::internal: return "InternalError";
    }
    return "Unknown";
}

/// The single exception type thrown by the library; `code()` tells callers which contract failed.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

/// Raised by eval routines when a denominator vanishes at summation index `index`.
class pole_at_index : public error {
public:
    pole_at_index(long index, const std::string& what)
        : error(errc::pole_at_index, "k=" + std::to_string(index) + ": " + what), index_(index)
    {
    }

    long index() const noexcept { return index_; }

private:
    long index_;
};

} // namespace qred
