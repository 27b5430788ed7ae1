#pragma once

#include <string>
#include <vector>

#include "gosper.hpp"

namespace qred {

/// t_k from its shift quotient and t_0.
struct TermSpec {
    QuotientPair pair;
    QRat t0;

    TermSpec(QuotientPair p, QRat t0_) : pair(std::move(p)), t0(std::move(t0_))
    {
        if (t0.is_zero())
            throw error(errc::zero_input, "t0 must be nonzero");
    }

    friend bool operator==(const TermSpec&, const TermSpec&) = default;
};

/// (base; q^modulus)_inf ^ exponent
struct PochFactor {
    QRat base;
    int modulus = 1;
    int exponent = 1;

    friend bool operator==(const PochFactor&, const PochFactor&) = default;
};

struct PochTerm {
    QRat prefactor;
    std::vector<PochFactor> factors;

    friend bool operator==(const PochTerm&, const PochTerm&) = default;
};

/// sum_{k>=0} multiplier(q^(l k)) t_k = sum of rhs terms.
struct SeriesIdentity {
    std::string name;
    TermSpec term;
    XRat multiplier;
    std::vector<PochTerm> rhs;
    std::vector<std::string> notes;

    friend bool operator==(const SeriesIdentity&, const SeriesIdentity&) = default;
};

inline constexpr const char* decay_assumption =
    "T_k = certificate(q^(step*k)) * t_k tends to 0 as k -> infinity; checked numerically, not proven";

/*
 * A derived identity: base multiplier minus output multiplier telescopes with
 * certificate rho, so the output sum equals the base sum plus T_0 = rho(1) t_0.
 */
struct Derivation {
    SeriesIdentity base;
    ShiftPairSpec spec;
    SeriesIdentity output;
    XRat certificate;
    QRat boundary;
    std::string assumption = decay_assumption;

    friend bool operator==(const Derivation&, const Derivation&) = default;
};

inline bool verify_certificate(const XRat& lhs_multiplier, const XRat& derived_multiplier, const QuotientPair& pair, const XRat& rho)
{
    return telescopes(pair, lhs_multiplier - derived_multiplier, rho);
}

/// T_0 = rho(1) * t_0.
inline QRat boundary_term(const XRat& rho, const TermSpec& term) { return eval_at_qpower(rho, 0, term.pair.step) * term.t0; }

inline Derivation generate(const SeriesIdentity& base, const ShiftPairSpec& spec, std::string name = {})
{
    if (!base.multiplier.is_polynomial())
        throw error(errc::domain_error, "generate needs a polynomial base multiplier");
    const QuotientPair& pair = base.term.pair;
    RationalReduction red = rational_reduce(pair, spec, base.multiplier.num());

    Derivation d{base, spec, base, red.out.certificate, QRat{}};
    d.output.name = name.empty() ? base.name + "-derived" : std::move(name);
    d.output.multiplier = red.out.reduced_multiplier();
    d.output.notes = {"derived from " + base.name + " by rational reduction"};
    d.boundary = boundary_term(d.certificate, base.term);
    d.output.rhs.push_back(PochTerm{d.boundary, {}});

    if (!verify_certificate(base.multiplier, d.output.multiplier, pair, d.certificate))
        throw error(errc::certificate_invalid, "generated certificate does not telescope");
    return d;
}

/// Full consistency check of a stored derivation: certificate, boundary, and right-hand side bookkeeping.
inline bool verify_derivation(const Derivation& d)
{
    if (!(d.base.term == d.output.term))
        return false;
    if (!verify_certificate(d.base.multiplier, d.output.multiplier, d.base.term.pair, d.certificate))
        return false;
    QRat t0;
    try {
        t0 = boundary_term(d.certificate, d.base.term);
    } catch (const error&) {
        return false;
    }
    if (t0 != d.boundary)
        return false;
    std::vector<PochTerm> expected = d.base.rhs;
    expected.push_back(PochTerm{d.boundary, {}});
    return expected == d.output.rhs;
}

} // namespace qred
