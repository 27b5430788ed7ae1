#include <gtest/gtest.h>

#include "support.hpp"

using namespace qtest;

TEST(VerifyCertificate, Examples)
{
    QuotientPair pair(X("q*x*(1-q*x)^3*(1+q*x)"), X("(1-q^3*x^2)^3"), 1);
    XRat lhs = R("(1-q^2*x^3)/(1-q)");
    XRat derived = R("q*x^2*(1-q^4*x^3)*(1-q)/(1-q^3*x^2)^2");
    XRat rho = R("-(1+q*x)*(1-q*x^2)/(1-q)");
    EXPECT_TRUE(verify_certificate(lhs, derived, pair, rho));
    EXPECT_FALSE(verify_certificate(lhs, derived, pair, rho * QRat(2)));
    EXPECT_TRUE(verify_certificate(lhs, lhs, pair, XRat{}));
    EXPECT_FALSE(verify_certificate(lhs, derived, pair, XRat{}));
}

TEST(BoundaryTerm, Examples)
{
    TermSpec term(QuotientPair(X("q*x*(1-q*x)^3*(1+q*x)"), X("(1-q^3*x^2)^3"), 1), QRat(1));
    EXPECT_EQ(boundary_term(R("-(1+q*x)*(1-q*x^2)/(1-q)"), term), Qr("-(1+q)"));
    EXPECT_EQ(boundary_term(XRat{}, term), QRat(0));
    TermSpec scaled(term.pair, Qr("q^2"));
    EXPECT_EQ(boundary_term(R("1+x"), scaled), Qr("2*q^2"));
    try {
        boundary_term(R("1/(1-x)"), term);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::pole_at_point);
    }
}

TEST(BoundaryTerm, Additive)
{
    Gen gen(51);
    TermSpec term(QuotientPair(X("q*x"), X("1-x"), 1), Qr("1/(1+q)"));
    for (int t = 0; t < 100; ++t) {
        XRat r1(gen.xpoly(3), XPoly(std::vector<QRat>{QRat(1), gen.coeff()}));
        XRat r2(gen.xpoly(3), XPoly(std::vector<QRat>{QRat(1), gen.coeff()}));
        if (eval_at_qpower(r1.den(), 0).is_zero() || eval_at_qpower(r2.den(), 0).is_zero())
            continue;
        EXPECT_EQ(boundary_term(r1 + r2, term), boundary_term(r1, term) + boundary_term(r2, term));
    }
}

TEST(Generate, ReproducesShippedIdentities)
{
    for (const GoldenCase& g : golden_cases()) {
        SCOPED_TRACE(g.target);
        SeriesIdentity base = displayed(g.base);
        SeriesIdentity want = displayed(g.target);
        Derivation d = generate(base, g.spec, g.target);
        EXPECT_EQ(d.output.name, g.target);
        EXPECT_EQ(d.output.multiplier, want.multiplier * XRat(g.factor));
        EXPECT_EQ(d.boundary, g.boundary);
        EXPECT_TRUE(verify_derivation(d));
        ASSERT_EQ(d.output.rhs.size(), base.rhs.size() + 1);
        EXPECT_EQ(d.output.rhs.back(), (PochTerm{g.boundary, {}}));

        // the displayed right-hand side is factor^-1 times base + T_0
        ASSERT_EQ(want.rhs.front().factors, base.rhs.front().factors);
        EXPECT_EQ(want.rhs.front().prefactor * g.factor, base.rhs.front().prefactor);
        if (!g.boundary.is_zero()) {
            ASSERT_EQ(want.rhs.size(), 2u);
            EXPECT_EQ(want.rhs.back().prefactor * g.factor, g.boundary);
        }

        auto rho = is_summable(base.term.pair, base.multiplier - d.output.multiplier);
        ASSERT_TRUE(rho);
        EXPECT_TRUE(verify_certificate(base.multiplier, d.output.multiplier, base.term.pair, *rho));
    }
}

TEST(Generate, Deterministic)
{
    GoldenCase g = golden_cases().front();
    SeriesIdentity base = displayed(g.base);
    EXPECT_EQ(generate(base, g.spec), generate(base, g.spec));
    EXPECT_EQ(generate(base, g.spec).output.name, base.name + "-derived");
}

TEST(Generate, Errors)
{
    SeriesIdentity base = displayed("q-zeilberger-16");
    try {
        generate(base, ShiftPairSpec{X("1-x"), X("1"), 1, 0});
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::not_a_factor);
    }
    SeriesIdentity rational = displayed("q-zeilberger-16-rational");
    EXPECT_THROW(generate(rational, ShiftPairSpec{}), error);
}

TEST(VerifyDerivation, DetectsTampering)
{
    GoldenCase g = golden_cases().front();
    Derivation d = generate(displayed(g.base), g.spec);
    ASSERT_TRUE(verify_derivation(d));
    Derivation bad = d;
    bad.certificate = d.certificate + XRat(xvar());
    EXPECT_FALSE(verify_derivation(bad));
    bad = d;
    bad.boundary = QRat(0);
    EXPECT_FALSE(verify_derivation(bad));
    bad = d;
    bad.output.multiplier = d.output.multiplier * QRat(2);
    EXPECT_FALSE(verify_derivation(bad));
    bad = d;
    bad.output.rhs.pop_back();
    EXPECT_FALSE(verify_derivation(bad));
}
