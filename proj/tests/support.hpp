#pragma once

#include <random>
#include <string>

#include <qred/qred.hpp>

namespace qtest {

using namespace qred;

inline XPoly X(const std::string& s) { return parse_xpoly(s); }
inline QRat Qr(const std::string& s) { return parse_qrat(s); }
inline XRat R(const std::string& s) { return parse_xrat(s); }
inline LPoly L(const std::string& s) { return parse_lpoly(s); }

class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    QPoly qpoly(int maxdeg, int range = 9)
    {
        std::vector<Rat> c(static_cast<std::size_t>(uniform(0, maxdeg)) + 1);
        for (auto& v : c)
            v = uniform(-range, range);
        return QPoly(std::move(c));
    }

    QPoly nonzero_qpoly(int maxdeg, int range = 9)
    {
        for (;;) {
            QPoly p = qpoly(maxdeg, range);
            if (!p.is_zero())
                return p;
        }
    }

    QRat qrat(int numdeg = 6, int dendeg = 3, int range = 9)
    {
        QPoly n = qpoly(numdeg, range);
        if (coin(0.3))
            return QRat(n);
        return QRat(n, nonzero_qpoly(dendeg, range));
    }

    QRat nonzero_qrat(int numdeg = 6, int dendeg = 3, int range = 9)
    {
        for (;;) {
            QRat v = qrat(numdeg, dendeg, range);
            if (!v.is_zero())
                return v;
        }
    }

    // Small coefficient: c * q^j, occasionally a short sum or a quotient.
    QRat coeff()
    {
        int kind = uniform(0, 9);
        QRat v = QRat(Rat(uniform(-4, 4))).times_q_power(uniform(-2, 3));
        if (kind >= 7)
            v = v + QRat(Rat(uniform(-3, 3))).times_q_power(uniform(0, 3));
        if (kind == 9 && !v.is_zero())
            v = v / QRat(QPoly(std::vector<Rat>{Rat(1), Rat(-1)}));
        return v;
    }

    QRat nonzero_coeff()
    {
        for (;;) {
            QRat c = coeff();
            if (!c.is_zero())
                return c;
        }
    }

    XPoly xpoly(int maxdeg)
    {
        std::vector<QRat> c(static_cast<std::size_t>(uniform(0, maxdeg)) + 1);
        for (auto& v : c)
            v = coin(0.7) ? coeff() : QRat{};
        return XPoly(std::move(c));
    }

    XPoly xpoly_exact(int deg)
    {
        std::vector<QRat> c(static_cast<std::size_t>(deg) + 1);
        for (auto& v : c)
            v = coin(0.7) ? coeff() : QRat{};
        c.back() = nonzero_coeff();
        return XPoly(std::move(c));
    }

    XPoly nonzero_xpoly(int maxdeg)
    {
        for (;;) {
            XPoly p = xpoly(maxdeg);
            if (!p.is_zero())
                return p;
        }
    }

    // 1 - c q^j x
    XPoly linear_factor(int jlo = 0, int jhi = 4)
    {
        int c = uniform(1, 2) * (coin() ? 1 : -1);
        return XPoly(std::vector<QRat>{QRat(1), QRat(Rat(-c)).times_q_power(uniform(jlo, jhi))});
    }

    XPoly factored(int nfactors, int jlo = 0, int jhi = 4)
    {
        XPoly p(QRat(1));
        for (int i = 0; i < nfactors; ++i)
            p = p * linear_factor(jlo, jhi);
        return p;
    }

    LPoly lpoly(int vlo, int vhi, int maxdeg)
    {
        return LPoly(xpoly(maxdeg), uniform(vlo, vhi));
    }

    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
};

} // namespace qtest

namespace qtest {

inline std::string data_path(const std::string& rel) { return std::string(QRED_DATA_DIR) + "/" + rel; }

inline SeriesIdentity displayed(const std::string& name) { return load_identity(data_path("identities/" + name + ".qid")); }

/// The shipped derivations: base identity, shift-pair choice, and the displayed identity they reproduce.
struct GoldenCase {
    std::string base;
    std::string target;
    ShiftPairSpec spec;
    QRat factor;    // derived multiplier = factor * displayed multiplier
    QRat boundary;  // T_0
};

inline std::vector<GoldenCase> golden_cases()
{
    return {
        {"q-zeilberger-16", "q-zeilberger-16-rational", {X("1"), X("((1-q^3*x^2)/(1-q))^2"), 0, 1}, QRat(1), Qr("-(1+q)")},
        {"q-zeilberger-16", "q-zeilberger-16-shifted", {X("1"), X("(1-q^3*x^2)/(1-q)"), 0, 2}, QRat(1), Qr("-q^2*(1+q)/(1+q+q^2)")},
        {"q-bauer", "q-bauer-2k-1-k+1", {X("q*(1-q*x)/(1-q)"), X("(1-q^2*x)/(1-q)"), 1, 1}, QRat(-1), QRat(0)},
        {"q-bauer", "q-bauer-2k-1-squared", {X("(q*(1-q*x)/(1-q))^2"), X("1"), 1, 0}, QRat(-1), QRat(0)},
        {"q-bauer", "q-bauer-2k-1-cubed", {X("(q*(1-q*x)/(1-q))^3"), X("1"), 1, 0}, QRat(1), QRat(0)},
        {"q-bauer", "q-bauer-k+1-squared", {X("1"), X("((1-q^2*x)/(1-q))^2"), 0, 1}, QRat(1), QRat(0)},
        {"q-ramanujan-256", "q-ramanujan-256-2k-1-squared", {X("(1-q*x)*(1-q^2*x^2)/(1-q)^2"), X("1"), 1, 0}, Qr("1+q"), QRat(0)},
        {"q-ramanujan-256", "q-ramanujan-256-2k-1-cubed", {X("((1-q*x)/(1-q))^2*(1-q^2*x^2)/(1-q)"), X("1"), 1, 0}, Qr("1+q"), QRat(0)},
    };
}

} // namespace qtest
