// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "properties.hpp"

using namespace qtest;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            if (!ok)
                detail << "; ";
            ok = false;
            detail << what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<std::string> files_with(const std::string& dir, const std::string& ext)
{
    std::vector<std::string> out;
    for (const auto& e : fs::directory_iterator(data_path(dir)))
        if (e.path().extension() == ext)
            out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

BigFloat F(const char* s) { return parse_bigfloat(s, 256); }

QuotientPair zeil16() { return QuotientPair(X("q*x*(1-q*x)^3*(1+q*x)"), X("(1-q^3*x^2)^3"), 1); }
QuotientPair bauer() { return QuotientPair(X("-q*x*(1-q*x)^3"), X("(1-q^2*x)^3"), 2); }
QuotientPair rama256() { return QuotientPair(X("q*x*(1-q*x)^2*(1-q^2*x^2)"), X("(1-q^4*x^2)^3"), 2); }

void zeilberger_rational(Outcome& o)
{
    // f(x) = [3k+2]_q at x = q^k; denominator [2k+3]_q^2 via the (0, 1) shift pair
    ShiftPairSpec spec{X("1"), X("((1-q^3*x^2)/(1-q))^2"), 0, 1};
    XPoly f = X("(1-q^2*x^3)/(1-q)");
    QuotientPair shifted = shift_pair(zeil16(), spec);
    XPoly D = shift_product(spec.b1, 1, 1);
    ReductionOutput out = reduce_poly(shifted, f * D);
    o.require(out.remainder == X("q*x^2*(1-q^4*x^3)/(1-q)"), "remainder " + to_string(out.remainder));
    o.require(out.coeffs == std::map<int, QRat>{{0, Qr("-1/(1-q)^3")}, {1, Qr("-q/(1-q)^3")}}, "coefficients");
    RationalReduction rr = rational_reduce(zeil16(), spec, f);
    QRat t0 = boundary_term(rr.out.certificate, TermSpec(zeil16(), QRat(1)));
    o.require(t0 == Qr("-(1+q)"), "boundary " + to_string(t0));
}

void bauer_family(Outcome& o)
{
    RationalReduction rr = rational_reduce(bauer(), {X("q*(1-q*x)/(1-q)"), X("(1-q^2*x)/(1-q)"), 1, 1}, X("(1-q*x^2)/(1-q)"));
    o.require(rr.out.remainder == X("-x*(1-q*x^2)/(1-q)"), "remainder " + to_string(rr.out.remainder));
    for (const GoldenCase& g : golden_cases()) {
        if (g.base != "q-bauer")
            continue;
        SeriesIdentity base = displayed(g.base);
        Derivation d = generate(base, g.spec, g.target);
        SeriesIdentity want = displayed(g.target);
        o.require(d.output.multiplier == want.multiplier * XRat(g.factor), g.target + " multiplier");
        o.require(verify_certificate(base.multiplier, d.output.multiplier, base.term.pair, d.certificate), g.target + " certificate");
    }
}

void ramanujan_family(Outcome& o)
{
    XPoly base = displayed("q-ramanujan-256").multiplier.num();
    XPoly P1 = X("-q^2 + q^2*x^2 + q^3*x^3 + x^4 - q^2*x^4 - q*x^5");
    XPoly P2 = X("q^3 - q^3*x^2 - q^4*x^3 - 2*q*x^4 + 2*q^3*x^4 + x^5");
    RationalReduction r1 = rational_reduce(rama256(), {X("(1-q*x)*(1-q^2*x^2)/(1-q)^2"), X("1"), 1, 0}, base);
    RationalReduction r2 = rational_reduce(rama256(), {X("((1-q*x)/(1-q))^2*(1-q^2*x^2)/(1-q)"), X("1"), 1, 0}, base);
    o.require(r1.out.remainder * Qr("(1-q)^2*q^4/(1+q)") == P1, "P1 from " + to_string(r1.out.remainder));
    o.require(r2.out.remainder * Qr("q^7*(1-q)^2/(1+q)^2") == P2, "P2 from " + to_string(r2.out.remainder));
}

void numeric(Outcome& o)
{
    auto files = files_with("identities", ".qid");
    o.require(files.size() == 12, "expected 12 identities");
    BigFloat worst = F("0");
    for (const auto& path : files) {
        SeriesIdentity id = load_identity(path);
        for (Rat q0 : {Rat(1, 2), Rat(3, 5)}) {
            EvalReport r = eval_series(id, q0, 128, 256);
            if (r.absdiff > worst)
                worst = r.absdiff;
            o.require(r.absdiff < F("1e-20"), id.name + " at " + q0.get_str() + ": " + r.absdiff.to_string(6));
        }
    }
    o.detail << (o.ok ? "" : "; ") << files.size() << " identities x 2 points, max absdiff " << worst.to_string(3);
}

Poly<Rat> lin(long c0, long c1) { return Poly<Rat>(std::vector<Rat>{Rat(c0), Rat(c1)}); }
Poly<Rat> cst(long c) { return Poly<Rat>(std::vector<Rat>{Rat(c)}); }
Poly<Rat> cube(const Poly<Rat>& p) { return p * p * p; }

void classical(Outcome& o)
{
    const long bits = 256;
    const BigFloat pi = BigFloat::pi(bits);
    const BigFloat one(1L, bits), two(2L, bits), four(4L, bits), eight(8L, bits);
    struct Case {
        const char* label;
        IndexRational ratio;
        IndexRational mult;
        Rat t0;
        BigFloat target;
    };
    const IndexRational guillera{cst(2) * cube(lin(1, 1)), cube(lin(3, 2))};
    const IndexRational bauer_r{cst(-1) * cube(lin(1, 2)), cst(8) * cube(lin(1, 1))};
    const IndexRational rama_r{cube(lin(1, 2)), cst(32) * cube(lin(1, 1))};
    std::vector<Case> cases = {
        {"pi^2/2", guillera, {lin(2, 3)}, Rat(2), pi * pi / two},
        {"pi^2/2 - 4", guillera, {lin(4, 3), lin(3, 2) * lin(3, 2)}, Rat(2), pi * pi / two - four},
        {"pi^2/6 - 4/9", guillera, {Poly<Rat>(std::vector<Rat>{8, 15, 4}), lin(3, 2) * lin(5, 2)}, Rat(2),
         pi * pi / BigFloat(6L, bits) - four / BigFloat(9L, bits)},
        {"2/pi", bauer_r, {lin(1, 4)}, Rat(1), two / pi},
        {"-1/pi", bauer_r, {lin(0, 1) * lin(-1, 4), lin(-1, 2) * lin(-1, 2)}, Rat(1), -(one / pi)},
        {"2/pi (cubed)", bauer_r, {lin(-1, 4), cube(lin(-1, 2))}, Rat(1), two / pi},
        {"-4/pi", bauer_r, {lin(1, 4), lin(-1, 2) * lin(1, 1)}, Rat(1), -(four / pi)},
        {"8/pi", bauer_r, {lin(1, 2) * lin(3, 4), lin(1, 1) * lin(1, 1)}, Rat(1), eight / pi},
        {"4/pi", rama_r, {lin(1, 6)}, Rat(1), four / pi},
        {"-2/pi", rama_r, {Poly<Rat>(std::vector<Rat>{-1, 0, 12}), lin(-1, 2) * lin(-1, 2)}, Rat(1), -(two / pi)},
        {"1/(2pi)", rama_r, {lin(0, 1) * lin(-1, 6), cube(lin(-1, 2))}, Rat(1), one / (two * pi)},
    };
    BigFloat worst(0L, bits);
    for (const Case& c : cases) {
        BigFloat v = eval_classical(c.ratio, c.mult, c.t0, 200, bits, Acceleration::averaging);
        BigFloat err = (v - c.target).abs();
        if (err > worst)
            worst = err;
        o.require(err < F("1e-8"), std::string(c.label) + ": error " + err.to_string(4));
    }
    o.detail << (o.ok ? "" : "; ") << cases.size() << " series, max error " << worst.to_string(3);
}

void properties(Outcome& o)
{
    const long before = reduction_checks.load();
    auto check = [&](const char* name, const PropertyResult& r, int expect) {
        o.require(r.ok() && r.instances == expect,
                  std::string(name) + ": " + std::to_string(r.failures) + "/" + std::to_string(r.instances) + " " + r.first_failure);
    };
    check("degree law", degree_law(300, 31), 300);
    check("remainder uniqueness", remainder_uniqueness(100, 32), 100);
    check("gosper round trip", gosper_round_trip(200, 42), 200);
    StructureStats st = structure_property(100, 43);
    check("structure", st.result, 100);
    check("cross validation", cross_validation(60, 44), 60);
    check("shift product", shift_product_law(100, 33), 100);
    RoundTrip rt = parse_print_round_trip(500, 11);
    check("round trip QRat", rt.qrat, 500);
    check("round trip XPoly", rt.xpoly, 500);
    check("round trip LPoly", rt.lpoly, 500);
    check("round trip XRat", rt.xrat, 500);
    const long checked = reduction_checks.load() - before;
    o.require(checked > 0, "no reductions checked");
    o.detail << (o.ok ? "" : "; ") << checked << " reductions verified exact";
}

void telescoping(Outcome& o)
{
    auto files = files_with("derivations", ".qder");
    o.require(files.size() == 8, "expected 8 derivations");
    for (const auto& path : files) {
        Derivation d = load_derivation(path);
        TelescopeReport r = check_telescoping(d, Rat(1, 2), 40, 256);
        o.require(r.residual < F("1e-30"), d.output.name + " residual " + r.residual.to_string(4));
        o.require(r.last_term < F("1e-40"), d.output.name + " |T41| " + r.last_term.to_string(4));
    }
    o.detail << (o.ok ? "" : "; ") << files.size() << " derivations";
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* title;
        std::function<void(Outcome&)> run;
        double limit;  // seconds, 0 = none
    };
    const std::vector<Criterion> criteria = {
        {1, "q-Zeilberger [2k+3]^2 reduction, exact", zeilberger_rational, 1.0},
        {2, "q-Bauer rational reductions and certificates, exact", bauer_family, 0},
        {3, "q-Ramanujan 256 remainders P1 and P2, exact", ramanujan_family, 0},
        {4, "numeric check of displayed identities, absdiff < 1e-20", numeric, 30.0},
        {5, "classical limits within 1e-8 at N = 200", classical, 0},
        {6, "property suites", properties, 0},
        {7, "telescoping decay at q0 = 1/2, N = 40", telescoping, 0},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        Outcome o;
        auto t0 = Clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double t = seconds_since(t0);
        if (c.limit > 0)
            o.require(t < c.limit, "took " + std::to_string(t) + " s");
        std::ostringstream time;
        time.precision(3);
        time << t;
        std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " [" << time.str() << " s]";
        std::string detail = o.detail.str();
        if (!detail.empty())
            std::cout << "  (" << detail << ")";
        std::cout << std::endl;
        failed += o.ok ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
}
