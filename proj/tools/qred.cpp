#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <qred/qred.hpp>

namespace fs = std::filesystem;
using namespace qred;

namespace {

enum exit_code { ok = 0, failed = 1, usage = 2, not_summable = 3, internal = 4 };

bool kv_format = false;

void emit(std::ostream& os, const std::string& key, const std::string& value)
{
    if (kv_format)
        os << key << '=' << value << '\n';
    else
        os << key << ": " << value << '\n';
}

int code_for(const error& e)
{
    switch (e.code()) {
    case errc::internal:
    case errc::certificate_invalid: return internal;
    case errc::pole_at_index: return failed;
    default: return usage;
    }
}

Rat parse_rational(const std::string& s)
{
    QRat v = parse_qrat(s);
    if (!v.is_constant())
        throw error(errc::syntax_error, "expected a rational number: " + s);
    return v.constant_value();
}

QuotientPair read_pair(const std::string& a, const std::string& b, int step)
{
    return QuotientPair(parse_xpoly(a), parse_xpoly(b), step);
}

void emit_coeffs(const ReductionOutput& out)
{
    for (const auto& [i, c] : out.coeffs)
        emit(std::cout, "coeff." + std::to_string(i), to_string(c));
    emit(std::cout, "remainder", to_string(out.remainder));
    emit(std::cout, "certificate", to_string(out.certificate));
}

struct FileResult {
    std::string path;
    bool ok = false;
    std::string detail;
};

const std::vector<Rat> batch_points = {Rat(1, 2), Rat(3, 5)};
constexpr long batch_terms = 128;
constexpr long batch_bits = 256;

bool eval_ok(const SeriesIdentity& id, const BigFloat& tol, std::ostringstream& detail)
{
    bool good = true;
    for (const Rat& q0 : batch_points) {
        EvalReport r = eval_series(id, q0, batch_terms, batch_bits);
        detail << " q=" << q0.get_str() << " absdiff=" << r.absdiff.to_string(3);
        good = good && r.absdiff < tol;
    }
    return good;
}

FileResult check_file(const fs::path& path)
{
    FileResult res{path.string()};
    std::ostringstream detail;
    const BigFloat tol = parse_bigfloat("1e-20", batch_bits);
    try {
        if (path.extension() == ".qid") {
            res.ok = eval_ok(load_identity(path.string()), tol, detail);
        } else {
            Derivation d = load_derivation(path.string());
            bool sym = verify_derivation(d);
            detail << " certificate=" << (sym ? "ok" : "FAILED");
            TelescopeReport t = check_telescoping(d, Rat(1, 2), 40, batch_bits);
            bool tele = t.residual < parse_bigfloat("1e-30", batch_bits) && t.last_term < parse_bigfloat("1e-40", batch_bits);
            detail << " residual=" << t.residual.to_string(3) << " |T_41|=" << t.last_term.to_string(3);
            res.ok = sym && tele && eval_ok(d.output, tol, detail);
        }
    } catch (const std::exception& e) {
        detail << " error: " << e.what();
        res.ok = false;
    }
    res.detail = detail.str();
    return res;
}

int run_batch(const std::string& dir, int jobs)
{
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir))
        if (entry.is_regular_file() && (entry.path().extension() == ".qid" || entry.path().extension() == ".qder"))
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        std::cerr << "no .qid or .qder files under " << dir << '\n';
        return usage;
    }
    std::vector<FileResult> results(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < files.size();)
            results[i] = check_file(files[i]);
    };
    std::vector<std::thread> pool;
    for (int j = 1; j < std::max(1, jobs); ++j)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    bool all = true;
    for (const auto& r : results) {
        emit(std::cout, r.path, std::string(r.ok ? "ok" : "FAILED") + r.detail);
        all = all && r.ok;
    }
    return all ? ok : failed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact q-polynomial and q-rational reduction for q-hypergeometric terms"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "Output style")->check(CLI::IsMember({"text", "kv"}));

    std::string a, b, p, c, a1 = "1", b1 = "1", rnum, rden = "1", base_file, out_file, name, deriv_file, id_file, q_text = "1/2",
                                tol_text = "1e-20", dir;
    int step = 1, n1 = 0, n2 = 0, jobs = 1;
    long terms = 128, bits = 256;

    auto* reduce = app.add_subcommand("reduce", "q-polynomial reduction of p with respect to (a, b)");
    auto* rreduce = app.add_subcommand("rational-reduce", "q-rational reduction through a shift pair");
    auto* rep = app.add_subcommand("gosper-rep", "q-Gosper representation of a/b");
    auto* solve = app.add_subcommand("gosper-solve", "Solve a(x)g(Qx) - b(x/Q)g(x) = c(x) for a Laurent polynomial g");
    auto* summable = app.add_subcommand("summable", "Decide whether r(x) t_k is summable");
    auto* gen = app.add_subcommand("generate", "Derive a new identity from a base identity file");
    auto* verify = app.add_subcommand("verify", "Check a derivation file symbolically");
    auto* eval = app.add_subcommand("eval", "Evaluate both sides of an identity numerically");
    auto* batch = app.add_subcommand("batch", "Verify and evaluate every identity and derivation under a directory");

    for (auto* sc : {reduce, rreduce, rep, solve, summable}) {
        sc->add_option("--a", a, "Numerator of the shift quotient")->required();
        sc->add_option("--b", b, "Denominator of the shift quotient")->required();
        sc->add_option("--step", step, "Quotient is rational in q^(step*k)")->check(CLI::PositiveNumber);
    }
    reduce->add_option("--p", p)->required();
    rreduce->add_option("--p", p)->required();
    for (auto* sc : {rreduce, gen}) {
        sc->add_option("--a1", a1);
        sc->add_option("--b1", b1);
        sc->add_option("--n1", n1)->check(CLI::NonNegativeNumber);
        sc->add_option("--n2", n2)->check(CLI::NonNegativeNumber);
    }
    solve->add_option("--c", c)->required();
    summable->add_option("--rnum", rnum)->required();
    summable->add_option("--rden", rden);
    gen->add_option("--base", base_file)->required()->check(CLI::ExistingFile);
    gen->add_option("--out", out_file, "Output file; stdout when omitted");
    gen->add_option("--name", name, "Name of the derived identity");
    verify->add_option("--derivation", deriv_file)->required()->check(CLI::ExistingFile);
    eval->add_option("--identity", id_file, "Identity (.qid) or derivation (.qder) file")->required()->check(CLI::ExistingFile);
    eval->add_option("--q", q_text, "Rational evaluation point in (0, 1)");
    eval->add_option("--terms", terms)->check(CLI::PositiveNumber);
    eval->add_option("--bits", bits)->check(CLI::Range(64L, 1L << 20));
    eval->add_option("--tol", tol_text, "Exit 1 when absdiff is not below this");
    batch->add_option("--dir", dir)->required()->check(CLI::ExistingDirectory);
    batch->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }
    kv_format = format == "kv";

    try {
        if (*reduce) {
            QuotientPair pair = read_pair(a, b, step);
            ReductionOutput out = reduce_poly(pair, parse_xpoly(p));
            emit_coeffs(out);
        } else if (*rreduce) {
            QuotientPair pair = read_pair(a, b, step);
            RationalReduction r = rational_reduce(pair, ShiftPairSpec{parse_xpoly(a1), parse_xpoly(b1), n1, n2}, parse_xpoly(p));
            emit(std::cout, "A", to_string(r.shifted.a));
            emit(std::cout, "B", to_string(r.shifted.b));
            emit(std::cout, "denominator", to_string(r.out.denominator));
            emit_coeffs(r.out);
            emit(std::cout, "reduced_multiplier", to_string(r.out.reduced_multiplier()));
        } else if (*rep) {
            GosperRep g = gosper_representation(parse_xpoly(a), parse_xpoly(b), step);
            emit(std::cout, "a", to_string(g.a));
            emit(std::cout, "b", to_string(g.b));
            emit(std::cout, "c", to_string(g.c));
        } else if (*solve) {
            auto g = solve_q_gosper_equation(parse_xpoly(a), parse_xpoly(b), parse_lpoly(c), step);
            if (!g) {
                std::cout << "not summable\n";
                return not_summable;
            }
            emit(std::cout, "g", to_string(*g));
        } else if (*summable) {
            XPoly den = parse_xpoly(rden);
            if (den.is_zero())
                throw error(errc::division_by_zero_expression, "--rden is zero");
            auto rho = is_summable(read_pair(a, b, step), XRat(parse_xpoly(rnum), den));
            if (!rho) {
                std::cout << "not summable\n";
                return not_summable;
            }
            emit(std::cout, "certificate", to_string(*rho));
        } else if (*gen) {
            SeriesIdentity base = load_identity(base_file);
            Derivation d = generate(base, ShiftPairSpec{parse_xpoly(a1), parse_xpoly(b1), n1, n2}, name);
            std::string text = write_text(derivation_to_node(d));
            if (out_file.empty())
                std::cout << text;
            else
                write_file(out_file, text);
        } else if (*verify) {
            Derivation d = load_derivation(deriv_file);
            bool good = verify_derivation(d);
            emit(std::cout, "verified", good ? "true" : "false");
            return good ? ok : failed;
        } else if (*eval) {
            fs::path path(id_file);
            SeriesIdentity id = path.extension() == ".qder" ? load_derivation(id_file).output : load_identity(id_file);
            EvalReport r = eval_series(id, parse_rational(q_text), terms, bits);
            int digits = static_cast<int>(bits * 0.30103);
            emit(std::cout, "lhs", r.lhs.to_string(digits));
            emit(std::cout, "rhs", r.rhs.to_string(digits));
            emit(std::cout, "absdiff", r.absdiff.to_string(6));
            emit(std::cout, "terms_used", std::to_string(r.terms_used));
            emit(std::cout, "tail_estimate", r.tail_estimate.to_string(6));
            return r.absdiff < parse_bigfloat(tol_text, bits) ? ok : failed;
        } else if (*batch) {
            return run_batch(dir, jobs);
        }
    } catch (const error& e) {
        std::cerr << e.what() << '\n';
        return code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return internal;
    }
    return ok;
}
