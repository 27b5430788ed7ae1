#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "expr.hpp"
#include "identity.hpp"

namespace qred {

/// One block of the line-oriented file format: scalar keys, nested blocks, and lists of blocks.
struct TextNode {
    std::vector<std::pair<std::string, std::string>> values;
    std::map<std::string, TextNode> blocks;
    std::map<std::string, std::vector<TextNode>> lists;

    const std::string* find(const std::string& key) const
    {
        for (const auto& [k, v] : values)
            if (k == key)
                return &v;
        return nullptr;
    }

    const std::string& get(const std::string& key) const
    {
        if (const std::string* v = find(key))
            return *v;
        throw error(errc::format_error, "missing key '" + key + "'");
    }

    std::vector<std::string> all(const std::string& key) const
    {
        std::vector<std::string> out;
        for (const auto& [k, v] : values)
            if (k == key)
                out.push_back(v);
        return out;
    }

    const TextNode& block(const std::string& key) const
    {
        auto it = blocks.find(key);
        if (it == blocks.end())
            throw error(errc::format_error, "missing block '" + key + "'");
        return it->second;
    }

    void set(std::string key, std::string value) { values.emplace_back(std::move(key), std::move(value)); }
};

namespace detail {

inline std::string trim(const std::string& s)
{
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline bool valid_key(const std::string& k)
{
    if (k.empty())
        return false;
    for (char c : k)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
            return false;
    return true;
}

class TextReader {
public:
    explicit TextReader(std::istream& in) : in_(in) {}

    TextNode read()
    {
        TextNode root = block(0);
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw error(errc::format_error, "line " + std::to_string(line_) + ": " + msg);
    }

    bool next(std::string& out)
    {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_;
            std::string t = trim(raw);
            if (t.empty() || t[0] == '#')
                continue;
            out = t;
            return true;
        }
        return false;
    }

    // Reads keys until the closing '}' (depth > 0) or end of input (depth 0).
    TextNode block(int depth)
    {
        TextNode node;
        std::string t;
        while (next(t)) {
            if (t == "}") {
                if (depth == 0)
                    fail("unmatched '}'");
                return node;
            }
            if (t.size() > 1 && t.back() == '{') {
                std::string key = trim(t.substr(0, t.size() - 1));
                if (!valid_key(key))
                    fail("bad key '" + key + "'");
                if (node.blocks.count(key))
                    fail("duplicate block '" + key + "'");
                node.blocks[key] = block(depth + 1);
                continue;
            }
            if (t.size() > 1 && t.back() == '[') {
                std::string key = trim(t.substr(0, t.size() - 1));
                if (!valid_key(key))
                    fail("bad key '" + key + "'");
                node.lists[key] = list(depth + 1);
                continue;
            }
            auto eq = t.find('=');
            if (eq == std::string::npos)
                fail("expected 'key = value'");
            std::string key = trim(t.substr(0, eq));
            if (!valid_key(key))
                fail("bad key '" + key + "'");
            node.set(key, trim(t.substr(eq + 1)));
        }
        if (depth != 0)
            fail("unexpected end of file inside a block");
        return node;
    }

    std::vector<TextNode> list(int depth)
    {
        std::vector<TextNode> items;
        std::string t;
        while (next(t)) {
            if (t == "]")
                return items;
            if (t != "{")
                fail("expected '{' or ']' in list");
            items.push_back(block(depth + 1));
        }
        fail("unexpected end of file inside a list");
    }

    std::istream& in_;
    int line_ = 0;
};

inline void write_node(std::ostream& os, const TextNode& n, int indent);

inline void write_values(std::ostream& os, const TextNode& n, int indent)
{
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    for (const auto& [k, v] : n.values)
        os << pad << k << " = " << v << '\n';
}

inline void write_node(std::ostream& os, const TextNode& n, int indent)
{
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    write_values(os, n, indent);
    for (const auto& [k, child] : n.blocks) {
        os << pad << k << " {\n";
        write_node(os, child, indent + 1);
        os << pad << "}\n";
    }
    for (const auto& [k, items] : n.lists) {
        os << pad << k << " [\n";
        for (const auto& item : items) {
            os << pad << "  {\n";
            write_node(os, item, indent + 2);
            os << pad << "  }\n";
        }
        os << pad << "]\n";
    }
}

inline long parse_int(const std::string& s, const char* key)
{
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::exception&) {
    }
    throw error(errc::format_error, std::string("'") + key + "' must be an integer, got '" + s + "'");
}

inline XPoly poly_field(const TextNode& n, const char* key) { return parse_xpoly(n.get(key)); }

} // namespace detail

inline TextNode read_text(std::istream& in) { return detail::TextReader(in).read(); }

inline TextNode read_text(const std::string& text)
{
    std::istringstream in(text);
    return read_text(in);
}

inline std::string write_text(const TextNode& n)
{
    std::ostringstream os;
    detail::write_node(os, n, 0);
    return os.str();
}

inline constexpr const char* identity_format = "qred-identity 1";
inline constexpr const char* derivation_format = "qred-derivation 1";

inline SeriesIdentity identity_from_node(const TextNode& n)
{
    const std::string* fmt = n.find("format");
    if (fmt && *fmt != identity_format)
        throw error(errc::format_error, "unsupported format '" + *fmt + "'");
    long step = detail::parse_int(n.get("step"), "step");
    if (step < 1)
        throw error(errc::format_error, "step must be at least 1");
    QuotientPair pair(detail::poly_field(n, "a"), detail::poly_field(n, "b"), static_cast<int>(step));
    QRat t0 = parse_qrat(n.get("t0"));
    if (t0.is_zero())
        throw error(errc::format_error, "t0 must be nonzero");
    XPoly mden = n.find("multiplier_den") ? detail::poly_field(n, "multiplier_den") : XPoly(QRat(1));
    if (mden.is_zero())
        throw error(errc::format_error, "multiplier_den is zero");
    SeriesIdentity id{n.get("name"), TermSpec(std::move(pair), t0), XRat(detail::poly_field(n, "multiplier_num"), mden), {}, n.all("note")};
    if (auto it = n.lists.find("rhs"); it != n.lists.end()) {
        for (const auto& item : it->second) {
            PochTerm term{parse_qrat(item.get("prefactor")), {}};
            if (auto f = item.lists.find("factors"); f != item.lists.end()) {
                for (const auto& fac : f->second) {
                    PochFactor pf{parse_qrat(fac.get("base")), static_cast<int>(detail::parse_int(fac.get("modulus"), "modulus")),
                                  static_cast<int>(detail::parse_int(fac.get("exponent"), "exponent"))};
                    if (pf.modulus < 1)
                        throw error(errc::format_error, "modulus must be at least 1");
                    term.factors.push_back(std::move(pf));
                }
            }
            id.rhs.push_back(std::move(term));
        }
    }
    return id;
}

inline TextNode identity_to_node(const SeriesIdentity& id, bool with_format = true)
{
    TextNode n;
    if (with_format)
        n.set("format", identity_format);
    n.set("name", id.name);
    for (const auto& note : id.notes)
        n.set("note", note);
    n.set("step", std::to_string(id.term.pair.step));
    n.set("a", to_string(id.term.pair.a));
    n.set("b", to_string(id.term.pair.b));
    n.set("t0", to_string(id.term.t0));
    auto [mnum, mden] = cleared(id.multiplier);
    n.set("multiplier_num", to_string(mnum));
    n.set("multiplier_den", to_string(mden));
    auto& rhs = n.lists["rhs"];
    for (const auto& t : id.rhs) {
        TextNode item;
        item.set("prefactor", to_string(t.prefactor));
        if (!t.factors.empty()) {
            auto& factors = item.lists["factors"];
            for (const auto& f : t.factors) {
                TextNode fn;
                fn.set("base", to_string(f.base));
                fn.set("modulus", std::to_string(f.modulus));
                fn.set("exponent", std::to_string(f.exponent));
                factors.push_back(std::move(fn));
            }
        }
        rhs.push_back(std::move(item));
    }
    return n;
}

inline Derivation derivation_from_node(const TextNode& n)
{
    const std::string* fmt = n.find("format");
    if (fmt && *fmt != derivation_format)
        throw error(errc::format_error, "unsupported format '" + *fmt + "'");
    const TextNode& s = n.block("spec");
    ShiftPairSpec spec{detail::poly_field(s, "a1"), detail::poly_field(s, "b1"), static_cast<int>(detail::parse_int(s.get("n1"), "n1")),
                       static_cast<int>(detail::parse_int(s.get("n2"), "n2"))};
    XPoly cden = detail::poly_field(n, "certificate_den");
    if (cden.is_zero())
        throw error(errc::format_error, "certificate_den is zero");
    Derivation d{identity_from_node(n.block("base")), std::move(spec), identity_from_node(n.block("output")),
                 XRat(detail::poly_field(n, "certificate_num"), cden), parse_qrat(n.get("boundary"))};
    if (const std::string* a = n.find("assumption"))
        d.assumption = *a;
    return d;
}

inline TextNode derivation_to_node(const Derivation& d)
{
    TextNode n;
    n.set("format", derivation_format);
    auto [cnum, cden] = cleared(d.certificate);
    n.set("certificate_num", to_string(cnum));
    n.set("certificate_den", to_string(cden));
    n.set("boundary", to_string(d.boundary));
    n.set("assumption", d.assumption);
    n.blocks["base"] = identity_to_node(d.base, false);
    n.blocks["output"] = identity_to_node(d.output, false);
    TextNode s;
    s.set("a1", to_string(d.spec.a1));
    s.set("b1", to_string(d.spec.b1));
    s.set("n1", std::to_string(d.spec.n1));
    s.set("n2", std::to_string(d.spec.n2));
    n.blocks["spec"] = std::move(s);
    return n;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error(errc::format_error, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw error(errc::format_error, "cannot write " + path);
}

inline SeriesIdentity load_identity(const std::string& path) { return identity_from_node(read_text(read_file(path))); }
inline Derivation load_derivation(const std::string& path) { return derivation_from_node(read_text(read_file(path))); }

} // namespace qred
