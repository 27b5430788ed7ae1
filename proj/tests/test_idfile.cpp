#include <filesystem>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace qtest;
namespace fs = std::filesystem;

namespace {

errc code_of(const std::string& text)
{
    try {
        identity_from_node(read_text(text));
    } catch (const error& e) {
        return e.code();
    }
    return errc::internal;
}

const char* minimal = "format = qred-identity 1\n"
                      "name = geometric\n"
                      "step = 1\n"
                      "a = q\n"
                      "b = 1\n"
                      "t0 = 1\n"
                      "multiplier_num = 1\n"
                      "multiplier_den = 1\n"
                      "rhs [\n"
                      "  {\n"
                      "    prefactor = 1/(1-q)\n"
                      "  }\n"
                      "]\n";

} // namespace

TEST(TextFormat, ReadsNestedStructure)
{
    TextNode n = read_text("# comment\nk = v = w\nblk {\n  inner = 1\n}\nlst [\n  {\n    a = 1\n  }\n  {\n    b = 2\n  }\n]\n");
    EXPECT_EQ(n.get("k"), "v = w");
    EXPECT_EQ(n.block("blk").get("inner"), "1");
    ASSERT_EQ(n.lists.at("lst").size(), 2u);
    EXPECT_EQ(n.lists.at("lst")[1].get("b"), "2");
    EXPECT_EQ(read_text(write_text(n)).get("k"), "v = w");
}

TEST(TextFormat, Errors)
{
    for (const char* bad : {"no equals sign\n", "blk {\n a = 1\n", "}\n", "lst [\n a = 1\n]\n", "b@d = 1\n", "x {\n}\nx {\n}\n"}) {
        try {
            read_text(std::string(bad));
            ADD_FAILURE() << bad;
        } catch (const error& e) {
            EXPECT_EQ(e.code(), errc::format_error) << bad;
            EXPECT_NE(std::string(e.what()).find("line "), std::string::npos) << e.what();
        }
    }
}

TEST(IdentityFile, Minimal)
{
    SeriesIdentity id = identity_from_node(read_text(std::string(minimal)));
    EXPECT_EQ(id.name, "geometric");
    EXPECT_EQ(id.term.pair.a, X("q"));
    ASSERT_EQ(id.rhs.size(), 1u);
    EXPECT_TRUE(id.rhs[0].factors.empty());
    EXPECT_LT(eval_series(id, Rat(1, 2), 200, 128).absdiff, parse_bigfloat("1e-30", 128));
}

TEST(IdentityFile, Errors)
{
    std::string m = minimal;
    auto with = [&](const std::string& from, const std::string& to) {
        std::string s = m;
        s.replace(s.find(from), from.size(), to);
        return s;
    };
    EXPECT_EQ(code_of(with("qred-identity 1", "qred-identity 2")), errc::format_error);
    EXPECT_EQ(code_of(with("step = 1", "step = 0")), errc::format_error);
    EXPECT_EQ(code_of(with("step = 1", "step = one")), errc::format_error);
    EXPECT_EQ(code_of(with("t0 = 1", "t0 = 0")), errc::format_error);
    EXPECT_EQ(code_of(with("multiplier_den = 1", "multiplier_den = 0")), errc::format_error);
    EXPECT_EQ(code_of(with("a = q\n", "")), errc::format_error);
    EXPECT_EQ(code_of(with("a = q", "a = q^")), errc::syntax_error);
}

TEST(IdentityFile, RoundTrip)
{
    for (const auto& entry : fs::directory_iterator(data_path("identities"))) {
        SeriesIdentity id = load_identity(entry.path().string());
        std::string text = write_text(identity_to_node(id));
        EXPECT_EQ(identity_from_node(read_text(text)), id) << entry.path();
        EXPECT_EQ(write_text(identity_to_node(identity_from_node(read_text(text)))), text);
    }
}

TEST(DerivationFile, RoundTrip)
{
    int count = 0;
    for (const auto& entry : fs::directory_iterator(data_path("derivations"))) {
        std::string text = read_file(entry.path().string());
        Derivation d = derivation_from_node(read_text(text));
        EXPECT_TRUE(verify_derivation(d)) << entry.path();
        EXPECT_EQ(write_text(derivation_to_node(d)), text) << entry.path();
        ++count;
    }
    EXPECT_EQ(count, 8);
}

TEST(DerivationFile, Errors)
{
    std::string text = read_file(data_path("derivations/q-bauer-2k-1-squared.qder"));
    std::string bad = text;
    bad.replace(bad.find("qred-derivation 1"), 17, "qred-identity 1");
    EXPECT_THROW(derivation_from_node(read_text(bad)), error);
    bad = text;
    auto pos = bad.find("certificate_den = ");
    bad.replace(pos, bad.find('\n', pos) - pos, "certificate_den = 0");
    EXPECT_THROW(derivation_from_node(read_text(bad)), error);
    EXPECT_THROW(load_derivation(data_path("derivations/missing.qder")), error);
}
