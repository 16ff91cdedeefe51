#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "hocat/io.hpp"
#include "hocat/models.hpp"
#include "support.hpp"

using namespace hocat;
using testsupport::random_cochain;

namespace {

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::filesystem::path> example_docs()
{
    std::vector<std::filesystem::path> out;
    for (auto& e : std::filesystem::directory_iterator(HOCAT_EXAMPLES_DIR))
        if (e.path().extension() == ".glc")
            out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

// Same objects, arrows and tables, compared by name.
void same_category(const Cat& a, const Cat& b)
{
    REQUIRE(a.num_objects() == b.num_objects());
    REQUIRE(a.dim() == b.dim());
    for (Index x = 0; x < a.dim(); ++x) {
        CHECK(a.arrow(x).name == b.arrow(x).name);
        CHECK(a.arrow(x).deg == b.arrow(x).deg);
        CHECK(a.is_identity(x) == b.is_identity(x));
        CHECK(a.d(x) == b.d(x));
        for (Index y = 0; y < a.dim(); ++y)
            CHECK(a.compose(x, y) == b.compose(x, y));
    }
}

Document single_category(CatPtr c)
{
    Document d;
    d.field = c->field();
    d.categories["A"] = std::const_pointer_cast<Cat>(c);
    d.sections.push_back({"category", "A"});
    return d;
}

}  // namespace

TEST_CASE("vectors: format and parse are inverse")
{
    std::mt19937_64 g(11);
    std::vector<std::string> names{"1", "x", "x2", "e", "ex"};
    std::map<std::string, Index> index;
    for (Index i = 0; i < names.size(); ++i)
        index[names[i]] = i;
    for (Field k : {Field{}, Field{7}}) {
        for (int trial = 0; trial < 200; ++trial) {
            Vec v;
            for (Index i = 0; i < names.size(); ++i)
                if (g() % 2) {
                    long num = static_cast<long>(g() % 19) - 9, den = static_cast<long>(g() % 4) + 1;
                    v.add(i, k.p ? Scalar(num).in_field(k.p) / Scalar(den).in_field(k.p) : Scalar(num, den));
                }
            std::string s = format_vec(v, names);
            CAPTURE(s);
            CHECK(parse_vec(s, index, k) == v);
        }
    }
    Field q{};
    CHECK(format_vec(Vec(), names) == "0");
    CHECK(parse_vec("- x + 2*x - 1/2*e", index, q) == Vec::unit(1) + Scalar(-1, 2) * Vec::unit(3));
    CHECK(format_vec(parse_vec("-1/2*e + x", index, q), names) == "x - 1/2*e");
    CHECK(parse_vec("3*x", index, Field{3}).empty());
    CHECK_THROWS_AS(parse_vec("y", index, q), std::invalid_argument);
    CHECK_THROWS_AS(parse_vec("x +", index, q), std::invalid_argument);
    CHECK_THROWS_AS(parse_vec("x x", index, q), std::invalid_argument);
}

TEST_CASE("example documents are canonical")
{
    auto docs = example_docs();
    REQUIRE(docs.size() >= 6);
    for (auto& p : docs) {
        CAPTURE(p.string());
        std::string text = slurp(p);
        Document d = parse_document(text);
        CHECK(serialize(d) == text);
    }
}

TEST_CASE("parsed documents match the built-in models")
{
    Document d = parse_document(slurp(std::filesystem::path(HOCAT_EXAMPLES_DIR) / "moore.glc"));
    same_category(*d.category("B"), *gapped_dual_numbers(Field{}, -3));
    same_category(*d.category("H"), *h0_functor(gapped_dual_numbers(Field{}, -3)).h0);
    CHECK(d.twisted.at("I").tw.size() == 3);

    Document e = parse_document(slurp(std::filesystem::path(HOCAT_EXAMPLES_DIR) / "dual_numbers.glc"));
    same_category(*e.category("R"), *truncated_poly(Field{}, 2));
    CHECK(e.bimodule("M")->dim() == 2);
    CHECK(e.bimodule("M")->left_ptr() == e.category("R"));
}

TEST_CASE("random categories and cochains survive a round trip")
{
    std::mt19937_64 g(5);
    for (int trial = 0; trial < 20; ++trial) {
        CAPTURE(trial);
        Field k{7};
        std::vector<QuiverArrow> arrows{{"a", 0, 1}, {"b", 1, 2}, {"c", 0, 2}};
        if (trial % 2)
            arrows.push_back({"l", 1, 1});
        std::vector<std::vector<std::string>> zero;
        if (trial % 3 == 0)
            zero.push_back({"b", "a"});
        auto c = path_category(k, {"p", "q", "r"}, arrows, zero, 2 + trial % 2);
        Document d = single_category(c);
        auto m = std::make_shared<Bimodule>(diagonal(c));
        d.bimodules["M"] = m;
        d.diagonal_of["M"] = "A";
        d.bimodule_over["M"] = {"A", "A"};
        d.sections.push_back({"bimodule", "M"});
        int n = 1 + trial % 3;
        d.cochains["phi"] = std::make_shared<HochCochain>(random_cochain(g, c, m, n, 7));
        d.cochain_over["phi"] = {"A", "M"};
        d.sections.push_back({"cochain", "phi"});

        std::string text = serialize(d);
        Document back = parse_document(text);
        CHECK(serialize(back) == text);
        same_category(*back.category("A"), *c);
        const HochCochain& phi = *back.cochains.at("phi");
        CHECK(phi.values() == d.cochains.at("phi")->values());
    }
}

TEST_CASE("non-canonical input is normalized")
{
    std::string messy = "# dual numbers, written by hand\n"
                        "glc   1\n"
                        "field QQ\n"
                        "category R\n"
                        "  arrow x : o -> o deg 0   # declared after use below is not allowed, so objects first\n";
    CHECK_THROWS_AS(parse_document(messy + "end\n"), ParseError);

    std::string text = "glc 1\nfield 7\n"
                       "category R\n  object o\n  arrow 1 : o -> o deg 0 identity\n  arrow x : o -> o deg 0\n"
                       "  arrow x2 : o -> o deg 0\n  compose x x = 8*x2 # reduced mod 7\nend\n"
                       "module N over R\n  element v at o deg 0\n  element w at o deg 0\n"
                       "  left x2 v = 0\n  left x v = w\nend\n";
    Document d = parse_document(text);
    std::string canon = serialize(d);
    CHECK(canon == "glc 1\nfield F7\n\n"
                   "category R\n  object o\n  arrow 1 : o -> o deg 0 identity\n  arrow x : o -> o deg 0\n"
                   "  arrow x2 : o -> o deg 0\n  compose x x = x2\nend\n\n"
                   "module N over R\n  element v at o deg 0\n  element w at o deg 0\n  left x v = w\nend\n");
    CHECK(serialize(parse_document(canon)) == canon);

    Document over = parse_document(canon, Field{});
    CHECK(over.field == Field{});
    CHECK(serialize(over).find("field Q\n") != std::string::npos);
}

TEST_CASE("input errors carry line numbers")
{
    auto line_of = [](const std::string& text) {
        try {
            parse_document(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    std::string head = "glc 1\nfield Q\n";
    std::string r = "category R\n  object o\n  arrow 1 : o -> o deg 0 identity\n  arrow x : o -> o deg 0\n";
    CHECK(line_of("glc 2\n") == 1);
    CHECK(line_of("glc 1\nfield F6\n") == 2);
    CHECK(line_of(head + r + "  compose x x = y\nend\n") == 7);
    CHECK(line_of(head + r + "  arrow s : o -> o deg 1\n  compose x x = s\nend\n") == 3);
    CHECK(line_of(head + r + "  compose x\nend\n") == 7);
    CHECK(line_of(head + r) == 3);                                 // no end
    CHECK(line_of(head + r + "end\nbimodule M = diagonal S\n") == 8);
    CHECK(line_of(head + r + "end\ncategory R\n  object p\nend\n") == 8);
    CHECK(line_of(head + r + "end\nbimodule M = diagonal R\ncochain c over R M arity 2\n  value x 1 = x\nend\n") ==
          10);
    CHECK(line_of(head + r + "end\nbimodule M = diagonal R\ncochain c over R M arity 1\n  value x = y\nend\n") ==
          10);
    CHECK(line_of(head + r + "end\ntwisted X over R\n  comp o 0\n  comp o 0\n  delta 0 1 = 1\nend\n") == 8);
    CHECK(line_of(head + r + "end\ncover U charts 2\n  element 1 ring R\n  element 1,2 ring R\nend\n") == 8);
    CHECK(line_of(head + "widget W\n") == 3);
}
