#include "doctest.h"

#include "hocat/glc.hpp"
#include "hocat/models.hpp"

using namespace hocat;

namespace {

// o with 1, x (deg 0), e (deg -1), d(e) = x, all products of x, e vanish.
std::shared_ptr<Cat> killed_x(Field k)
{
    auto c = std::make_shared<Cat>(k);
    Index o = c->add_object("o");
    c->add_identity(o, "1");
    Index x = c->add_arrow("x", o, o, 0);
    Index e = c->add_arrow("e", o, o, -1);
    c->set_diff(e, Vec::unit(x));
    return c;
}

}  // namespace

TEST_CASE("dual numbers form a valid category")
{
    auto r = truncated_poly(Field{}, 2);
    CHECK(validate(*r).ok());
    CHECK(r->dim() == 2);
    CHECK(r->compose(1, 1).empty());
}

TEST_CASE("corrupted associativity is reported with the failing triple")
{
    auto r = truncated_poly(Field{}, 3);
    REQUIRE(validate(*r).ok());
    auto x = *r->find_arrow("x"), x2 = *r->find_arrow("x2");
    r->set_compose(x2, x, Vec::unit(x2));
    Report rep = validate(*r);
    REQUIRE(!rep.ok());
    CHECK(rep.str().find("associativity fails on (x, x, x)") != std::string::npos);
}

TEST_CASE("path categories are valid")
{
    Field k{5};
    auto a3 = path_category(k, {"1", "2", "3"}, {{"a", 0, 1}, {"b", 1, 2}}, {{"b", "a"}}, 4);
    CHECK(validate(*a3).ok());
    CHECK(a3->dim() == 5);
    auto cyc = path_category(k, {"1", "2"}, {{"a", 0, 1}, {"b", 1, 0}}, {}, 3);
    CHECK(validate(*cyc).ok());
    CHECK(cyc->find_arrow("a.b.a"));
}

TEST_CASE("Leibniz failures are detected")
{
    auto c = killed_x(Field{});
    CHECK(validate(*c).ok());
    auto bad = std::make_shared<Cat>(*c);
    bad->set_compose(*bad->find_arrow("e"), *bad->find_arrow("x"), Vec::unit(*bad->find_arrow("e")));
    CHECK(!validate(*bad).ok());
}

TEST_CASE("tensor products of valid categories are valid")
{
    auto r = truncated_poly(Field{7}, 2);
    auto g = upper_triangular2(Field{7});
    CHECK(validate(*g).ok());
    Cat t = tensor(*r, *g);
    CHECK(validate(t).ok());
    CHECK(t.dim() == 6);
    CHECK(t.basis_identities());
    Cat t2 = tensor(*killed_x(Field{7}), *killed_x(Field{7}));
    CHECK(validate(t2).ok());
    Cat unit = tensor(*r, *unit_cat(Field{7}));
    CHECK(unit.dim() == r->dim());
}

TEST_CASE("bimodules: diagonal and degree parts")
{
    auto r = truncated_poly(Field{}, 3);
    Bimodule m = diagonal(r);
    CHECK(validate(m).ok());
    CHECK(validate(diagonal(killed_x(Field{}))).ok());
    Bimodule bad = m;
    bad.set_left(*r->find_arrow("x"), *m.find("x"), Vec::unit(*m.find("1")));
    CHECK(!validate(bad).ok());
}

TEST_CASE("h0_functor")
{
    SUBCASE("zero differential: degree-0 part")
    {
        auto r = truncated_poly(Field{}, 2);
        Bimodule m = diagonal(r);
        auto ext = std::make_shared<Cat>(trivial_extension(*r, m, 3));
        CHECK(validate(*ext).ok());
        auto [h, g] = h0_functor(ext);
        CHECK(h->dim() == 2);
        CHECK(validate(*h).ok());
        CHECK(validate(g, true).ok());
    }
    SUBCASE("a coboundary dies")
    {
        auto c = killed_x(Field{});
        auto [h, g] = h0_functor(c);
        CHECK(h->dim() == 1);
        CHECK(g.on_arrows[*c->find_arrow("x")].empty());
        CHECK(validate(*h).ok());
        CHECK(validate(g, true).ok());
    }
    SUBCASE("positive degrees are refused")
    {
        auto c = std::make_shared<Cat>(Field{});
        Index o = c->add_object("o");
        c->add_identity(o, "1");
        c->add_arrow("z", o, o, 1);
        CHECK_THROWS_AS(h0_functor(c), std::invalid_argument);
    }
}

TEST_CASE("tau_le0")
{
    SUBCASE("non-positive, no differential: unchanged")
    {
        auto r = truncated_poly(Field{}, 2);
        Cat ext = trivial_extension(*r, diagonal(r), 2);
        Cat t = tau_le0(ext);
        CHECK(t.dim() == ext.dim());
        CHECK(validate(t).ok());
    }
    SUBCASE("positive part removed, degree 0 cut to cocycles")
    {
        Cat c{Field{}};
        Index o = c.add_object("o");
        c.add_identity(o, "1");
        Index y = c.add_arrow("y", o, o, 0);
        Index z = c.add_arrow("z", o, o, 1);
        c.set_diff(y, Vec::unit(z));
        REQUIRE(validate(c).ok());
        Cat t = tau_le0(c);
        CHECK(t.dim() == 1);
        CHECK(validate(t).ok());
    }
}
