#include "doctest.h"

#include <random>

#include "hocat/hoch.hpp"
#include "hocat/models.hpp"
#include "support.hpp"

using namespace hocat;
using testsupport::dense_rank;
using testsupport::random_cochain;

namespace {

BimodPtr diag(CatPtr c) { return std::make_shared<Bimodule>(diagonal(c)); }

std::vector<CatPtr> small_categories(Field k)
{
    return {
        truncated_poly(k, 2),
        truncated_poly(k, 3),
        upper_triangular2(k),
        path_category(k, {"1", "2", "3"}, {{"a", 0, 1}, {"b", 1, 2}}, {}, 2),
        path_category(k, {"1", "2"}, {{"a", 0, 1}, {"b", 1, 0}}, {{"a", "b", "a"}, {"b", "a", "b"}}, 3),
    };
}

}  // namespace

TEST_CASE("Hochschild differential of a 1-cochain on dual numbers")
{
    auto r = truncated_poly(Field{}, 2);
    auto m = diag(r);
    Index x = *r->find_arrow("x");
    HochCochain phi(r, m, 1);
    phi.set({x}, Vec::unit(*m->find("1")));
    HochCochain d = d_hoch(phi);
    CHECK(d.at({x, x}) == Vec::unit(*m->find("x"), Scalar(2)));
    CHECK(d.values().size() == 1);
}

TEST_CASE("d o d = 0 and matrix/pointwise agreement on random cochains")
{
    std::mt19937_64 g(11);
    Field k{7};
    for (auto& a : small_categories(k)) {
        auto m = diag(a);
        HochComplex cx(a, m);
        for (int n = 0; n <= 3; ++n) {
            HochCochain phi = random_cochain(g, a, m, n, 7);
            HochCochain dphi = d_hoch(phi);
            CHECK(d_hoch(dphi).is_zero());
            CHECK(cx.to_vector(dphi) == cx.differential(n).apply(cx.to_vector(phi)));
            CHECK(cx.from_vector(n, cx.to_vector(phi)) == phi);
            CHECK(cx.differential(n + 1).after(cx.differential(n)).is_zero());
        }
    }
}

TEST_CASE("HH of k x k")
{
    auto c = std::make_shared<Cat>(Field{});
    c->add_object("A");
    c->add_object("B");
    c->add_identity(0, "1A");
    c->add_identity(1, "1B");
    auto dims = hh_dims(c, diag(c), 4);
    CHECK(dims == std::vector<Index>{2, 0, 0, 0, 0});
}

TEST_CASE("HH of dual numbers against the closed-form 2x2 complex")
{
    for (Field k : {Field{}, Field{2}, Field{5}}) {
        auto r = truncated_poly(k, 2);
        auto dims = hh_dims(r, diag(r), 8);
        // Normalized complex: C^n spanned by (x,..,x) -> 1 and -> x; d_n sends 1 to (1 + (-1)^(n+1)) x.
        auto dmat = [&](int n) {
            Matrix d(2, 2);
            if (n >= 1)
                d.add(1, 0, k.from_int(1 + sign(n + 1)));
            return d;
        };
        long p = k.p ? k.p : 1000003;
        for (int n = 0; n <= 8; ++n) {
            Index dimc = 2;
            Index expect = dimc - dense_rank(dmat(n), p) - (n ? dense_rank(dmat(n - 1), p) : 0);
            CHECK(dims[static_cast<Index>(n)] == expect);
        }
    }
    auto r = truncated_poly(Field{}, 2);
    CHECK(hh_dims(r, diag(r), 8) == std::vector<Index>{2, 1, 1, 1, 1, 1, 1, 1, 1});
}

TEST_CASE("HH of k[x]/x^3 and of a path algebra")
{
    auto r = truncated_poly(Field{}, 3);
    CHECK(hh_dims(r, diag(r), 5) == std::vector<Index>{3, 2, 2, 2, 2, 2});
    auto a2 = path_category(Field{}, {"1", "2"}, {{"a", 0, 1}}, {}, 1);
    CHECK(hh_dims(a2, diag(a2), 3) == std::vector<Index>{1, 0, 0, 0});
}

TEST_CASE("normalized and full complexes have the same cohomology")
{
    Field k{3};
    for (auto& a : small_categories(k)) {
        auto m = diag(a);
        HochComplex norm(a, m, true), full(a, m, false);
        for (int n = 0; n <= 3; ++n)
            CHECK(norm.cohomology(n).dim() == full.cohomology(n).dim());
    }
}

TEST_CASE("classes: coboundaries project to zero, basis projects to units")
{
    std::mt19937_64 g(5);
    auto r = truncated_poly(Field{}, 3);
    auto m = diag(r);
    HochComplex cx(r, m);
    for (int n = 0; n <= 3; ++n) {
        HochCochain b = d_hoch(random_cochain(g, r, m, n, 101));
        CHECK(hh_class(cx, b).coords.empty());
        auto res = hh(r, m, n + 1);
        for (Index i = 0; i < res.basis.size(); ++i)
            CHECK(hh_class(cx, res.basis[i]).coords == Vec::unit(i));
    }
    HochCochain notz(r, m, 1);
    notz.set({*r->find_arrow("x")}, Vec::unit(*m->find("1")));
    CHECK_THROWS(hh_class(cx, notz));
}

TEST_CASE("cup with a degree-0 category preserves cocycles")
{
    Field k{};
    auto r = truncated_poly(k, 2);
    auto m = diag(r);
    auto gam = upper_triangular2(k);
    auto ab = std::make_shared<Cat>(tensor(*r, *gam));
    auto mb = std::make_shared<Bimodule>(tensor_bimodule(ab, *m, *gam));
    CHECK(validate(*mb).ok());
    for (int n = 1; n <= 4; ++n) {
        auto h = hh(r, m, n);
        REQUIRE(h.dim == 1);
        HochCochain c = cup_one(h.basis[0], ab, mb, *gam);
        CHECK(!c.is_zero());
        CHECK(d_hoch(c).is_zero());
        HochComplex cx(ab, mb);
        CHECK(!hh_class(cx, c).coords.empty());
    }
}
