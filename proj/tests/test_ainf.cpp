#include "doctest.h"

#include <random>

#include "hocat/ainf.hpp"
#include "hocat/models.hpp"
#include "support.hpp"

using namespace hocat;

namespace {

BimodPtr diag(CatPtr c) { return std::make_shared<Bimodule>(diagonal(c)); }

// o with 1 and t in degree 1, t^2 = 0.
std::shared_ptr<Cat> exterior(Field k)
{
    auto c = std::make_shared<Cat>(k);
    c->add_object("o");
    c->add_identity(0, "1");
    c->add_arrow("t", 0, 0, 1);
    return c;
}

std::shared_ptr<Cat> killed_x(Field k)
{
    auto c = std::make_shared<Cat>(k);
    c->add_object("o");
    c->add_identity(0, "1");
    Index x = c->add_arrow("x", 0, 0, 0);
    Index e = c->add_arrow("e", 0, 0, -1);
    c->set_diff(e, Vec::unit(x));
    return c;
}

bool same_structure(const AInf& a, const AInf& b)
{
    const Cat& x = a.cat();
    const Cat& y = b.cat();
    if (x.dim() != y.dim() || x.num_objects() != y.num_objects())
        return false;
    for (Index i = 0; i < x.dim(); ++i) {
        const Arrow &p = x.arrow(i), &q = y.arrow(i);
        if (p.src != q.src || p.tgt != q.tgt || p.deg != q.deg || x.d(i) != y.d(i))
            return false;
        for (Index j = 0; j < x.dim(); ++j)
            if (x.compose(i, j) != y.compose(i, j))
                return false;
    }
    if (a.active() != b.active())
        return false;
    for (int n : a.active())
        if (n >= 3 && a.table(n) != b.table(n))
            return false;
    return true;
}

}  // namespace

TEST_CASE("DG categories satisfy the Stasheff identities")
{
    for (auto c : {CatPtr(truncated_poly(Field{}, 3)), CatPtr(killed_x(Field{})), CatPtr(exterior(Field{5}))}) {
        AInf a = AInf::from_dg(c);
        CHECK(check_stasheff(a, 4).ok);
        CHECK(a.is_dg());
    }
    auto bad = std::make_shared<Cat>(*killed_x(Field{}));
    bad->set_compose(*bad->find_arrow("x"), *bad->find_arrow("e"), Vec::unit(*bad->find_arrow("e")));
    CHECK(!check_stasheff(AInf::from_dg(bad), 3).ok);
}

TEST_CASE("deform along Hochschild cocycles")
{
    auto r = truncated_poly(Field{}, 2);
    auto m = diag(r);
    for (int n = 3; n <= 5; ++n) {
        auto h = hh(r, m, n);
        REQUIRE(h.dim == 1);
        AInf a = deform(r, m, h.basis[0]);
        CHECK(a.cat().dim() == 4);
        CHECK(a.active() == std::vector<int>{2, n});
        CHECK(check_stasheff(a, 2 * n - 2).ok);
        CHECK(a.table(n).size() == h.basis[0].values().size());
    }
    SUBCASE("zero cocycle gives the trivial extension")
    {
        HochCochain z(r, m, 4);
        AInf a = deform(r, m, z);
        CHECK(a.is_dg());
        CHECK(validate(a.cat()).ok());
    }
    SUBCASE("non-cocycles are refused, or fail Stasheff at arity n+1 when forced")
    {
        HochCochain bad(r, m, 3);
        bad.set({1, 1, 1}, Vec::unit(0));
        REQUIRE(!d_hoch(bad).is_zero());
        CHECK_THROWS_AS(deform(r, m, bad), std::invalid_argument);
        AInf forced = deform(r, m, bad, false);
        CheckReport rep = check_stasheff(forced, 4);
        CHECK(!rep.ok);
        CHECK(rep.arity == 4);
        CHECK(rep.witness.size() == 4);
    }
    CHECK_THROWS_AS(deform(r, m, HochCochain(r, m, 2)), std::invalid_argument);
}

TEST_CASE("cohomologous deformations are isomorphic")
{
    std::mt19937_64 g(3);
    auto r = truncated_poly(Field{7}, 3);
    auto m = diag(r);
    const int n = 4;
    auto h = hh(r, m, n);
    REQUIRE(h.dim >= 1);
    HochCochain xi(r, m, n - 1);
    for (auto& t : composable_tuples(*r, n - 1)) {
        Vec v;
        for (Index e : m->part(0, 0))
            v.add(e, testsupport::rnd(g, 7));
        xi.set(t, v);
    }
    HochCochain eta2 = h.basis[0];
    eta2 += d_hoch(xi);
    auto a1 = std::make_shared<AInf>(deform(r, m, h.basis[0]));
    auto a2 = std::make_shared<AInf>(deform(r, m, eta2));
    GradedFunctor id = identity_functor(a1->cat_ptr());
    for (int s : {1, -1}) {
        Cofunctor f = Cofunctor::strict(a1, a2, id);
        for (auto& [t, v] : xi.values()) {
            Vec w;
            for (auto& [i, c] : v)
                w.add(r->dim() + i, Scalar(-s) * c);
            f.set(n - 1, t, w);
        }
        CHECK(check_functor(f, functor_check_bound(f)).ok == (s == 1));
    }
}

TEST_CASE("tensor with a DG category")
{
    Field k{};
    auto r = truncated_poly(k, 2);
    auto m = diag(r);
    auto gam = upper_triangular2(k);
    SUBCASE("unit of the tensor product")
    {
        auto h = hh(r, m, 4);
        AInf a = deform(r, m, h.basis[0]);
        AInf t = tensor_dg(a, unit_cat(k));
        CHECK(same_structure(a, t));
    }
    SUBCASE("deformation commutes with tensoring")
    {
        for (int n = 3; n <= 5; ++n) {
            auto h = hh(r, m, n);
            AInf lhs = tensor_dg(deform(r, m, h.basis[0]), gam);
            auto rg = std::make_shared<Cat>(tensor(*r, *gam));
            auto mg = std::make_shared<Bimodule>(tensor_bimodule(rg, *m, *gam));
            AInf rhs = deform(rg, mg, cup_one(h.basis[0], rg, mg, *gam));
            CHECK(same_structure(lhs, rhs));
            CHECK(check_stasheff(lhs, 2 * n - 2).ok);
        }
    }
    SUBCASE("graded DG factor")
    {
        auto h = hh(r, m, 3);
        AInf t = tensor_dg(deform(r, m, h.basis[0]), killed_x(k));
        CHECK(check_stasheff(t, 4).ok);
        AInf t2 = tensor_dg(deform(r, m, h.basis[0]), exterior(k));
        CHECK(check_stasheff(t2, 4).ok);
    }
}

TEST_CASE("twisting by Maurer-Cartan elements")
{
    Field k{5};
    SUBCASE("DG input stays DG and d becomes d + [delta, -]")
    {
        auto c = exterior(k);
        AInf a = AInf::from_dg(c);
        Index t = *c->find_arrow("t");
        MCElement e{0, Vec::unit(t, Scalar(2))};
        CHECK(mc_residual(a, e).empty());
        TwResult tw = tw_category(a, {e, MCElement{0, {}}});
        CHECK(tw.tw->is_dg());
        CHECK(check_stasheff(*tw.tw, 4).ok);
        // on the endomorphisms of (o, 2t): m_1(1) = -(d 1 + [2t, 1]) = 0 and m_1(t) = -(2t t + t 2t) = 0
        const Cat& tc = tw.tw->cat();
        for (Index x = 0; x < tc.dim(); ++x) {
            Index i = tc.arrow(x).src, j = tc.arrow(x).tgt;
            Vec expect = -c->d(tw.base_arrow[x]);
            Vec dj = j == 0 ? e.delta : Vec();
            Vec di = i == 0 ? e.delta : Vec();
            Vec ux = Vec::unit(tw.base_arrow[x]);
            expect -= c->compose(dj, ux);
            expect.axpy(Scalar(sign(c->arrow(tw.base_arrow[x]).deg)), c->compose(ux, di));
            Vec got;
            for (auto& [y, s] : tw.tw->op(1, Tuple{x}))
                got.add(tw.base_arrow[y], s);
            CHECK(got == expect);
        }
    }
    SUBCASE("all delta = 0 leaves the structure unchanged")
    {
        auto r = truncated_poly(k, 2);
        auto m = diag(r);
        auto h = hh(r, m, 3);
        AInf a = deform(r, m, h.basis[0]);
        TwResult tw = tw_category(a, {MCElement{0, {}}});
        CHECK(same_structure(a, *tw.tw));
    }
    SUBCASE("a deformed category with a nonzero Maurer-Cartan element")
    {
        auto r = truncated_poly(k, 2);
        auto m = diag(r);
        auto h = hh(r, m, 3);
        auto ext = exterior(k);
        AInf a = tensor_dg(deform(r, m, h.basis[0]), ext);
        const Cat& c = a.cat();
        // search small Maurer-Cartan elements among combinations of the degree-1 arrows
        std::vector<Index> ones = c.hom(0, 0, 1);
        int found = 0;
        for (long code = 1; code < 125; ++code) {
            Vec d;
            long q = code;
            for (Index i = 0; i < ones.size() && i < 3; ++i, q /= 5)
                d.add(ones[i], Scalar::residue(q % 5, 5));
            MCElement e{0, d};
            if (!mc_residual(a, e).empty())
                continue;
            ++found;
            TwResult tw = tw_category(a, {e});
            CHECK(check_stasheff(*tw.tw, 4).ok);
        }
        CHECK(found > 0);
        MCElement bad{0, Vec::unit(*c.find_arrow("1.t")) + Vec::unit(*c.find_arrow("x.t"))};
        if (!mc_residual(a, bad).empty())
            CHECK_THROWS_AS(tw_category(a, {bad}), std::invalid_argument);
    }
}

TEST_CASE("functor equation and Maurer-Cartan pushforward")
{
    Field k{7};
    auto c = exterior(k);
    auto a = std::make_shared<AInf>(AInf::from_dg(c));
    Index t = *c->find_arrow("t");
    SUBCASE("strict functor")
    {
        Cofunctor f = Cofunctor::strict(a, a, identity_functor(c));
        CHECK(check_functor(f, 4).ok);
        MCElement e{0, Vec::unit(t, Scalar(3))};
        CHECK(mc_pushforward(f, e).delta == e.delta);
        CHECK(mc_pushforward(f, MCElement{0, {}}).delta.empty());
    }
    SUBCASE("nontrivial second coefficient")
    {
        Cofunctor f = Cofunctor::strict(a, a, identity_functor(c));
        f.set(2, {t, t}, Vec::unit(t, Scalar(2)));
        CHECK(check_functor(f, functor_check_bound(f)).ok);
        MCElement e{0, Vec::unit(t)};
        // MC(f)(t) = t + f_2(t, t) = 3t
        CHECK(mc_pushforward(f, e).delta == Vec::unit(t, Scalar::residue(3, 7)));
        CHECK(tw_cofunctor_check(f, {e}, {{Vec::unit(t), 0, 0}, {Vec::unit(0), 0, 0}}, 3).ok);
    }
    SUBCASE("corrupted second coefficient is caught on composable degree-0 pairs")
    {
        auto kx = killed_x(k);
        auto b = std::make_shared<AInf>(AInf::from_dg(kx));
        Cofunctor f = Cofunctor::strict(b, b, identity_functor(kx));
        Index x = *kx->find_arrow("x"), e = *kx->find_arrow("e");
        CHECK(tw_cofunctor_check(f, {MCElement{0, {}}}, {{Vec::unit(x), 0, 0}}, 2).ok);
        f.set(2, {x, x}, Vec::unit(e));
        CheckReport rep = tw_cofunctor_check(f, {MCElement{0, {}}}, {{Vec::unit(x), 0, 0}}, 2);
        CHECK(!rep.ok);
        CHECK(rep.witness == std::vector<std::string>{"u0", "u0"});
        CHECK(!check_functor(f, 3).ok);
    }
}
