#include "doctest.h"

#include "hocat/massey.hpp"
#include "tw_support.hpp"

using namespace hocat;
using testsupport::a3;
using testsupport::random_closed;
using testsupport::RandomTw;

namespace {

Vec arrow(const Cat& c, const std::string& name)
{
    return Vec::unit(*c.find_arrow(name), c.field().one());
}

}  // namespace

TEST_CASE("Massey products with strictly vanishing composites")
{
    auto r = truncated_poly(Field{5}, 2);
    TwObject o = single(r, 0);
    Block x;
    x[{0, 0}] = arrow(*r, "x");
    MasseySet m = massey_dg(massey_homs(o, o, o, o), x, x, x);
    CHECK(m.contains(Block{}));
    CHECK(m.coords().empty());

    Block one;
    one[{0, 0}] = r->identity(0);
    CHECK_THROWS_AS(massey_dg(massey_homs(o, o, o, o), one, one, x), std::invalid_argument);
    CHECK_THROWS_AS(massey_tri(o, o, o, o, one, one, x), std::invalid_argument);
}

TEST_CASE("Massey products: coset law, triangles and the two definitions")
{
    int instances = 0, nonzero_indet = 0, nontrivial_h = 0;
    for (CatPtr base : {CatPtr(truncated_poly(Field{5}, 2)), a3(Field{5})}) {
        RandomTw gen{std::mt19937_64(23), base};
        for (int trial = 0; trial < 14; ++trial) {
            TwObject x = gen.make(), y = gen.make(), u = gen.make();
            Block f = random_closed(gen.g, TwHom(x, y));
            Cone c = cone(x, y, f);
            TwObject sx = shift(x, 1);
            // the triangle itself: id in <p, i, f>
            MasseySet d = massey_dg(massey_homs(x, y, c.c, sx), f, c.i, c.p);
            CHECK(d.contains(suspension_unit(x)));
            MasseySet t = massey_tri(x, y, c.c, sx, f, c.i, c.p);
            CHECK(d.same_coset(t));
            CHECK(t.contains(suspension_unit(x)));
            // a general triple X -> Y -> C -> U through Sigma X
            Block w = random_closed(gen.g, TwHom(sx, u));
            Block h = compose(*base, w, c.p);
            MasseySet dg = massey_dg(massey_homs(x, y, c.c, u), f, c.i, h);
            MasseySet tri = massey_tri(x, y, c.c, u, f, c.i, h);
            CHECK(dg.same_coset(tri));
            for (int k = 0; k < 5; ++k) {
                CHECK(dg.same_coset(massey_dg(massey_homs(x, y, c.c, u), f, c.i, h, &gen.g)));
                CHECK(dg.same_coset(massey_tri(x, y, c.c, u, f, c.i, h, &gen.g)));
            }
            if (dg.indeterminacy_dim() > 0)
                ++nonzero_indet;
            if (!h.empty())
                ++nontrivial_h;
            ++instances;
        }
    }
    CHECK(instances >= 20);
    CHECK(nonzero_indet > 0);
    CHECK(nontrivial_h > 0);
}

TEST_CASE("a completing map exists exactly when id is in the Massey product")
{
    int yes = 0, no = 0;
    for (CatPtr base : {CatPtr(truncated_poly(Field{5}, 2)), a3(Field{5})}) {
        RandomTw gen{std::mt19937_64(31), base};
        for (int trial = 0; trial < 12; ++trial) {
            TwObject x = gen.make(), y = gen.make();
            Block f = random_closed(gen.g, TwHom(x, y));
            Cone c = cone(x, y, f);
            TwObject sx = shift(x, 1);
            for (long scale : {1L, 2L, 0L}) {
                Block h = scaled(c.p, Scalar::residue(scale, 5));
                MasseySet m = massey_dg(massey_homs(x, y, c.c, sx), f, c.i, h);
                bool member = m.contains(suspension_unit(x));
                auto comp = triangle_completion(x, y, c.c, f, c.i, h);
                CHECK(member == comp.has_value());
                (member ? yes : no)++;
            }
        }
    }
    CHECK(yes > 0);
    CHECK(no > 0);
}

TEST_CASE("Massey product with f = 0 and with no room in degree -1")
{
    auto r = truncated_poly(Field{5}, 2);
    TwObject x = single(r, 0), y = single(r, 0);
    Cone c = cone(x, y, {});
    TwObject sx = shift(x, 1);
    MasseySet d = massey_dg(massey_homs(x, y, c.c, sx), {}, c.i, c.p);
    MasseySet t = massey_tri(x, y, c.c, sx, {}, c.i, c.p);
    CHECK(d.same_coset(t));
    CHECK(d.contains(suspension_unit(x)));
    // split triangle: 0 and id both lie in the coset
    CHECK(d.contains(Block{}));

    // H^-1(X, U) = 0: the coset is {0}
    Block xx;
    xx[{0, 0}] = arrow(*r, "x");
    MasseySet z = massey_dg(massey_homs(x, x, x, x), xx, xx, xx);
    CHECK(z.ambient_dim() == 0);
    CHECK(z.contains(Block{}));
}

TEST_CASE("certifying triangles through G")
{
    Field k{};
    auto b = gapped_dual_numbers(k, -3);
    H0Result h = h0_functor(b);
    TwObject res{h.h0, {{0, 0}, {0, -1}, {0, -2}}, {}};
    res.delta[{0, 1}] = arrow(*h.h0, "x");
    res.delta[{1, 2}] = arrow(*h.h0, "x");

    // X = Y = I(k), f = x componentwise
    Block f;
    for (Index i = 0; i < 3; ++i)
        f[{i, i}] = arrow(*h.h0, "x");
    Cone cs = cone(res, res, f);
    Triangle s{res, res, cs.c, f, cs.i, cs.p};

    TwObject lx = moore_object(h, res, 2);
    auto lf = lift_map(h, lx, lx, f);
    REQUIRE(lf);
    CHECK(lf->homotopy.empty());
    Cone ct = cone(lx, lx, lf->map);
    Triangle t{lx, lx, ct.c, lf->map, ct.i, ct.p};
    TriangleCertificate cert = certify_triangle(h, s, t);
    CHECK_MESSAGE(cert.distinguished, cert.failed);
    REQUIRE(cert.x);
    CHECK(TwHom(ct.c, ct.c).is_cocycle(0, *cert.x));

    // identity functor: b = H^0(b)
    auto r = truncated_poly(k, 2);
    H0Result hr = h0_functor(r);
    TwObject rx{hr.h0, {{0, 0}, {0, -1}}, {{{0, 1}, arrow(*hr.h0, "x")}}};
    TwObject tx{r, rx.comps, {{{0, 1}, arrow(*r, "x")}}};
    Block rf, tf;
    rf[{1, 1}] = hr.h0->identity(0);
    tf[{1, 1}] = r->identity(0);
    rf[{0, 0}] = hr.h0->identity(0);
    tf[{0, 0}] = r->identity(0);
    Cone c1 = cone(rx, rx, rf), c2 = cone(tx, tx, tf);
    CHECK(certify_triangle(hr, {rx, rx, c1.c, rf, c1.i, c1.p}, {tx, tx, c2.c, tf, c2.i, c2.p}).distinguished);

    // injected faults
    Triangle bad = t;
    bad.h = scaled(ct.p, Scalar(2));
    TriangleCertificate c3 = certify_triangle(h, s, bad);
    CHECK(!c3.distinguished);
    CHECK(c3.failed == "G o L = id on morphisms");
    Triangle s0 = s, t0 = t;
    s0.h = {};
    t0.h = {};
    TriangleCertificate c4 = certify_triangle(h, s0, t0);
    CHECK(!c4.distinguished);
    CHECK(c4.failed == "source triangle: id not in <h, g, f>");
}

TEST_CASE("filtered Massey products restrict to the graded pieces")
{
    for (CatPtr base : {CatPtr(truncated_poly(Field{5}, 2)), a3(Field{5})}) {
        RandomTw gen{std::mt19937_64(41), base};
        int flagged = 0;
        for (int trial = 0; trial < 10; ++trial) {
            FiltObject x, y;
            x.tw = gen.make(&x.index);
            y.tw = gen.make(&y.index);
            Block f = random_closed(gen.g, filt_hom(x, y));
            Cone c = cone(x.tw, y.tw, f);
            FiltObject cf{c.c, x.index};
            cf.index.insert(cf.index.end(), y.index.begin(), y.index.end());
            FiltObject sx{shift(x.tw, 1), x.index};
            REQUIRE(validate(cf).ok());
            MasseySet m = massey_dg(filt_massey_homs(x, y, cf, sx), f, c.i, c.p);
            Block id = suspension_unit(x.tw);
            CHECK(m.contains(id));
            for (auto& g : filtered_massey_gr(x, y, cf, sx, f, c.i, c.p, id))
                CHECK(g.member);
            for (auto& g : filtered_massey_gr(x, y, cf, sx, f, c.i, c.p, m.rep()))
                CHECK(g.member);
            // a fault: twice the identity
            for (auto& g : filtered_massey_gr(x, y, cf, sx, f, c.i, c.p, scaled(id, Scalar::residue(2, 5))))
                if (!g.member)
                    ++flagged;
        }
        CHECK(flagged > 0);
    }
}
