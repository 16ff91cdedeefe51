#include "doctest.h"
#include "support.hpp"

#include "hocat/linalg.hpp"

using namespace hocat;
using namespace testsupport;

TEST_CASE("scalar arithmetic in Q and F_p")
{
    Scalar a(1, 2), b(1, 3);
    CHECK((a + b) == Scalar(5, 6));
    CHECK((a * b).str() == "1/6");
    CHECK((a / b) == Scalar(3, 2));
    CHECK((a - a).is_zero());
    Scalar x = Scalar::residue(3, 7);
    CHECK((x * x.inverse()).is_one());
    CHECK((x + Scalar(4)).is_zero());
    CHECK((Scalar(1, 2) * Scalar::residue(2, 7)).is_one());
    CHECK_THROWS_AS(Scalar(1, 7).in_field(7), ArithmeticError);
    CHECK_THROWS_AS(Scalar::residue(1, 5) + Scalar::residue(1, 7), ArithmeticError);
    CHECK_THROWS_AS(Scalar().inverse(), ArithmeticError);
    CHECK(parse_field("F7").p == 7);
    CHECK(parse_field("Q").p == 0);
    CHECK_THROWS(parse_field("F8"));
    CHECK(Field{5}.parse("-1/2") == Scalar::residue(2, 5));
}

TEST_CASE("field axioms on random F_p and Q samples")
{
    std::mt19937_64 g(11);
    for (int t = 0; t < 200; ++t) {
        Scalar a = rnd(g, 13), b = rnd(g, 13), c = rnd(g, 13);
        CHECK((a + b) * c == a * c + b * c);
        CHECK((a * b) * c == a * (b * c));
        if (!a.is_zero())
            CHECK((a / a).is_one());
        Scalar q(static_cast<long>(g() % 50) - 25, static_cast<long>(g() % 9) + 1);
        Scalar r(static_cast<long>(g() % 50) - 25, static_cast<long>(g() % 9) + 1);
        CHECK((q + r) - r == q);
        if (!r.is_zero())
            CHECK((q / r) * r == q);
    }
}

TEST_CASE("sparse vector operations")
{
    Vec v;
    v.add(3, Scalar(2));
    v.add(1, Scalar(1));
    v.add(3, Scalar(-2));
    CHECK(v.size() == 1);
    CHECK(v.get(1) == Scalar(1));
    Vec w = Vec::unit(1, Scalar(-1)) + Vec::unit(5);
    v += w;
    CHECK(v == Vec::unit(5));
}

TEST_CASE("solve: identity map returns b")
{
    Matrix id(4, 4);
    for (Index i = 0; i < 4; ++i)
        id.add(i, i, Scalar(1));
    Vec b = Vec::unit(0, Scalar(3)) + Vec::unit(2, Scalar(-1, 2));
    auto x = solve(id, b);
    REQUIRE(x);
    CHECK(*x == b);
}

TEST_CASE("solve: zero map with nonzero b is inconsistent")
{
    Matrix z(3, 3);
    CHECK(!solve(z, Vec::unit(1)));
    CHECK(solve(z, Vec()));
}

TEST_CASE("solve: random rank-4 8x6 systems over F_7")
{
    std::mt19937_64 g(2024);
    for (int t = 0; t < 30; ++t) {
        // A = L * R with L 8x4, R 4x6 has rank <= 4; keep draws of rank exactly 4.
        Matrix L = random_matrix(g, 8, 4, 7, 0.8), R = random_matrix(g, 4, 6, 7, 0.8);
        Matrix A = L.after(R);
        if (dense_rank(A, 7) != 4)
            continue;
        CHECK(rank(A) == 4);
        Vec x0;
        for (Index j = 0; j < 6; ++j)
            x0.push_back(j, rnd(g, 7));
        Vec b = A.apply(x0);
        auto x = solve(A, b);
        REQUIRE(x);
        CHECK(A.apply(*x) == b);
        CHECK(kernel_basis(A).size() == 2);
    }
}

TEST_CASE("kernel_basis examples")
{
    Matrix id(3, 3);
    for (Index i = 0; i < 3; ++i)
        id.add(i, i, Scalar(1));
    CHECK(kernel_basis(id).empty());
    CHECK(kernel_basis(Matrix(2, 5)).size() == 5);
    Matrix j(3, 3);
    j.add(0, 1, Scalar(1));
    j.add(1, 2, Scalar(1));
    auto k = kernel_basis(j);
    CHECK(k.size() == 3 - dense_rank(j, 101));
    CHECK(k.size() == 1);
    CHECK(j.apply(k[0]).empty());
}

TEST_CASE("kernel and rank agree with the dense oracle")
{
    std::mt19937_64 g(5);
    for (int t = 0; t < 40; ++t) {
        Index r = 1 + g() % 9, c = 1 + g() % 9;
        Matrix a = random_matrix(g, r, c, 5, 0.4);
        auto k = kernel_basis(a);
        CHECK(k.size() == c - dense_rank(a, 5));
        for (auto& v : k)
            CHECK(a.apply(v).empty());
        Matrix km(c, k.size());
        for (Index i = 0; i < k.size(); ++i)
            km.set_col(i, k[i]);
        CHECK(dense_rank(km, 5) == k.size());
    }
}

TEST_CASE("cohomology examples")
{
    SUBCASE("zero differentials")
    {
        Cohomology h(Matrix(3, 0), Matrix(0, 3));
        CHECK(h.dim() == 3);
    }
    SUBCASE("exact two-step complex")
    {
        Matrix d(1, 1);
        d.add(0, 0, Scalar(1));
        Cohomology h(d, Matrix(0, 1));
        CHECK(h.dim() == 0);
    }
    SUBCASE("k -0-> k^2 -(1,0)-> k")
    {
        Matrix dout(1, 2);
        dout.add(0, 0, Scalar(1));
        Cohomology h(Matrix(2, 1), dout);
        CHECK(h.dim() == 2 - dense_rank(dout, 101));
        CHECK(h.dim() == 1);
        CHECK(h.project(h.basis()[0]) == Vec::unit(0));
    }
    SUBCASE("precondition")
    {
        Matrix a(1, 1), b(1, 1);
        a.add(0, 0, Scalar(1));
        b.add(0, 0, Scalar(1));
        CHECK_THROWS_AS(Cohomology(a, b), std::invalid_argument);
    }
}

TEST_CASE("cohomology of random complexes: dimension, projection, determinism")
{
    std::mt19937_64 g(77);
    for (int t = 0; t < 30; ++t) {
        // Build d_out o d_in = 0 by factoring through a kernel.
        Index n = 3 + g() % 6;
        Matrix dout = random_matrix(g, 1 + g() % 4, n, 7, 0.5);
        auto z = kernel_basis(dout);
        Index m = 1 + g() % 4;
        Matrix din(n, m);
        for (Index j = 0; j < m; ++j) {
            Vec v;
            for (auto& k : z)
                v.axpy(rnd(g, 7), k);
            din.set_col(j, v);
        }
        Cohomology h(din, dout);
        CHECK(h.dim() == (n - dense_rank(dout, 7)) - dense_rank(din, 7));
        for (Index k = 0; k < h.dim(); ++k)
            CHECK(h.project(h.basis()[k]) == Vec::unit(k));
        for (Index j = 0; j < m; ++j)
            CHECK(h.is_coboundary(din.col(j)));
        Cohomology h2(din, dout);
        CHECK(h2.basis() == h.basis());
    }
}

TEST_CASE("sparse maps check the degree shift")
{
    GradedSpace a, b;
    a.add("u", 0);
    b.add("v", 1);
    b.add("w", 2);
    Matrix m(2, 1);
    m.add(0, 0, Scalar(1));
    CHECK_NOTHROW(SparseMap(a, b, 1, m));
    Matrix bad(2, 1);
    bad.add(1, 0, Scalar(1));
    CHECK_THROWS(SparseMap(a, b, 1, bad));
    SparseMap f(a, b, 1, m);
    CHECK(solve(f, Vec::unit(0)) == std::optional<Vec>(Vec::unit(0)));
    CHECK(kernel_basis(f).empty());
}
