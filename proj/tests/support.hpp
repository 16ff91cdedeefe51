#pragma once

#include <random>
#include <vector>

#include "hocat/hoch.hpp"

namespace testsupport {

using hocat::Index;
using hocat::Matrix;
using hocat::Scalar;
using hocat::Vec;

inline Scalar rnd(std::mt19937_64& g, std::uint32_t p)
{
    return Scalar::residue(static_cast<long>(g() % p), p);
}

inline Matrix random_matrix(std::mt19937_64& g, Index rows, Index cols, std::uint32_t p, double density = 0.5)
{
    std::uniform_real_distribution<double> u(0, 1);
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            if (u(g) < density)
                m.add(i, j, rnd(g, p));
    return m;
}

// Independent dense rank over F_p, plain Gaussian elimination on long integers.
inline Index dense_rank(const Matrix& m, long p)
{
    std::vector<std::vector<long>> a(m.rows(), std::vector<long>(m.cols(), 0));
    for (Index j = 0; j < m.cols(); ++j)
        for (auto& [i, c] : m.col(j))
            a[i][j] = static_cast<long>(c.in_field(static_cast<std::uint32_t>(p)).raw_residue());
    auto inv = [p](long x) {
        long r = 1, e = p - 2;
        x %= p;
        while (e) {
            if (e & 1)
                r = r * x % p;
            x = x * x % p;
            e >>= 1;
        }
        return r;
    };
    Index r = 0;
    for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
        Index piv = r;
        while (piv < m.rows() && a[piv][c] == 0)
            ++piv;
        if (piv == m.rows())
            continue;
        std::swap(a[piv], a[r]);
        long iv = inv(a[r][c]);
        for (auto& x : a[r])
            x = x * iv % p;
        for (Index i = 0; i < m.rows(); ++i)
            if (i != r && a[i][c]) {
                long f = a[i][c];
                for (Index k = 0; k < m.cols(); ++k)
                    a[i][k] = ((a[i][k] - f * a[r][k]) % p + p) % p;
            }
        ++r;
    }
    return r;
}

inline hocat::HochCochain random_cochain(std::mt19937_64& g, hocat::CatPtr a, hocat::BimodPtr m, int n,
                                         std::uint32_t p)
{
    hocat::HochCochain phi(a, m, n);
    for (auto& t : hocat::composable_tuples(*a, n)) {
        Index s = hocat::tuple_src(*a, t, n), e = hocat::tuple_tgt(*a, t, n);
        Vec v;
        for (Index i : m->part(s, e))
            v.add(i, rnd(g, p));
        phi.set(t, v);
    }
    return phi;
}

}  // namespace testsupport
