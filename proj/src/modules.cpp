#include "hocat/modules.hpp"

#include <stdexcept>

namespace hocat {

namespace {

int koszul(int a, int b) { return (a & 1) && (b & 1) ? -1 : 1; }

Scalar one_of(const Cat& c) { return c.field().one(); }

// Coordinates of v in the span of the columns of basis; throws when v is outside.
Vec coords_in(const LinearSystem& ls, const Vec& v, const char* what)
{
    auto x = ls.solve(v);
    if (!x)
        throw std::logic_error(std::string("vector leaves the ") + what);
    return *x;
}

Matrix columns(const std::vector<Vec>& vs, Index rows)
{
    Matrix m(rows, vs.size());
    for (Index j = 0; j < vs.size(); ++j)
        m.set_col(j, vs[j]);
    return m;
}

}  // namespace

Cat opposite(const Cat& c)
{
    Cat o(c.field());
    for (Index a = 0; a < c.num_objects(); ++a)
        o.add_object(c.object_name(a));
    for (Index x = 0; x < c.dim(); ++x) {
        const Arrow& ax = c.arrow(x);
        if (c.is_identity(x))
            o.add_identity(ax.src, ax.name);
        else
            o.add_arrow(ax.name, ax.tgt, ax.src, ax.deg);
    }
    for (auto& [k, v] : c.compose_table()) {
        auto [g, f] = k;
        o.set_compose(f, g, Scalar(koszul(c.arrow(g).deg, c.arrow(f).deg)) * v);
    }
    for (auto& [x, v] : c.diff_table())
        o.set_diff(x, v);
    return o;
}

Bimodule representable(CatPtr c, Index a)
{
    Bimodule out = left_module(c);
    std::map<Index, Index> el;
    for (Index x : c->from(a)) {
        const Arrow& ax = c->arrow(x);
        el[x] = out.add_element(ax.name, 0, ax.tgt, ax.deg);
    }
    for (auto& [x, e] : el)
        for (Index y : c->from(c->arrow(x).tgt)) {
            if (c->is_identity(y))
                continue;
            Vec w;
            for (auto& [z, s] : c->compose(y, x))
                w.add(el.at(z), s);
            out.set_left(y, e, w);
        }
    return out;
}

Bimodule left_part(const Bimodule& m, Index a)
{
    CatPtr c = m.left_ptr();
    Bimodule out = left_module(c);
    std::map<Index, Index> el;
    for (Index e = 0; e < m.dim(); ++e)
        if (m.element(e).src == a)
            el[e] = out.add_element(m.element(e).name, 0, m.element(e).tgt, m.element(e).deg);
    for (auto& [e, i] : el)
        for (Index x : c->from(m.element(e).tgt)) {
            if (c->is_identity(x))
                continue;
            Vec w;
            for (auto& [f, s] : m.act_left(x, e))
                w.add(el.at(f), s);
            out.set_left(x, i, w);
        }
    return out;
}

Bimodule right_part(const Bimodule& m, Index b, CatPtr op)
{
    const Cat& c = m.right();
    if (op->dim() != c.dim() || op->num_objects() != c.num_objects())
        throw std::invalid_argument("right_part: category is not the opposite of the right category");
    Bimodule out = left_module(op);
    std::map<Index, Index> el;
    for (Index e = 0; e < m.dim(); ++e)
        if (m.element(e).tgt == b)
            el[e] = out.add_element(m.element(e).name, 0, m.element(e).src, m.element(e).deg);
    for (auto& [e, i] : el)
        for (Index y : c.into(m.element(e).src)) {
            if (c.is_identity(y))
                continue;
            Vec w;
            for (auto& [f, s] : m.act_right(e, y))
                w.add(el.at(f), s);
            out.set_left(y, i, Scalar(koszul(c.arrow(y).deg, m.element(e).deg)) * w);
        }
    return out;
}

Bimodule twist(const Bimodule& n, const GradedFunctor& s)
{
    const Cat& c = n.left();
    for (Index a = 0; a < c.num_objects(); ++a)
        if (s.on_objects.at(a) != a)
            throw std::invalid_argument("twist: functor must fix objects");
    Bimodule out(n.left_ptr(), n.right_ptr());
    for (auto& el : n.elements())
        out.add_element(el.name, el.src, el.tgt, el.deg);
    for (Index e = 0; e < n.dim(); ++e) {
        Vec ue = Vec::unit(e, one_of(c));
        for (Index x : c.from(n.element(e).tgt))
            if (!c.is_identity(x))
                out.set_left(x, e, n.act_left(s.on_arrows.at(x), ue));
        for (Index y : n.right().into(n.element(e).src))
            if (!n.right().is_identity(y))
                out.set_right(e, y, n.act_right(e, y));
    }
    return out;
}

Bimodule twisted_diagonal(CatPtr c, const GradedFunctor& s)
{
    for (Index a = 0; a < c->num_objects(); ++a)
        if (s.on_objects.at(a) != a)
            throw std::invalid_argument("twisted_diagonal: functor must fix objects");
    Bimodule out(c, c);
    for (auto& ax : c->arrows())
        out.add_element(ax.name, ax.src, ax.tgt, ax.deg);
    for (Index m = 0; m < c->dim(); ++m) {
        for (Index x : c->from(c->arrow(m).tgt))
            if (!c->is_identity(x))
                out.set_left(x, m, c->compose(x, m));
        for (Index y : c->into(c->arrow(m).src))
            if (!c->is_identity(y))
                out.set_right(m, y, c->compose(Vec::unit(m, one_of(*c)), s.on_arrows.at(y)));
    }
    return out;
}

Vec HomK::apply(const Vec& phi, Index u) const
{
    Vec out;
    for (auto& [e, s] : phi)
        if (entry[e].first == u)
            out.add(entry[e].second, s);
    return out;
}

HomK hom_k(ModPtr n, ModPtr p)
{
    CatPtr c = n->left_ptr();
    if (p->left_ptr() != c)
        throw std::invalid_argument("hom_k: modules over different categories");
    HomK h;
    h.n = n;
    h.p = p;
    h.m = std::make_shared<Bimodule>(c, c);
    for (Index a = 0; a < c->num_objects(); ++a)
        for (Index b = 0; b < c->num_objects(); ++b)
            for (Index i : n->part(0, a))
                for (Index j : p->part(0, b)) {
                    Index e = h.m->add_element(n->element(i).name + ">" + p->element(j).name, a, b,
                                               p->element(j).deg - n->element(i).deg);
                    h.index[{i, j}] = e;
                    h.entry.push_back({i, j});
                }
    for (Index e = 0; e < h.m->dim(); ++e) {
        auto [i, j] = h.entry[e];
        Index a = n->element(i).tgt, b = p->element(j).tgt;
        for (Index x : c->from(b)) {
            if (c->is_identity(x))
                continue;
            Vec w;
            for (auto& [l, s] : p->act_left(x, j))
                w.add(h.at(i, l), s);
            h.m->set_left(x, e, w);
        }
        for (Index y : c->into(a)) {
            if (c->is_identity(y))
                continue;
            Vec w;
            for (Index u : n->part(0, c->arrow(y).src)) {
                Scalar s = n->act_left(y, u).get(i);
                if (!s.is_zero())
                    w.add(h.at(u, j), s);
            }
            h.m->set_right(e, y, w);
        }
    }
    return h;
}

HochCochain transport(const HochCochain& c, const HomK& from, const HomK& to, const std::vector<Vec>& beta,
                      const std::vector<Vec>& alpha)
{
    if (c.module_ptr() != from.m)
        throw std::invalid_argument("transport: cochain is not valued in the source Hom space");
    HochCochain out(c.cat_ptr(), to.m, c.arity());
    for (auto& [t, v] : c.values()) {
        Vec w;
        for (auto& [e, s] : v) {
            auto [i, j] = from.entry[e];
            for (Index i2 = 0; i2 < to.n->dim(); ++i2) {
                Scalar b = beta.at(i2).get(i);
                if (b.is_zero())
                    continue;
                for (auto& [j2, a] : alpha.at(j))
                    w.add(to.at(i2, j2), s * b * a);
            }
        }
        out.set(t, w);
    }
    return out;
}

Vec TensorModule::cls(Index mel, Index uel) const
{
    Index b = bimod->element(mel).tgt;
    auto it = ambient.find({mel, uel});
    if (it == ambient.end())
        return {};
    Vec out;
    for (auto& [k, s] : quot[b].project(Vec::unit(it->second, one_of(bimod->left()))))
        out.add(offset[b] + k, s);
    return out;
}

TensorModule tensor_over(BimodPtr m, ModPtr u)
{
    CatPtr c = m->left_ptr();
    if (m->right_ptr() != u->left_ptr())
        throw std::invalid_argument("tensor_over: module is not over the right category of the bimodule");
    const Cat& r = m->right();
    TensorModule t;
    t.bimod = m;
    t.u = u;
    t.m = std::make_shared<Bimodule>(left_module(c));
    std::vector<std::vector<std::pair<Index, Index>>> pairs(c->num_objects());
    for (Index e = 0; e < m->dim(); ++e)
        for (Index v : u->part(0, m->element(e).src)) {
            Index b = m->element(e).tgt;
            t.ambient[{e, v}] = pairs[b].size();
            pairs[b].push_back({e, v});
        }
    for (Index b = 0; b < c->num_objects(); ++b) {
        std::vector<Vec> rel;
        for (Index e = 0; e < m->dim(); ++e) {
            if (m->element(e).tgt != b)
                continue;
            for (Index y : r.into(m->element(e).src)) {
                if (r.is_identity(y))
                    continue;
                for (Index v : u->part(0, r.arrow(y).src)) {
                    Vec w;
                    for (auto& [f, s] : m->act_right(e, y))
                        w.add(t.ambient.at({f, v}), s);
                    for (auto& [v2, s] : u->act_left(y, v))
                        w.add(t.ambient.at({e, v2}), -s);
                    if (!w.empty())
                        rel.push_back(w);
                }
            }
        }
        t.quot.emplace_back(columns(rel, pairs[b].size()), Matrix(0, pairs[b].size()));
        t.offset.push_back(t.m->dim());
        const Cohomology& q = t.quot.back();
        for (Index k = 0; k < q.dim(); ++k) {
            auto [e, v] = pairs[b][q.basis()[k].leading()];
            t.m->add_element(m->element(e).name + "*" + u->element(v).name, 0, b,
                             m->element(e).deg + u->element(v).deg);
        }
    }
    for (Index b = 0; b < c->num_objects(); ++b)
        for (Index k = 0; k < t.quot[b].dim(); ++k)
            for (Index x : c->from(b)) {
                if (c->is_identity(x))
                    continue;
                Vec w;
                for (auto& [l, s] : t.quot[b].basis()[k]) {
                    auto [e, v] = pairs[b][l];
                    for (auto& [f, s2] : m->act_left(x, e))
                        w.axpy(s * s2, t.cls(f, v));
                }
                t.m->set_left(x, t.offset[b] + k, w);
            }
    return t;
}

Vec HomModule::eval(Index phi, Index mel) const
{
    Vec out;
    for (Index v = 0; v < u->dim(); ++v) {
        auto it = ambient.find({mel, v});
        if (it == ambient.end())
            continue;
        Scalar s = maps.at(phi).get(it->second);
        if (!s.is_zero())
            out.add(v, s);
    }
    return out;
}

HomModule hom_over(BimodPtr m, ModPtr u)
{
    CatPtr c = m->left_ptr();
    const Cat& r = m->right();
    if (u->left_ptr() != c)
        throw std::invalid_argument("hom_over: module is not over the left category of the bimodule");
    HomModule h;
    h.bimod = m;
    h.u = u;
    h.m = std::make_shared<Bimodule>(left_module(m->right_ptr()));
    Index na = r.num_objects();
    std::vector<Index> first(na + 1, 0);
    std::vector<std::vector<Vec>> basis(na);
    Index count = 0;
    for (Index a = 0; a < na; ++a) {
        first[a] = count;
        for (Index e = 0; e < m->dim(); ++e)
            if (m->element(e).src == a)
                for (Index v : u->part(0, m->element(e).tgt))
                    h.ambient[{e, v}] = count++;
    }
    first[na] = count;
    for (Index a = 0; a < na; ++a) {
        // constraints phi(x m) = x phi(m)
        std::vector<Vec> rows;
        for (Index e = 0; e < m->dim(); ++e) {
            if (m->element(e).src != a)
                continue;
            for (Index x : c->from(m->element(e).tgt)) {
                if (c->is_identity(x))
                    continue;
                for (Index v2 : u->part(0, c->arrow(x).tgt)) {
                    Vec row;
                    for (auto& [f, s] : m->act_left(x, e))
                        row.add(h.ambient.at({f, v2}) - first[a], s);
                    for (Index v : u->part(0, m->element(e).tgt)) {
                        Scalar s = u->act_left(x, v).get(v2);
                        if (!s.is_zero())
                            row.add(h.ambient.at({e, v}) - first[a], -s);
                    }
                    if (!row.empty())
                        rows.push_back(row);
                }
            }
        }
        Index width = first[a + 1] - first[a];
        Matrix cons(rows.size(), width);
        for (Index i = 0; i < rows.size(); ++i)
            for (auto& [j, s] : rows[i])
                cons.add(i, j, s);
        for (auto& k : kernel_basis(cons)) {
            Vec g;
            for (auto& [j, s] : k)
                g.add(first[a] + j, s);
            basis[a].push_back(g);
            h.m->add_element("hom" + std::to_string(h.maps.size()) + "@" + r.object_name(a), 0, a, 0);
            h.maps.push_back(g);
        }
    }
    std::vector<Index> start(na, 0);
    for (Index a = 0, s = 0; a < na; ++a) {
        start[a] = s;
        s += basis[a].size();
    }
    std::vector<LinearSystem> solver;
    for (Index a = 0; a < na; ++a)
        solver.emplace_back(columns(basis[a], count));
    for (Index a = 0; a < na; ++a)
        for (Index k = 0; k < basis[a].size(); ++k)
            for (Index y : r.from(a)) {
                if (r.is_identity(y))
                    continue;
                Index a2 = r.arrow(y).tgt;
                // (y . phi)(m2) = phi(m2 y)
                Vec img;
                for (Index e2 = 0; e2 < m->dim(); ++e2) {
                    if (m->element(e2).src != a2)
                        continue;
                    for (auto& [e, s] : m->act_right(e2, y))
                        for (Index v : u->part(0, m->element(e).tgt)) {
                            Scalar p = basis[a][k].get(h.ambient.at({e, v}));
                            if (!p.is_zero())
                                img.add(h.ambient.at({e2, v}), s * p);
                        }
                }
                Vec w;
                for (auto& [j, s] : coords_in(solver[a2], img, "module of homomorphisms"))
                    w.add(start[a2] + j, s);
                h.m->set_left(y, start[a] + k, w);
            }
    return h;
}

bool is_projective(const Bimodule& n)
{
    const Cat& c = n.left();
    // unknown s(e) coefficient on the free generator g along arrow x
    std::map<std::tuple<Index, Index, Index>, Index> var;
    for (Index e = 0; e < n.dim(); ++e)
        for (Index g = 0; g < n.dim(); ++g)
            for (Index x : c.hom(n.element(g).tgt, n.element(e).tgt))
                var[{e, g, x}] = var.size();
    std::vector<std::pair<Vec, Scalar>> eqs;
    Scalar one = one_of(c);
    for (Index e = 0; e < n.dim(); ++e) {
        Index b = n.element(e).tgt;
        for (Index e2 : n.part(0, b)) {
            Vec row;
            for (Index g = 0; g < n.dim(); ++g)
                for (Index x : c.hom(n.element(g).tgt, b)) {
                    Scalar s = n.act_left(x, g).get(e2);
                    if (!s.is_zero())
                        row.add(var.at({e, g, x}), s);
                }
            eqs.push_back({row, e == e2 ? one : Scalar(0)});
        }
        for (Index y : c.from(b)) {
            if (c.is_identity(y))
                continue;
            Index b2 = c.arrow(y).tgt;
            Vec ye = n.act_left(y, e);
            for (Index g = 0; g < n.dim(); ++g)
                for (Index z : c.hom(n.element(g).tgt, b2)) {
                    Vec row;
                    for (auto& [e3, s] : ye)
                        row.add(var.at({e3, g, z}), s);
                    for (Index x : c.hom(n.element(g).tgt, b)) {
                        Scalar s = c.compose(y, x).get(z);
                        if (!s.is_zero())
                            row.add(var.at({e, g, x}), -s);
                    }
                    if (!row.empty())
                        eqs.push_back({row, Scalar(0)});
                }
        }
    }
    Matrix a(eqs.size(), var.size());
    Vec rhs;
    for (Index i = 0; i < eqs.size(); ++i) {
        for (auto& [j, s] : eqs[i].first)
            a.add(i, j, s);
        if (!eqs[i].second.is_zero())
            rhs.add(i, eqs[i].second);
    }
    return solve(a, rhs).has_value();
}

bool right_projective(const Bimodule& m)
{
    auto op = std::make_shared<Cat>(opposite(m.right()));
    for (Index b = 0; b < m.left().num_objects(); ++b)
        if (!is_projective(right_part(m, b, op)))
            return false;
    return true;
}

bool left_projective(const Bimodule& m)
{
    for (Index a = 0; a < m.right().num_objects(); ++a)
        if (!is_projective(left_part(m, a)))
            return false;
    return true;
}

std::vector<Index> ext_dims(ModPtr n, ModPtr p, int max_n)
{
    HomK h = hom_k(n, p);
    return hh_dims(n->left_ptr(), h.m, max_n);
}

namespace {

// One step of the resolution: free module on gens mapping onto x, with its kernel.
struct FreeStep {
    std::vector<Index> gens;                 // elements of x chosen as generators
    std::vector<std::vector<std::pair<Index, Index>>> basis;  // per object: (generator slot, arrow)
    std::vector<std::vector<Vec>> kernel;    // per object, in free coordinates
};

FreeStep cover(const Bimodule& x)
{
    const Cat& c = x.left();
    Index no = c.num_objects();
    FreeStep st;
    std::vector<Reducer> span(no);
    for (Index e = 0; e < x.dim(); ++e) {
        Index a = x.element(e).tgt;
        if (span[a].contains(Vec::unit(e, one_of(c))))
            continue;
        st.gens.push_back(e);
        for (Index y : c.from(a))
            span[c.arrow(y).tgt].insert(x.act_left(y, e));
    }
    st.basis.resize(no);
    st.kernel.resize(no);
    for (Index g = 0; g < st.gens.size(); ++g)
        for (Index y : c.from(x.element(st.gens[g]).tgt))
            st.basis[c.arrow(y).tgt].push_back({g, y});
    for (Index b = 0; b < no; ++b) {
        Matrix pi(x.dim(), st.basis[b].size());
        for (Index j = 0; j < st.basis[b].size(); ++j) {
            auto [g, y] = st.basis[b][j];
            pi.set_col(j, x.act_left(y, st.gens[g]));
        }
        st.kernel[b] = kernel_basis(pi);
    }
    return st;
}

Bimodule kernel_module(CatPtr c, const FreeStep& st, int step)
{
    Bimodule k = left_module(c);
    Index no = c->num_objects();
    std::vector<Index> start(no);
    std::vector<std::map<std::pair<Index, Index>, Index>> pos(no);
    for (Index b = 0; b < no; ++b) {
        start[b] = k.dim();
        for (Index j = 0; j < st.basis[b].size(); ++j)
            pos[b][st.basis[b][j]] = j;
        for (Index i = 0; i < st.kernel[b].size(); ++i)
            k.add_element("z" + std::to_string(step) + "." + c->object_name(b) + "." + std::to_string(i), 0, b, 0);
    }
    for (Index b = 0; b < no; ++b) {
        for (Index y : c->from(b)) {
            if (c->is_identity(y))
                continue;
            Index b2 = c->arrow(y).tgt;
            LinearSystem ls(columns(st.kernel[b2], st.basis[b2].size()));
            for (Index i = 0; i < st.kernel[b].size(); ++i) {
                Vec img;
                for (auto& [j, s] : st.kernel[b][i]) {
                    auto [g, x] = st.basis[b][j];
                    for (auto& [z, s2] : c->compose(y, x))
                        img.add(pos[b2].at({g, z}), s * s2);
                }
                Vec w;
                for (auto& [l, s] : coords_in(ls, img, "kernel of the free cover"))
                    w.add(start[b2] + l, s);
                k.set_left(y, start[b] + i, w);
            }
        }
    }
    return k;
}

}  // namespace

std::vector<Index> ext_dims_resolution(ModPtr n, ModPtr p, int max_n)
{
    CatPtr c = n->left_ptr();
    for (Index e = 0; e < n->dim(); ++e)
        if (n->element(e).deg != 0)
            throw std::invalid_argument("ext_dims_resolution: ungraded modules only");
    // steps[i] covers the i-th syzygy; Hom(F_i, P) = sum over generators g of P(obj g)
    std::vector<FreeStep> steps;
    std::vector<Bimodule> syz{*n};
    for (int i = 0; i <= max_n + 1; ++i) {
        steps.push_back(cover(syz.back()));
        syz.push_back(kernel_module(c, steps.back(), i));
    }
    auto hom_dim_index = [&](int i) {
        std::vector<std::pair<Index, Index>> idx;  // (generator, P element)
        const Bimodule& x = syz[i];
        for (Index g = 0; g < steps[i].gens.size(); ++g)
            for (Index v : p->part(0, x.element(steps[i].gens[g]).tgt))
                idx.push_back({g, v});
        return idx;
    };
    std::vector<std::vector<std::pair<Index, Index>>> hom;
    for (int i = 0; i <= max_n + 1; ++i)
        hom.push_back(hom_dim_index(i));
    // delta_i : Hom(F_i, P) -> Hom(F_{i+1}, P)
    auto delta = [&](int i) {
        Matrix d(hom[i + 1].size(), hom[i].size());
        std::map<std::pair<Index, Index>, Index> row;
        for (Index r = 0; r < hom[i + 1].size(); ++r)
            row[hom[i + 1][r]] = r;
        const Bimodule& k = syz[i + 1];
        for (Index col = 0; col < hom[i].size(); ++col) {
            auto [g, v] = hom[i][col];
            for (Index g2 = 0; g2 < steps[i + 1].gens.size(); ++g2) {
                Index el = steps[i + 1].gens[g2];
                Index b = k.element(el).tgt;
                // position of el inside kernel[b]
                Index first = 0;
                for (Index e = 0; e < el; ++e)
                    if (k.element(e).tgt == b)
                        ++first;
                for (auto& [j, s] : steps[i].kernel[b][first]) {
                    auto [gj, x] = steps[i].basis[b][j];
                    if (gj != g)
                        continue;
                    for (auto& [v2, s2] : p->act_left(x, v))
                        d.add(row.at({g2, v2}), col, s * s2);
                }
            }
        }
        return d;
    };
    std::vector<Index> out;
    Matrix prev(hom[0].size(), 0);
    for (int i = 0; i <= max_n; ++i) {
        Matrix next = delta(i);
        out.push_back(Cohomology(prev, next).dim());
        prev = next;
    }
    return out;
}

}  // namespace hocat
