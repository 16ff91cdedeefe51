#include "hocat/cech.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hocat {

namespace {

Vec apply_images(const std::vector<Vec>& images, const Vec& v)
{
    Vec out;
    for (auto& [a, c] : v)
        out.axpy(c, images.at(a));
    return out;
}

bool is_subset(const std::vector<int>& a, const std::vector<int>& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<Vec> identity_images(const Cat& r)
{
    std::vector<Vec> out;
    for (Index a = 0; a < r.dim(); ++a)
        out.push_back(Vec::unit(a, r.field().one()));
    return out;
}

Matrix columns(const std::vector<Vec>& vs, Index rows)
{
    Matrix m(rows, vs.size());
    for (Index j = 0; j < vs.size(); ++j)
        m.set_col(j, vs[j]);
    return m;
}

}  // namespace

bool CoverPoset::leq(Index i, Index j) const
{
    return is_subset(subsets.at(j), subsets.at(i));
}

std::optional<Index> CoverPoset::find(const std::vector<int>& s) const
{
    for (Index i = 0; i < subsets.size(); ++i)
        if (subsets[i] == s)
            return i;
    return std::nullopt;
}

Vec CoverPoset::restrict(Index i, Index j, const Vec& v) const
{
    if (i == j)
        return v;
    return apply_images(rho.at({i, j}), v);
}

std::string CoverPoset::name(Index i) const
{
    std::string s = "U";
    for (int c : subsets.at(i))
        s += std::to_string(c);
    return s;
}

Report validate(const CoverPoset& p)
{
    Report r;
    if (p.rings.size() != p.size()) {
        r.fail("cover: one ring per poset element required");
        return r;
    }
    for (Index i = 0; i < p.size(); ++i) {
        const auto& s = p.subsets[i];
        if (s.empty())
            r.fail("cover: empty subset");
        if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
            r.fail("cover: subset " + p.name(i) + " is not strictly increasing");
        for (int c : s)
            if (c < 1 || c > p.n)
                r.fail("cover: chart " + std::to_string(c) + " out of range");
        for (Index j = 0; j < i; ++j)
            if (p.subsets[j] == s)
                r.fail("cover: repeated subset " + p.name(i));
        for (Index drop = 0; s.size() > 1 && drop < s.size(); ++drop) {
            std::vector<int> t = s;
            t.erase(t.begin() + static_cast<long>(drop));
            if (!p.find(t))
                r.fail("cover: " + p.name(i) + " present but a face is missing");
        }
    }
    if (!r.ok())
        return r;
    for (Index i = 0; i < p.size(); ++i) {
        const Cat& o = *p.rings[i];
        if (o.num_objects() != 1 || !o.basis_identities() || o.min_degree() != 0 || o.max_degree() != 0 ||
            o.has_diff()) {
            r.fail("cover: O(" + p.name(i) + ") must be a one-object algebra in degree 0");
            continue;
        }
        Report v = validate(o);
        for (auto& f : v.failures)
            r.fail("cover: O(" + p.name(i) + "): " + f);
        for (Index a = 0; a < o.dim(); ++a)
            for (Index b = 0; b < o.dim(); ++b)
                if (o.compose(a, b) != o.compose(b, a))
                    r.fail("cover: O(" + p.name(i) + ") is not commutative");
    }
    for (auto& [ij, img] : p.rho)
        if (ij.first >= p.size() || ij.second >= p.size() || ij.first == ij.second || !p.leq(ij.second, ij.first))
            r.fail("cover: restriction between incomparable elements");
    if (!r.ok())
        return r;
    for (Index i = 0; i < p.size(); ++i)
        for (Index j = 0; j < p.size(); ++j) {
            if (i == j || !p.leq(j, i))
                continue;
            auto it = p.rho.find({i, j});
            std::string what = "restriction " + p.name(i) + " -> " + p.name(j);
            const Cat &oi = *p.rings[i], &oj = *p.rings[j];
            if (it == p.rho.end() || it->second.size() != oi.dim()) {
                r.fail("cover: " + what + " missing");
                continue;
            }
            bool range = true;
            for (const Vec& v : it->second)
                if (!v.empty() && v.max_index() >= oj.dim())
                    range = false;
            if (!range) {
                r.fail("cover: " + what + " leaves O(" + p.name(j) + ")");
                continue;
            }
            if (p.restrict(i, j, oi.identity(0)) != oj.identity(0))
                r.fail("cover: " + what + " is not unital");
            for (Index a = 0; a < oi.dim(); ++a)
                for (Index b = 0; b < oi.dim(); ++b)
                    if (p.restrict(i, j, oi.compose(a, b)) !=
                        oj.compose(it->second[a], it->second[b]))
                        r.fail("cover: " + what + " is not multiplicative");
        }
    if (!r.ok())
        return r;
    for (Index i = 0; i < p.size(); ++i)
        for (Index j = 0; j < p.size(); ++j)
            for (Index k = 0; k < p.size(); ++k) {
                if (i == j || j == k || !p.leq(j, i) || !p.leq(k, j))
                    continue;
                for (Index a = 0; a < p.rings[i]->dim(); ++a) {
                    Vec v = Vec::unit(a, p.rings[i]->field().one());
                    if (p.restrict(j, k, p.restrict(i, j, v)) != p.restrict(i, k, v))
                        r.fail("cover: restrictions " + p.name(i) + " -> " + p.name(j) + " -> " + p.name(k) +
                               " are not functorial");
                }
            }
    return r;
}

CoverPoset redundant_cover(CatPtr r, int m)
{
    CoverPoset p;
    p.n = m;
    for (int size = 1; size <= m; ++size)
        for (unsigned mask = 1; mask < (1u << m); ++mask) {
            std::vector<int> s;
            for (int c = 0; c < m; ++c)
                if (mask & (1u << c))
                    s.push_back(c + 1);
            if (static_cast<int>(s.size()) == size)
                p.subsets.push_back(s);
        }
    std::stable_sort(p.subsets.begin(), p.subsets.end(), [](auto& a, auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    p.rings.assign(p.subsets.size(), r);
    for (Index i = 0; i < p.size(); ++i)
        for (Index j = 0; j < p.size(); ++j)
            if (i != j && p.leq(j, i))
                p.rho[{i, j}] = identity_images(*r);
    return p;
}

CoverPoset disjoint_cover(const std::vector<CatPtr>& rings)
{
    CoverPoset p;
    p.n = static_cast<int>(rings.size());
    for (int c = 1; c <= p.n; ++c)
        p.subsets.push_back({c});
    p.rings = rings;
    return p;
}

CoverCat build_cover_cat(const CoverPoset& p)
{
    Report rep = validate(p);
    if (!rep.ok())
        throw std::invalid_argument(rep.str());
    CoverCat x;
    x.cat = std::make_shared<Cat>(p.rings.at(0)->field());
    Cat& c = *x.cat;
    for (Index i = 0; i < p.size(); ++i)
        c.add_object(p.name(i));
    for (Index i = 0; i < p.size(); ++i)
        for (Index j = 0; j < p.size(); ++j) {
            if (!p.leq(j, i))
                continue;
            const Cat& o = *p.rings[j];
            for (Index a = 0; a < o.dim(); ++a) {
                const std::string& an = o.arrow(a).name;
                Index id;
                if (i == j && o.is_identity(a))
                    id = c.add_identity(i, an + "@" + p.name(i));
                else if (i == j)
                    id = c.add_arrow(an + "@" + p.name(i), i, j, 0);
                else
                    id = c.add_arrow(an + ":" + p.name(i) + ">" + p.name(j), i, j, 0);
                x.arrow[{i, j, a}] = id;
            }
        }
    auto place = [&](Index i, Index k, const Vec& v) {
        Vec out;
        for (auto& [a, s] : v)
            out.add(x.arrow.at({i, k, a}), s);
        return out;
    };
    for (auto& [f, fi] : x.arrow) {
        auto [i, j, b] = f;
        for (auto& [g, gi] : x.arrow) {
            auto [j2, k, a] = g;
            if (j2 != j || c.is_identity(fi) || c.is_identity(gi))
                continue;
            const Cat& ok = *p.rings[k];
            Vec prod = ok.compose(Vec::unit(a, ok.field().one()), p.restrict(j, k, Vec::unit(b, ok.field().one())));
            c.set_compose(gi, fi, place(i, k, prod));
        }
    }
    return x;
}

bool Presheaf::two_sided() const
{
    return !at.empty() && at[0]->right_ptr() == at[0]->left_ptr();
}

Vec Presheaf::restrict(Index i, Index j, const Vec& m) const
{
    if (i == j)
        return m;
    return apply_images(res.at({i, j}), m);
}

Report validate(const CoverPoset& p, const Presheaf& m)
{
    Report r;
    if (m.at.size() != p.size()) {
        r.fail("presheaf: one module per poset element required");
        return r;
    }
    bool two = m.two_sided();
    for (Index i = 0; i < p.size(); ++i) {
        const Bimodule& mi = *m.at[i];
        if (mi.left_ptr() != p.rings[i])
            r.fail("presheaf: M(" + p.name(i) + ") is not over O(" + p.name(i) + ")");
        if (two != (mi.right_ptr() == mi.left_ptr()))
            r.fail("presheaf: mixed modules and bimodules");
        if (!two && mi.right().dim() != 1)
            r.fail("presheaf: M(" + p.name(i) + ") must be a left module");
        for (auto& e : mi.elements())
            if (e.deg != 0)
                r.fail("presheaf: M(" + p.name(i) + ") must sit in degree 0");
        for (auto& f : validate(mi).failures)
            r.fail("presheaf: M(" + p.name(i) + "): " + f);
    }
    if (!r.ok())
        return r;
    for (Index i = 0; i < p.size(); ++i)
        for (Index j = 0; j < p.size(); ++j) {
            if (i == j || !p.leq(j, i))
                continue;
            std::string what = "restriction " + p.name(i) + " -> " + p.name(j);
            auto it = m.res.find({i, j});
            if (it == m.res.end() || it->second.size() != m.at[i]->dim()) {
                r.fail("presheaf: " + what + " missing");
                continue;
            }
            const Bimodule &mi = *m.at[i], &mj = *m.at[j];
            for (const Vec& v : it->second)
                if (!v.empty() && v.max_index() >= mj.dim())
                    r.fail("presheaf: " + what + " leaves M(" + p.name(j) + ")");
            if (!r.ok())
                return r;
            const Cat& oi = *p.rings[i];
            for (Index e = 0; e < mi.dim(); ++e) {
                Vec ue = Vec::unit(e, oi.field().one());
                for (Index a = 0; a < oi.dim(); ++a) {
                    Vec ua = Vec::unit(a, oi.field().one());
                    if (m.restrict(i, j, mi.act_left(ua, ue)) !=
                        mj.act_left(p.restrict(i, j, ua), m.restrict(i, j, ue)))
                        r.fail("presheaf: " + what + " is not left linear");
                    if (two && m.restrict(i, j, mi.act_right(ue, ua)) !=
                                   mj.act_right(m.restrict(i, j, ue), p.restrict(i, j, ua)))
                        r.fail("presheaf: " + what + " is not right linear");
                }
            }
        }
    for (Index i = 0; i < p.size() && r.ok(); ++i)
        for (Index j = 0; j < p.size(); ++j)
            for (Index k = 0; k < p.size(); ++k) {
                if (i == j || j == k || !p.leq(j, i) || !p.leq(k, j))
                    continue;
                for (Index e = 0; e < m.at[i]->dim(); ++e) {
                    Vec v = Vec::unit(e, p.rings[i]->field().one());
                    if (m.restrict(j, k, m.restrict(i, j, v)) != m.restrict(i, k, v))
                        r.fail("presheaf: restrictions through " + p.name(j) + " are not functorial");
                }
            }
    return r;
}

Presheaf structure_sheaf(const CoverPoset& p, bool two_sided)
{
    Presheaf m;
    for (Index i = 0; i < p.size(); ++i) {
        CatPtr o = p.rings[i];
        if (two_sided) {
            m.at.push_back(std::make_shared<Bimodule>(diagonal(o)));
            continue;
        }
        auto b = std::make_shared<Bimodule>(left_module(o));
        for (auto& a : o->arrows())
            b->add_element(a.name, 0, 0, 0);
        for (Index x = 0; x < o->dim(); ++x)
            for (Index e = 0; e < o->dim(); ++e)
                if (!o->is_identity(x))
                    b->set_left(x, e, o->compose(x, e));
        m.at.push_back(b);
    }
    m.res = p.rho;
    return m;
}

Presheaf constant_presheaf(const CoverPoset& p, BimodPtr mod)
{
    Presheaf m;
    for (Index i = 0; i < p.size(); ++i) {
        if (p.rings[i] != mod->left_ptr())
            throw std::invalid_argument("constant_presheaf: rings differ from the module's ring");
        m.at.push_back(mod);
    }
    for (auto& [ij, img] : p.rho) {
        if (img != identity_images(*p.rings[ij.first]))
            throw std::invalid_argument("constant_presheaf: restrictions must be identities");
        auto& images = m.res[ij];
        for (Index e = 0; e < mod->dim(); ++e)
            images.push_back(Vec::unit(e, mod->left().field().one()));
    }
    return m;
}

CoverModule pi_star(const CoverPoset& p, const CoverCat& x, const Presheaf& m)
{
    Report r = validate(p, m);
    if (!r.ok())
        throw std::invalid_argument(r.str());
    if (m.two_sided())
        throw std::invalid_argument("pi_star: expects a presheaf of left modules");
    CoverModule out;
    out.mod = std::make_shared<Bimodule>(x.cat, m.at.at(0)->right_ptr());
    for (Index i = 0; i < p.size(); ++i) {
        out.offset.push_back(out.mod->dim());
        for (auto& e : m.at[i]->elements())
            out.mod->add_element(e.name + "@" + p.name(i), 0, i, 0);
    }
    auto place = [&](Index j, const Vec& v) {
        Vec w;
        for (auto& [e, c] : v)
            w.add(out.offset[j] + e, c);
        return w;
    };
    const Scalar one = x.cat->field().one();
    for (auto& [key, xi] : x.arrow) {
        auto [i, j, a] = key;
        if (x.cat->is_identity(xi))
            continue;
        for (Index e = 0; e < m.at[i]->dim(); ++e) {
            Vec v = m.at[j]->act_left(Vec::unit(a, one), m.restrict(i, j, Vec::unit(e, one)));
            out.mod->set_left(xi, out.offset[i] + e, place(j, v));
        }
    }
    return out;
}

CoverBimodule Pi_star(const CoverPoset& p, const CoverCat& x, const Presheaf& m)
{
    Report r = validate(p, m);
    if (!r.ok())
        throw std::invalid_argument(r.str());
    if (!m.two_sided())
        throw std::invalid_argument("Pi_star: expects a presheaf of bimodules");
    CoverBimodule out;
    out.mod = std::make_shared<Bimodule>(x.cat, x.cat);
    for (Index i = 0; i < p.size(); ++i)
        for (Index j = 0; j < p.size(); ++j) {
            if (!p.leq(j, i))
                continue;
            for (Index e = 0; e < m.at[j]->dim(); ++e)
                out.element[{i, j, e}] =
                    out.mod->add_element(m.at[j]->element(e).name + ":" + p.name(i) + ">" + p.name(j), i, j, 0);
        }
    auto place = [&](Index i, Index j, const Vec& v) {
        Vec w;
        for (auto& [e, c] : v)
            w.add(out.element.at({i, j, e}), c);
        return w;
    };
    const Scalar one = x.cat->field().one();
    for (auto& [key, el] : out.element) {
        auto [i, j, e] = key;
        Vec ue = Vec::unit(e, one);
        for (auto& [akey, xi] : x.arrow) {
            auto [s, t, a] = akey;
            if (x.cat->is_identity(xi))
                continue;
            Vec ua = Vec::unit(a, one);
            if (s == j)  // x: j -> t
                out.mod->set_left(xi, el, place(i, t, m.at[t]->act_left(ua, m.restrict(j, t, ue))));
            if (t == i)  // y: s -> i
                out.mod->set_right(el, xi, place(s, j, m.at[j]->act_right(ue, p.restrict(i, j, ua))));
        }
    }
    return out;
}

Index presheaf_hom_dim(const CoverPoset& p, const Presheaf& m, const Presheaf& n)
{
    for (const Presheaf* q : {&m, &n}) {
        Report r = validate(p, *q);
        if (!r.ok())
            throw std::invalid_argument(r.str());
    }
    std::vector<Index> base;
    Index unknowns = 0;
    for (Index i = 0; i < p.size(); ++i) {
        base.push_back(unknowns);
        unknowns += m.at[i]->dim() * n.at[i]->dim();
    }
    auto u = [&](Index i, Index e, Index t) { return base[i] + e * n.at[i]->dim() + t; };
    std::vector<Vec> rows;
    const Scalar one = p.rings.at(0)->field().one();
    for (Index i = 0; i < p.size(); ++i) {
        const Bimodule &mi = *m.at[i], &ni = *n.at[i];
        for (Index a = 0; a < p.rings[i]->dim(); ++a) {
            if (p.rings[i]->is_identity(a))
                continue;
            for (Index e = 0; e < mi.dim(); ++e)
                for (Index tp = 0; tp < ni.dim(); ++tp) {
                    Vec row;
                    for (auto& [e2, c] : mi.act_left(a, e))
                        row.add(u(i, e2, tp), c);
                    for (Index t = 0; t < ni.dim(); ++t)
                        row.add(u(i, e, t), -ni.act_left(a, t).get(tp));
                    rows.push_back(row);
                }
        }
        for (Index j = 0; j < p.size(); ++j) {
            if (i == j || !p.leq(j, i))
                continue;
            for (Index e = 0; e < mi.dim(); ++e)
                for (Index tp = 0; tp < n.at[j]->dim(); ++tp) {
                    Vec row;
                    for (auto& [e2, c] : m.restrict(i, j, Vec::unit(e, one)))
                        row.add(u(j, e2, tp), c);
                    for (Index t = 0; t < ni.dim(); ++t)
                        row.add(u(i, e, t), -n.restrict(i, j, Vec::unit(t, one)).get(tp));
                    rows.push_back(row);
                }
        }
    }
    Matrix a(unknowns, rows.size());
    for (Index k = 0; k < rows.size(); ++k)
        a.set_col(k, rows[k]);
    return unknowns - rank(a);
}

Vec BimoduleTensor::class_of(Index m, Index n) const
{
    auto it = ambient.find({m, n});
    if (it == ambient.end())
        return {};
    Index g = it->second, part = pair_part[g];
    Vec out;
    for (auto& [k, s] : quot[part].project(Vec::unit(pair_local[g], mod->left().field().one())))
        out.add(offset[part] + k, s);
    return out;
}

BimoduleTensor tensor_bimodules(BimodPtr m, BimodPtr n)
{
    if (m->right_ptr() != n->left_ptr())
        throw std::invalid_argument("tensor_bimodules: the middle categories differ");
    const Cat& c = m->right();
    BimoduleTensor t;
    t.mod = std::make_shared<Bimodule>(m->left_ptr(), n->right_ptr());
    const Scalar one = c.field().one();
    for (Index e = 0; e < m->dim(); ++e)
        for (Index f = 0; f < n->dim(); ++f) {
            if (n->element(f).tgt != m->element(e).src)
                continue;
            std::pair<Index, Index> key{n->element(f).src, m->element(e).tgt};
            auto [it, fresh] = t.part_of.try_emplace(key, t.local.size());
            if (fresh)
                t.local.emplace_back();
            t.ambient[{e, f}] = t.pairs.size();
            t.local[it->second].push_back(t.pairs.size());
            t.pairs.push_back({e, f});
        }
    t.pair_part.resize(t.pairs.size());
    t.pair_local.resize(t.pairs.size());
    for (Index part = 0; part < t.local.size(); ++part)
        for (Index k = 0; k < t.local[part].size(); ++k) {
            t.pair_part[t.local[part][k]] = part;
            t.pair_local[t.local[part][k]] = k;
        }
    const auto& local_pos = t.pair_local;
    auto global = [&](Index e, Index f) { return t.ambient.at({e, f}); };
    std::vector<std::vector<Vec>> rel(t.local.size());
    for (Index e = 0; e < m->dim(); ++e)
        for (Index y : c.into(m->element(e).src)) {
            if (c.is_identity(y))
                continue;
            Index cp = c.arrow(y).src;
            for (Index f = 0; f < n->dim(); ++f) {
                if (n->element(f).tgt != cp)
                    continue;
                Index part = t.part_of.at({n->element(f).src, m->element(e).tgt});
                Vec w;
                for (auto& [e2, s] : m->act_right(e, y))
                    w.add(local_pos[global(e2, f)], s);
                for (auto& [f2, s] : n->act_left(y, f))
                    w.add(local_pos[global(e, f2)], -s);
                if (!w.empty())
                    rel[part].push_back(w);
            }
        }
    for (Index part = 0; part < t.local.size(); ++part) {
        Index sz = t.local[part].size();
        t.quot.emplace_back(columns(rel[part], sz), Matrix(0, sz));
        t.offset.push_back(t.mod->dim());
        for (const Vec& b : t.quot.back().basis()) {
            auto [e, f] = t.pairs[t.local[part][b.leading()]];
            t.mod->add_element(m->element(e).name + "*" + n->element(f).name, n->element(f).src,
                               m->element(e).tgt, m->element(e).deg + n->element(f).deg);
            Vec rep;
            for (auto& [k, s] : b)
                rep.add(t.local[part][k], s);
            t.reps.push_back(rep);
        }
    }
    auto cls = [&](Index e, Index f) { return t.class_of(e, f); };
    for (Index el = 0; el < t.mod->dim(); ++el) {
        const Arrow& ae = t.mod->element(el);
        for (Index x : m->left().from(ae.tgt)) {
            if (m->left().is_identity(x))
                continue;
            Vec w;
            for (auto& [g, s] : t.reps[el]) {
                auto [e, f] = t.pairs[g];
                for (auto& [e2, s2] : m->act_left(x, e))
                    w.axpy(s * s2, cls(e2, f));
            }
            t.mod->set_left(x, el, w);
        }
        for (Index y : n->right().into(ae.src)) {
            if (n->right().is_identity(y))
                continue;
            Vec w;
            for (auto& [g, s] : t.reps[el]) {
                auto [e, f] = t.pairs[g];
                for (auto& [f2, s2] : n->act_right(f, y))
                    w.axpy(s * s2, cls(e, f2));
            }
            t.mod->set_right(el, y, w);
        }
    }
    return t;
}

namespace {

std::pair<Presheaf, std::vector<BimoduleTensor>> tensor_points(const CoverPoset& p, const Presheaf& m,
                                                               const Presheaf& n)
{
    for (const Presheaf* q : {&m, &n}) {
        Report r = validate(p, *q);
        if (!r.ok())
            throw std::invalid_argument(r.str());
        if (!q->two_sided())
            throw std::invalid_argument("tensor_presheaf: expects presheaves of bimodules");
    }
    Presheaf out;
    std::vector<BimoduleTensor> ts;
    for (Index i = 0; i < p.size(); ++i) {
        ts.push_back(tensor_bimodules(m.at[i], n.at[i]));
        out.at.push_back(ts.back().mod);
    }
    const Scalar one = p.rings.at(0)->field().one();
    for (Index i = 0; i < p.size(); ++i)
        for (Index j = 0; j < p.size(); ++j) {
            if (i == j || !p.leq(j, i))
                continue;
            auto& images = out.res[{i, j}];
            for (const Vec& rep : ts[i].reps) {
                Vec w;
                for (auto& [g, s] : rep) {
                    auto [e, f] = ts[i].pairs[g];
                    for (auto& [e2, s2] : m.restrict(i, j, Vec::unit(e, one)))
                        for (auto& [f2, s3] : n.restrict(i, j, Vec::unit(f, one)))
                            w.axpy(s * s2 * s3, ts[j].class_of(e2, f2));
                }
                images.push_back(w);
            }
        }
    return {out, ts};
}

}  // namespace

Presheaf tensor_presheaf(const CoverPoset& p, const Presheaf& m, const Presheaf& n)
{
    return tensor_points(p, m, n).first;
}

ProductCheck product_identity(const CoverPoset& p, const CoverCat& x, const Presheaf& m, const Presheaf& n)
{
    ProductCheck out;
    auto [mn, ts] = tensor_points(p, m, n);
    CoverBimodule lhs = Pi_star(p, x, mn), pm = Pi_star(p, x, m), pn = Pi_star(p, x, n);
    BimoduleTensor rhs = tensor_bimodules(pm.mod, pn.mod);
    if (lhs.mod->dim() != rhs.mod->dim()) {
        out.failed = "dimensions differ";
        return out;
    }
    out.map.resize(lhs.mod->dim());
    for (auto& [key, el] : lhs.element) {
        auto [i, k, e] = key;
        Vec w;
        for (auto& [g, s] : ts[k].reps[e]) {
            auto [a, b] = ts[k].pairs[g];
            w.axpy(s, rhs.class_of(pm.element.at({k, k, a}), pn.element.at({i, k, b})));
        }
        out.map[el] = w;
    }
    auto phi = [&](const Vec& v) {
        Vec w;
        for (auto& [el, s] : v)
            w.axpy(s, out.map[el]);
        return w;
    };
    if (rank(columns(out.map, rhs.mod->dim())) != rhs.mod->dim()) {
        out.failed = "the comparison map is not bijective";
        return out;
    }
    const Cat& c = *x.cat;
    const Scalar one = c.field().one();
    for (Index el = 0; el < lhs.mod->dim(); ++el) {
        Vec ue = Vec::unit(el, one);
        for (Index a = 0; a < c.dim(); ++a) {
            Vec ua = Vec::unit(a, one);
            if (phi(lhs.mod->act_left(ua, ue)) != rhs.mod->act_left(ua, out.map[el])) {
                out.failed = "the comparison map is not left linear";
                return out;
            }
            if (phi(lhs.mod->act_right(ue, ua)) != rhs.mod->act_right(out.map[el], ua)) {
                out.failed = "the comparison map is not right linear";
                return out;
            }
        }
    }
    out.iso = true;
    return out;
}

std::vector<Index> CechComplex::cohomology_dims() const
{
    std::vector<Index> out;
    for (Index q = 0; q < dims.size(); ++q) {
        Index z = q < d.size() ? dims[q] - rank(d[q]) : dims[q];
        Index b = q > 0 ? rank(d[q - 1]) : 0;
        out.push_back(z - b);
    }
    return out;
}

CechComplex cech_complex(const CoverPoset& p, const Presheaf& m)
{
    Report r = validate(p, m);
    if (!r.ok())
        throw std::invalid_argument(r.str());
    CechComplex cx;
    std::vector<std::pair<Index, Index>> where(p.size());  // element -> (degree, offset)
    for (int q = 0; q < p.n; ++q) {
        cx.parts.emplace_back();
        Index off = 0;
        for (Index i = 0; i < p.size(); ++i)
            if (static_cast<int>(p.subsets[i].size()) == q + 1) {
                cx.parts.back().push_back({i, off});
                where[i] = {static_cast<Index>(q), off};
                off += m.at[i]->dim();
            }
        cx.dims.push_back(off);
    }
    const Scalar one = p.rings.at(0)->field().one();
    for (int q = 0; q + 1 < p.n; ++q) {
        Matrix d(cx.dims[q + 1], cx.dims[q]);
        for (auto [i, off] : cx.parts[q]) {
            for (int k = 1; k <= p.n; ++k) {
                std::vector<int> big = p.subsets[i];
                if (std::binary_search(big.begin(), big.end(), k))
                    continue;
                big.insert(std::upper_bound(big.begin(), big.end(), k), k);
                auto j = p.find(big);
                if (!j)
                    continue;
                long pos = std::find(big.begin(), big.end(), k) - big.begin();
                Scalar sgn = pos % 2 == 0 ? one : -one;
                Index off2 = where[*j].second;
                for (Index e = 0; e < m.at[i]->dim(); ++e)
                    for (auto& [f, c] : m.restrict(i, *j, Vec::unit(e, one)))
                        d.add(off2 + f, off + e, sgn * c);
            }
        }
        cx.d.push_back(d);
    }
    return cx;
}

Report validate(const CoverMorphism& f)
{
    Report r;
    if (!f.x || !f.y) {
        r.fail("cover morphism: missing cover");
        return r;
    }
    const CoverPoset &x = *f.x, &y = *f.y;
    if (x.subsets != y.subsets) {
        r.fail("cover morphism: the posets differ");
        return r;
    }
    if (f.phi.size() != x.size()) {
        r.fail("cover morphism: one ring map per element required");
        return r;
    }
    for (Index i = 0; i < x.size(); ++i) {
        const Cat &oy = *y.rings[i], &ox = *x.rings[i];
        if (f.phi[i].size() != oy.dim()) {
            r.fail("cover morphism: phi(" + x.name(i) + ") has the wrong size");
            continue;
        }
        if (apply_images(f.phi[i], oy.identity(0)) != ox.identity(0))
            r.fail("cover morphism: phi(" + x.name(i) + ") is not unital");
        for (Index a = 0; a < oy.dim(); ++a)
            for (Index b = 0; b < oy.dim(); ++b)
                if (apply_images(f.phi[i], oy.compose(a, b)) != ox.compose(f.phi[i][a], f.phi[i][b]))
                    r.fail("cover morphism: phi(" + x.name(i) + ") is not multiplicative");
    }
    if (!r.ok())
        return r;
    for (Index i = 0; i < x.size(); ++i)
        for (Index j = 0; j < x.size(); ++j) {
            if (i == j || !x.leq(j, i))
                continue;
            for (Index a = 0; a < y.rings[i]->dim(); ++a) {
                Vec v = Vec::unit(a, y.rings[i]->field().one());
                if (apply_images(f.phi[j], y.restrict(i, j, v)) != x.restrict(i, j, apply_images(f.phi[i], v)))
                    r.fail("cover morphism: square " + x.name(i) + " -> " + x.name(j) + " does not commute");
            }
        }
    return r;
}

GradedFunctor cover_functor(const CoverMorphism& f, const CoverCat& cy, const CoverCat& cx)
{
    Report r = validate(f);
    if (!r.ok())
        throw std::invalid_argument(r.str());
    GradedFunctor g;
    g.src = cy.cat;
    g.tgt = cx.cat;
    for (Index i = 0; i < cy.cat->num_objects(); ++i)
        g.on_objects.push_back(i);
    g.on_arrows.resize(cy.cat->dim());
    for (auto& [key, yi] : cy.arrow) {
        auto [i, j, a] = key;
        Vec w;
        for (auto& [s, c] : f.phi[j][a])
            w.add(cx.arrow.at({i, j, s}), c);
        g.on_arrows[yi] = w;
    }
    return g;
}

Bimodule restrict_scalars(const Bimodule& m, const GradedFunctor& left, const GradedFunctor* right)
{
    if (left.tgt != m.left_ptr() || (right && right->tgt != m.right_ptr()))
        throw std::invalid_argument("restrict_scalars: functor targets differ from the module's categories");
    for (const GradedFunctor* f : {&left, right})
        if (f)
            for (Index a = 0; a < f->on_objects.size(); ++a)
                if (f->on_objects[a] != a)
                    throw std::invalid_argument("restrict_scalars: functors must fix objects");
    Bimodule out(left.src, right ? right->src : m.right_ptr());
    for (auto& e : m.elements())
        out.add_element(e.name, e.src, e.tgt, e.deg);
    const Scalar one = left.src->field().one();
    for (Index e = 0; e < m.dim(); ++e) {
        Vec ue = Vec::unit(e, one);
        for (Index x : left.src->from(m.element(e).tgt))
            if (!left.src->is_identity(x))
                out.set_left(x, e, m.act_left(left.on_arrows.at(x), ue));
        const Cat& rc = out.right();
        for (Index y : rc.into(m.element(e).src))
            if (!rc.is_identity(y))
                out.set_right(e, y, right ? m.act_right(ue, right->on_arrows.at(y)) : m.act_right(e, y));
    }
    return out;
}

Bimodule pushforward(const GradedFunctor& f, const Bimodule& module)
{
    return restrict_scalars(module, f, nullptr);
}

HochCochain pullback(const GradedFunctor& f, const HochCochain& eta, BimodPtr restricted)
{
    HochCochain out(f.src, restricted, eta.arity());
    if (eta.arity() == 0) {
        for (auto& [t, v] : eta.values())
            out.set(t, v);
        return out;
    }
    for (const Tuple& t : composable_tuples(*f.src, eta.arity())) {
        std::vector<Vec> args;
        for (Index a : t)
            args.push_back(f.on_arrows.at(a));
        Vec v = eta.eval(args);
        if (!v.empty())
            out.set(t, v);
    }
    return out;
}

std::string ComparisonVerdict::str() const
{
    std::ostringstream os;
    os << "cover:";
    for (Index d : cover)
        os << ' ' << d;
    os << "\nring: ";
    for (Index d : ring)
        os << ' ' << d;
    os << '\n' << (equal ? "equal" : "different");
    return os.str();
}

ComparisonVerdict comparison_hh(CatPtr r, int charts, BimodPtr m, int max_n)
{
    CoverPoset p = redundant_cover(r, charts);
    CoverCat x = build_cover_cat(p);
    CoverBimodule pm = Pi_star(p, x, constant_presheaf(p, m));
    ComparisonVerdict v;
    v.cover = hh_dims(x.cat, pm.mod, max_n);
    v.ring = hh_dims(r, m, max_n);
    v.equal = v.cover == v.ring;
    return v;
}

}  // namespace hocat
