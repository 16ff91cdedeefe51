#include "hocat/charmap.hpp"

#include <stdexcept>

namespace hocat {

CharResult char_map(const HochCochain& eta, ModPtr n, Flavor flavor)
{
    CatPtr a = eta.cat_ptr();
    BimodPtr m = eta.module_ptr();
    if (n->left_ptr() != a)
        throw std::invalid_argument("char_map: module is not over the category of the cocycle");
    if (!d_hoch(eta).is_zero())
        throw std::invalid_argument("char_map: cochain is not a cocycle");
    CharResult r;
    r.flavor = flavor;
    r.on_elements.resize(m->dim());
    if (flavor == Flavor::direct) {
        if (!right_projective(*m))
            throw std::invalid_argument("char_map: bimodule is not right projective");
        r.tensor = tensor_over(m, n);
        r.coeff = hom_k(n, r.tensor->m);
        for (Index e = 0; e < m->dim(); ++e)
            for (Index u : n->part(0, m->element(e).src))
                for (auto& [k, s] : r.tensor->cls(e, u))
                    r.on_elements[e].add(r.coeff.at(u, k), s);
    } else {
        if (!left_projective(*m))
            throw std::invalid_argument("char_map: bimodule is not left projective");
        r.hom = hom_over(m, n);
        r.coeff = hom_k(r.hom->m, n);
        for (Index e = 0; e < m->dim(); ++e)
            for (Index phi : r.hom->m->part(0, m->element(e).src))
                for (auto& [v, s] : r.hom->eval(phi, e))
                    r.on_elements[e].add(r.coeff.at(phi, v), s);
    }
    HochCochain img(a, r.coeff.m, eta.arity());
    for (auto& [t, v] : eta.values()) {
        Vec w;
        for (auto& [e, s] : v)
            w.axpy(s, r.on_elements[e]);
        img.set(t, w);
    }
    HochComplex cx(a, r.coeff.m);
    const Cohomology& h = cx.cohomology(eta.arity());
    r.coords = h.project(cx.to_vector(img));
    r.ext_dim = h.dim();
    r.image = img;
    return r;
}

namespace {

struct Label {
    bool second;  // false: X, true: Y
    Index el;
    bool operator<(const Label& o) const { return std::tie(second, el) < std::tie(o.second, o.el); }
    bool operator==(const Label& o) const { return second == o.second && el == o.el; }
};

// End_k(X + Y) with the X -> Y block only, one basis identity per object.
class Triangular {
  public:
    Triangular(CatPtr a, ModPtr x, ModPtr y, int shift) : x_(x), y_(y), shift_(shift)
    {
        cat_ = std::make_shared<Cat>(a->field());
        Index no = a->num_objects();
        for (Index o = 0; o < no; ++o)
            cat_->add_object(a->object_name(o));
        labels_.resize(no);
        for (Index o = 0; o < no; ++o) {
            for (Index i : x->part(0, o))
                labels_[o].push_back({false, i});
            for (Index j : y->part(0, o))
                labels_[o].push_back({true, j});
            if (labels_[o].empty())
                throw std::invalid_argument("lift_module: module vanishes at object " + a->object_name(o));
            cat_->add_identity(o, "1" + a->object_name(o));
        }
        for (Index p = 0; p < no; ++p)
            for (Index q = 0; q < no; ++q)
                for (auto& s : labels_[p])
                    for (auto& t : labels_[q]) {
                        if (s.second && !t.second)
                            continue;
                        if (p == q && s == t && s == labels_[p].front())
                            continue;
                        Index id = cat_->add_arrow(name(s) + ">" + name(t), p, q, deg(t) - deg(s));
                        arrow_[{s, t}] = id;
                        key_.resize(id + 1);
                        key_[id] = {s, t};
                    }
        for (Index g = 0; g < cat_->dim(); ++g)
            for (Index f = 0; f < cat_->dim(); ++f) {
                if (cat_->is_identity(g) || cat_->is_identity(f) || cat_->arrow(f).tgt != cat_->arrow(g).src)
                    continue;
                if (key_[f].second == key_[g].first)
                    cat_->set_compose(g, f, elem(key_[f].first, key_[g].second));
            }
    }

    std::shared_ptr<Cat> cat() const { return cat_; }

    // The elementary map s -> t in the arrow basis.
    Vec elem(const Label& s, const Label& t) const
    {
        Index o = obj(s);
        if (s == t && s == labels_[o].front()) {
            Vec v = Vec::unit(cat_->identity_arrow(o), cat_->field().one());
            for (auto& l : labels_[o])
                if (!(l == s))
                    v.add(arrow_.at({l, l}), Scalar(-1));
            return v;
        }
        return Vec::unit(arrow_.at({s, t}), cat_->field().one());
    }

  private:
    Index obj(const Label& l) const { return (l.second ? y_ : x_)->element(l.el).tgt; }
    int deg(const Label& l) const { return l.second ? y_->element(l.el).deg + shift_ : x_->element(l.el).deg; }
    std::string name(const Label& l) const { return (l.second ? "Y:" : "X:") + (l.second ? y_ : x_)->element(l.el).name; }

    ModPtr x_, y_;
    int shift_;
    std::shared_ptr<Cat> cat_;
    std::vector<std::vector<Label>> labels_;
    std::map<std::pair<Label, Label>, Index> arrow_;
    std::vector<std::pair<Label, Label>> key_;
};

}  // namespace

ModuleLift lift_module(ModPtr u, BimodPtr m, const HochCochain& eta, Flavor flavor)
{
    int n = eta.arity();
    if (n < 3)
        throw std::invalid_argument("lift_module: arity must be at least 3");
    if (eta.module_ptr() != m)
        throw std::invalid_argument("lift_module: cocycle is not valued in the given bimodule");
    CatPtr a = eta.cat_ptr();
    ModuleLift res;
    res.c = char_map(eta, u, flavor);
    if (!res.c.vanishes()) {
        res.obstruction = CohomologyClass{*res.c.image, res.c.coords};
        return res;
    }
    HochComplex cx(a, res.c.coeff.m);
    auto xi = solve(cx.differential(n - 1), cx.to_vector(*res.c.image));
    if (!xi)
        throw std::logic_error("lift_module: vanishing class without a primitive");
    res.xi = cx.from_vector(n - 1, *xi);
    ModPtr x = res.c.coeff.n, y = res.c.coeff.p;
    Triangular lam(a, x, y, 2 - n);
    res.lambda = lam.cat();
    auto src = std::make_shared<AInf>(deform(a, m, eta));
    auto tgt = std::make_shared<AInf>(AInf::from_dg(res.lambda));
    std::vector<Index> objs;
    for (Index o = 0; o < a->num_objects(); ++o)
        objs.push_back(o);
    auto f = std::make_shared<Cofunctor>(src, tgt, objs);
    for (Index g = 0; g < a->dim(); ++g) {
        if (a->is_identity(g))
            continue;
        Vec v;
        for (Index i = 0; i < x->dim(); ++i)
            for (auto& [j, s] : x->act_left(g, i))
                v.axpy(s, lam.elem({false, i}, {false, j}));
        for (Index i = 0; i < y->dim(); ++i)
            for (auto& [j, s] : y->act_left(g, i))
                v.axpy(s, lam.elem({true, i}, {true, j}));
        if (!v.empty())
            f->set(1, {g}, v);
    }
    auto to_lambda = [&](const Vec& phi) {
        Vec v;
        for (auto& [e, s] : phi) {
            auto [i, j] = res.c.coeff.entry[e];
            v.axpy(s, lam.elem({false, i}, {true, j}));
        }
        return v;
    };
    for (Index e = 0; e < m->dim(); ++e) {
        Vec v = to_lambda(res.c.on_elements[e]);
        if (!v.empty())
            f->set(1, Tuple{a->dim() + e}, v);
    }
    for (auto& [t, v] : res.xi->values()) {
        Vec w = to_lambda(v);
        if (!w.empty())
            f->set(n - 1, t, w);
    }
    CheckReport chk = check_functor(*f, functor_check_bound(*f));
    if (!chk.ok)
        throw std::logic_error("lift_module: witness fails " + chk.str());
    res.functor = f;
    res.lifted = true;
    return res;
}

}  // namespace hocat
