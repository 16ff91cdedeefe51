#include "hocat/obstr.hpp"

#include <map>
#include <stdexcept>

namespace hocat {

namespace {

Scalar random_scalar(std::mt19937_64& g, const Field& k)
{
    if (k.p)
        return Scalar::residue(static_cast<long>(g() % k.p), k.p);
    return Scalar(static_cast<long>(g() % 11) - 5);
}

void require_plain_target(const AInf& t)
{
    if (t.overridden(1) || t.overridden(2))
        throw std::invalid_argument("obstruction calculus needs a target whose m_1 and m_2 come from a DG category");
}

void require_degree0_source(const Cat& c)
{
    if (c.has_diff() || (c.dim() && (c.min_degree() != 0 || c.max_degree() != 0)))
        throw std::invalid_argument("source must be concentrated in degree 0 with zero differential");
}

}  // namespace

Report certify(const AnFunctor& f)
{
    Report r;
    CheckReport c = check_functor(*f.f, f.level);
    if (!c.ok)
        r.fail("A_" + std::to_string(f.level) + " equation " + c.str());
    return r;
}

Vec CohomologyBimodule::project(Index a, Index b, const Vec& v) const
{
    Index n = m->left().num_objects();
    const auto& part = m->part(a, b);
    Vec out;
    for (auto& [k, c] : parts.at(a * n + b)->project(v))
        out.add(part.at(k), c);
    return out;
}

CohomologyBimodule cohomology_bimodule(const Cofunctor& f, int deg)
{
    CatPtr c = f.src().cat_ptr();
    const Cat& t = f.tgt().cat();
    Index n = c->num_objects();
    CohomologyBimodule out;
    out.m = std::make_shared<Bimodule>(c, c);
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) {
            auto h = std::make_unique<HomCohomology>(t, f.on_object(a), f.on_object(b), deg);
            for (Index k = 0; k < h->dim(); ++k) {
                out.m->add_element("H" + std::to_string(deg) + "(" + c->object_name(a) + "," + c->object_name(b) +
                                       ")" + std::to_string(k),
                                   a, b, deg);
                out.rep.push_back(h->rep(k));
            }
            out.parts.push_back(std::move(h));
        }
    for (Index e = 0; e < out.m->dim(); ++e) {
        const Arrow& el = out.m->element(e);
        for (Index x : c->from(el.tgt)) {
            if (c->is_identity(x))
                continue;
            Vec v = t.compose(f.coef(1, Tuple{x}), out.rep[e]);
            Vec w = out.project(el.src, c->arrow(x).tgt, v);
            if (!w.empty())
                out.m->set_left(x, e, w);
        }
        for (Index y : c->into(el.src)) {
            if (c->is_identity(y))
                continue;
            Vec v = t.compose(out.rep[e], f.coef(1, Tuple{y}));
            Vec w = out.project(c->arrow(y).src, el.tgt, v);
            if (!w.empty())
                out.m->set_right(e, y, w);
        }
    }
    return out;
}

ExtendResult extend_step(const AnFunctor& fi, std::mt19937_64* rng)
{
    const AInf& tgt = fi.f->tgt();
    require_plain_target(tgt);
    require_degree0_source(fi.f->src().cat());
    int i = fi.level;
    if (i < 2)
        throw std::invalid_argument("extend_step starts from an A_2 functor");
    Report cert = certify(fi);
    if (!cert.ok())
        throw std::logic_error("extend_step: input is not an A_" + std::to_string(i) + " functor: " + cert.str());
    auto F = std::make_shared<Cofunctor>(*fi.f);
    CatPtr c = F->src().cat_ptr();
    const Cat& t = tgt.cat();
    Index n = c->num_objects();
    CohomologyBimodule H = cohomology_bimodule(*F, 1 - i);
    BimodPtr hm = H.m;
    auto tuples = composable_tuples(*c, i + 1);
    HochCochain D(c, hm, i + 1);
    for (auto& tu : tuples) {
        Vec v = functor_defect(*F, tu);
        if (v.empty())
            continue;
        Index a = c->arrow(tu.back()).src, b = c->arrow(tu.front()).tgt;
        if (!H.parts[a * n + b]->is_cocycle(v))
            throw std::logic_error("defect is not a cocycle: the A_" + std::to_string(i) + " certificate is corrupted");
        D.set(tu, H.project(a, b, v));
    }
    if (!d_hoch(D).is_zero())
        throw std::logic_error("obstruction cochain fails the cocycle law: the certificate is corrupted");
    HochComplex cx(c, hm);
    ExtendResult res;
    res.obstruction.level = i + 1;
    res.obstruction.internal_degree = 1 - i;
    res.obstruction.coeff = hm;
    res.obstruction.rep = D;
    res.obstruction.coords = cx.cohomology(i + 1).project(cx.to_vector(D));
    res.obstruction.provenance = "defect of arity " + std::to_string(i + 1) + " of an A_" + std::to_string(i) + " functor";
    if (!res.obstruction.vanishes())
        return res;
    LinearSystem ls(cx.differential(i));
    auto xi = ls.solve(-cx.to_vector(D));
    if (!xi)
        throw std::logic_error("vanishing obstruction but the extension system has no solution");
    if (rng)
        for (auto& k : ls.kernel())
            xi->axpy(random_scalar(*rng, c->field()), k);
    HochCochain xc = cx.from_vector(i, *xi);
    for (auto& [tu, v] : xc.values()) {
        Vec delta;
        for (auto& [e, s] : v)
            delta.axpy(s, H.rep[e]);
        F->add(i, tu, delta);
    }
    std::map<std::pair<Index, Index>, std::unique_ptr<HomCohomology>> lower;
    for (auto& tu : tuples) {
        Index a = c->arrow(tu.back()).src, b = c->arrow(tu.front()).tgt;
        Vec r = functor_defect(*F, tu);
        Vec y;
        if (!r.empty()) {
            auto p = H.parts[a * n + b]->primitive(r);
            if (!p)
                throw std::logic_error("extension system: defect is not a coboundary after correction");
            y = *p;
        }
        if (rng) {
            auto& lc = lower[{a, b}];
            if (!lc)
                lc = std::make_unique<HomCohomology>(t, F->on_object(a), F->on_object(b), -i);
            for (auto& z : lc->cocycles())
                y.axpy(random_scalar(*rng, c->field()), z);
        }
        if (!y.empty())
            F->set(i + 1, tu, y);
    }
    res.next = AnFunctor{F, i + 1};
    return res;
}

LiftResult lift_functor(CatPtr c, AInfPtr target, const std::vector<Index>& on_objects,
                        const std::vector<Vec>& on_arrows, int max_arity, std::mt19937_64* rng)
{
    require_degree0_source(*c);
    require_plain_target(*target);
    if (on_arrows.size() != c->dim())
        throw std::invalid_argument("lift_functor: one image per arrow is required");
    auto src = std::make_shared<AInf>(AInf::from_dg(c));
    auto F = std::make_shared<Cofunctor>(src, target, on_objects);
    const Cat& t = target->cat();
    for (Index x = 0; x < c->dim(); ++x) {
        if (c->is_identity(x)) {
            if (on_arrows[x] != t.identity(on_objects[c->arrow(x).src]))
                throw std::invalid_argument("lift_functor: identities must map to identities");
            continue;
        }
        F->set(1, {x}, on_arrows[x]);
        if (!t.d(on_arrows[x]).empty())
            throw std::invalid_argument("lift_functor: image of " + c->arrow(x).name + " is not a cocycle");
    }
    for (auto& tu : composable_tuples(*c, 2)) {
        Vec r = functor_defect(*F, tu);
        Index a = c->arrow(tu.back()).src, b = c->arrow(tu.front()).tgt;
        HomCohomology h(t, on_objects[a], on_objects[b], 0);
        Vec y;
        if (!r.empty()) {
            auto p = h.primitive(r);
            if (!p)
                throw std::invalid_argument("lift_functor: the arrow data is not a functor into H^0 on " +
                                            tuple_names(*c, tu));
            y = *p;
        }
        if (rng)
            for (auto& z : HomCohomology(t, on_objects[a], on_objects[b], -1).cocycles())
                y.axpy(random_scalar(*rng, c->field()), z);
        if (!y.empty())
            F->set(2, tu, y);
    }
    AnFunctor cur{F, 2};
    LiftResult res;
    for (;;) {
        if (check_functor(*cur.f, functor_check_bound(*cur.f)).ok) {
            res.lifted = true;
            break;
        }
        if (cur.level >= max_arity)
            throw std::runtime_error("lift_functor: arity bound " + std::to_string(max_arity) +
                                     " reached without stabilization");
        ExtendResult e = extend_step(cur, rng);
        res.steps.push_back(e.obstruction);
        if (!e.next) {
            res.obstruction = e.obstruction;
            break;
        }
        cur = *e.next;
    }
    res.functor = cur.f;
    res.level = res.obstruction ? res.obstruction->level : cur.level;
    return res;
}

LiftResult lift_functor(const GradedFunctor& f, AInfPtr target, int max_arity, std::mt19937_64* rng)
{
    if (f.tgt != target->cat_ptr())
        throw std::invalid_argument("lift_functor: functor does not land in the target");
    return lift_functor(f.src, std::move(target), f.on_objects, f.on_arrows, max_arity, rng);
}

PulledBimodule pull_back(const Bimodule& m, const GradedFunctor& f)
{
    CatPtr c = f.src;
    Index n = c->num_objects();
    bool injective = true;
    for (Index a = 0; a < n; ++a)
        for (Index b = a + 1; b < n; ++b)
            injective = injective && f.on_objects[a] != f.on_objects[b];
    PulledBimodule out;
    out.m = std::make_shared<Bimodule>(c, c);
    std::map<std::pair<std::pair<Index, Index>, Index>, Index> where;
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
            for (Index e : m.part(f.on_objects[a], f.on_objects[b])) {
                const Arrow& el = m.element(e);
                std::string name = injective ? el.name : el.name + "@" + c->object_name(a) + ">" + c->object_name(b);
                where[{{a, b}, e}] = out.m->add_element(name, a, b, el.deg);
                out.origin.push_back(e);
            }
    auto translate = [&](Index a, Index b, const Vec& v) {
        Vec w;
        for (auto& [e, s] : v)
            w.add(where.at({{a, b}, e}), s);
        return w;
    };
    for (Index e = 0; e < out.m->dim(); ++e) {
        const Arrow& el = out.m->element(e);
        Vec ue = Vec::unit(out.origin[e], c->field().one());
        for (Index x : c->from(el.tgt))
            if (!c->is_identity(x)) {
                Vec w = translate(el.src, c->arrow(x).tgt, m.act_left(f.on_arrows[x], ue));
                if (!w.empty())
                    out.m->set_left(x, e, w);
            }
        for (Index y : c->into(el.src))
            if (!c->is_identity(y)) {
                Vec w = translate(c->arrow(y).src, el.tgt, m.act_right(ue, f.on_arrows[y]));
                if (!w.empty())
                    out.m->set_right(e, y, w);
            }
    }
    return out;
}

HochCochain pull_back(const HochCochain& eta, const GradedFunctor& f, const PulledBimodule& pm)
{
    CatPtr c = f.src;
    int n = eta.arity();
    HochCochain out(c, pm.m, n);
    for (auto& tu : composable_tuples(*c, n)) {
        std::vector<Vec> args;
        for (Index x : tu)
            args.push_back(f.on_arrows[x]);
        Vec v = eta.eval(args);
        if (v.empty())
            continue;
        Index a = c->arrow(tu.back()).src, b = c->arrow(tu.front()).tgt;
        const auto& part = pm.m->part(a, b);
        Vec w;
        for (auto& [e, s] : v)
            for (Index k : part)
                if (pm.origin[k] == e)
                    w.add(k, s);
        out.set(tu, w);
    }
    return out;
}

TildeResult construct_tilde_f(const GradedFunctor& f, BimodPtr m, const HochCochain& eta)
{
    CatPtr c = f.src;
    CatPtr a = f.tgt;
    require_degree0_source(*c);
    if (eta.cat_ptr() != a || eta.module_ptr() != m)
        throw std::invalid_argument("construct_tilde_f: cocycle is not over the functor's target");
    int n = eta.arity();
    PulledBimodule pm = pull_back(*m, f);
    HochCochain pulled = pull_back(eta, f, pm);
    HochComplex cx(c, pm.m);
    TildeResult res;
    res.pulled = pm.m;
    Vec coords = cx.cohomology(n).project(cx.to_vector(pulled));
    if (!coords.empty()) {
        res.refusal = CohomologyClass{pulled, coords};
        return res;
    }
    auto xi = solve(cx.differential(n - 1), -cx.to_vector(pulled));
    if (!xi)
        throw std::logic_error("construct_tilde_f: coboundary without a primitive");
    HochCochain xc = cx.from_vector(n - 1, *xi);
    auto src = std::make_shared<AInf>(AInf::from_dg(c));
    auto tgt = std::make_shared<AInf>(deform(a, m, eta));
    auto F = std::make_shared<Cofunctor>(src, tgt, f.on_objects);
    for (Index x = 0; x < c->dim(); ++x)
        if (!c->is_identity(x))
            F->set(1, {x}, f.on_arrows[x]);
    for (auto& [tu, v] : xc.values()) {
        Vec w;
        for (auto& [e, s] : v)
            w.add(a->dim() + pm.origin[e], s);
        F->add(n - 1, tu, w);
    }
    CheckReport chk = check_functor(*F, functor_check_bound(*F));
    if (!chk.ok)
        throw std::logic_error("construct_tilde_f: constructed functor fails " + chk.str());
    res.functor = F;
    return res;
}

GammaReport gamma_obstructions(CatPtr gamma, CatPtr end_t, const std::vector<Vec>& action, int max_arity,
                               std::mt19937_64* rng)
{
    if (end_t->num_objects() != 1)
        throw std::invalid_argument("gamma_obstructions: endomorphism category must have one object");
    GammaReport rep;
    for (int q = 1; q <= -end_t->min_degree(); ++q)
        if (HomCohomology(*end_t, 0, 0, -q).dim() > 0) {
            rep.negative_ext.push_back(q);
            rep.top = q;
        }
    auto target = std::make_shared<AInf>(AInf::from_dg(end_t));
    std::vector<Index> objs(gamma->num_objects(), 0);
    rep.lift = lift_functor(gamma, target, objs, action, max_arity, rng);
    return rep;
}

}  // namespace hocat
