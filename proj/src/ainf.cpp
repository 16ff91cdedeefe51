#include "hocat/ainf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hocat {

namespace {

const OpTable kNoTable;

bool composable(const Cat& c, const Tuple& t)
{
    for (Index j = 0; j + 1 < t.size(); ++j)
        if (c.arrow(t[j]).src != c.arrow(t[j + 1]).tgt)
            return false;
    return true;
}

int tuple_degree(const Cat& c, const Tuple& t)
{
    int d = 0;
    for (Index x : t)
        d += c.arrow(x).deg;
    return d;
}

// Calls visit(tuple) for every composable tuple of non-identity arrows of length m
// whose degree sum can still land in [lo, hi].
template <class F>
void each_tuple(const Cat& c, int m, F&& visit, long lo = -(1L << 40), long hi = 1L << 40)
{
    Tuple t(static_cast<Index>(m));
    long smin = c.dim() ? c.min_degree() : 0, smax = c.dim() ? c.max_degree() : 0;
    long sum = 0;
    auto rec = [&](auto&& self, int j) -> void {
        long rest = m - j;
        if (sum + rest * smax < lo || sum + rest * smin > hi)
            return;
        if (j == m) {
            visit(t);
            return;
        }
        const std::vector<Index>* pool = nullptr;
        std::vector<Index> all;
        if (j == 0) {
            for (Index x = 0; x < c.dim(); ++x)
                all.push_back(x);
            pool = &all;
        } else {
            pool = &c.into(c.arrow(t[j - 1]).src);
        }
        for (Index x : *pool) {
            if (c.is_identity(x))
                continue;
            t[j] = x;
            sum += c.arrow(x).deg;
            self(self, j + 1);
            sum -= c.arrow(x).deg;
        }
    };
    if (m > 0)
        rec(rec, 0);
}

// Expands multilinear arguments into basis tuples with coefficients.
template <class F>
void expand(const Cat& c, const std::vector<Vec>& args, F&& visit)
{
    Tuple t(args.size());
    auto rec = [&](auto&& self, Index j, const Scalar& coef) -> void {
        if (j == args.size()) {
            visit(t, coef);
            return;
        }
        for (auto& [x, a] : args[j]) {
            if (j > 0 && c.arrow(t[j - 1]).src != c.arrow(x).tgt)
                continue;
            t[j] = x;
            self(self, j + 1, coef * a);
        }
    };
    rec(rec, 0, c.field().one());
}

int vec_degree(const Cat& c, const Vec& v) { return v.empty() ? 0 : c.degree(v); }

}  // namespace

std::string tuple_names(const Cat& c, const Tuple& t)
{
    std::string s = "(";
    for (Index j = 0; j < t.size(); ++j)
        s += (j ? ", " : "") + c.arrow(t[j]).name;
    return s + ")";
}

std::string CheckReport::str() const
{
    if (ok)
        return "ok";
    std::ostringstream os;
    os << "fails at arity " << arity << " on (";
    for (Index j = 0; j < witness.size(); ++j)
        os << (j ? ", " : "") << witness[j];
    os << "), residual " << residual.str();
    return os.str();
}

AInf::AInf(CatPtr base, int arity_bound) : c_(std::move(base)), bound_(arity_bound)
{
    if (!c_)
        throw std::invalid_argument("AInf needs a base category");
    if (bound_ < 2)
        throw std::invalid_argument("arity bound must be at least 2");
}

AInf AInf::from_dg(CatPtr c) { return AInf(std::move(c), 2); }

void AInf::override_op(int n)
{
    if (n < 1 || n > bound_)
        throw std::invalid_argument("operation arity outside the declared bound");
    over_.insert(n);
    ops_[n];
}

void AInf::set_op(int n, const Tuple& t, Vec v)
{
    if (n < 1 || n > bound_)
        throw std::invalid_argument("operation arity " + std::to_string(n) + " exceeds the arity bound");
    if (static_cast<int>(t.size()) != n || !composable(*c_, t))
        throw std::invalid_argument("operation on a non-composable tuple");
    for (Index x : t)
        if (c_->is_identity(x))
            throw std::invalid_argument("operations are strictly unital; identity arguments are implicit");
    v = v.in_field(c_->field().p);
    Index s = c_->arrow(t.back()).src, g = c_->arrow(t.front()).tgt;
    int deg = tuple_degree(*c_, t) + 2 - n;
    for (auto& [i, c] : v) {
        const Arrow& a = c_->arrow(i);
        if (a.src != s || a.tgt != g || a.deg != deg)
            throw std::invalid_argument("operation value has wrong endpoints or degree on " + tuple_names(*c_, t));
    }
    if (n <= 2)
        override_op(n);
    if (v.empty())
        ops_[n].erase(t);
    else
        ops_[n][t] = std::move(v);
}

const OpTable& AInf::table(int n) const
{
    auto it = ops_.find(n);
    return it == ops_.end() ? kNoTable : it->second;
}

Vec AInf::op(int n, const Tuple& t) const
{
    if (n < 1 || n > bound_)
        return {};
    bool has_id = false;
    for (Index x : t)
        has_id = has_id || c_->is_identity(x);
    if (has_id) {
        if (n != 2)
            return {};
        if (c_->arrow(t[0]).src != c_->arrow(t[1]).tgt)
            return {};
        if (c_->is_identity(t[0]))
            return Vec::unit(t[1], c_->field().one());
        return Vec::unit(t[0], c_->field().from_int(sign(c_->arrow(t[0]).deg)));
    }
    if (n == 1 && !overridden(1))
        return -c_->d(t[0]);
    if (n == 2 && !overridden(2)) {
        Vec v = c_->compose(t[0], t[1]);
        if (c_->arrow(t[0]).deg % 2)
            v *= Scalar(-1);
        return v;
    }
    auto it = ops_.find(n);
    if (it == ops_.end())
        return {};
    auto jt = it->second.find(t);
    return jt == it->second.end() ? Vec() : jt->second;
}

Vec AInf::op(int n, const std::vector<Vec>& args) const
{
    if (static_cast<int>(args.size()) != n)
        throw std::invalid_argument("operation called with the wrong number of arguments");
    Vec out;
    if (n > bound_)
        return out;
    if (n >= 3 && table(n).empty())
        return out;
    expand(*c_, args, [&](const Tuple& t, const Scalar& c) { out.axpy(c, op(n, t)); });
    return out;
}

std::vector<int> AInf::active() const
{
    std::vector<int> out;
    if (overridden(1) ? !table(1).empty() : c_->has_diff())
        out.push_back(1);
    out.push_back(2);
    for (auto& [n, t] : ops_)
        if (n >= 3 && !t.empty())
            out.push_back(n);
    return out;
}

bool AInf::is_dg() const
{
    for (int n : active())
        if (n >= 3)
            return false;
    return true;
}

Vec stasheff_residual(const AInf& a, const Tuple& t)
{
    const Cat& c = a.cat();
    int m = static_cast<int>(t.size());
    auto act = a.active();
    Vec out;
    for (int s : act) {
        int k = m - s + 1;
        if (s > m || !std::binary_search(act.begin(), act.end(), k))
            continue;
        long prefix = 0;
        for (int r = 0; r + s <= m; ++r) {
            if (r > 0)
                prefix += c.arrow(t[r - 1]).deg - 1;
            Vec inner = a.op(s, Tuple(t.begin() + r, t.begin() + r + s));
            if (inner.empty())
                continue;
            std::vector<Vec> args;
            for (int j = 0; j < r; ++j)
                args.push_back(Vec::unit(t[j], c.field().one()));
            args.push_back(std::move(inner));
            for (int j = r + s; j < m; ++j)
                args.push_back(Vec::unit(t[j], c.field().one()));
            out.axpy(Scalar(sign(prefix)), a.op(k, args));
        }
    }
    return out;
}

CheckReport check_stasheff(const AInf& a, int max_arity)
{
    if (max_arity > 2 * a.arity_bound())
        throw std::invalid_argument("check_stasheff: max_arity exceeds twice the arity bound");
    const Cat& c = a.cat();
    auto act = a.active();
    CheckReport rep;
    for (int m = 1; m <= max_arity && rep.ok; ++m) {
        bool live = false;
        for (int s : act)
            live = live || std::binary_search(act.begin(), act.end(), m - s + 1);
        if (!live)
            continue;
        each_tuple(
            c, m,
            [&](const Tuple& t) {
                if (!rep.ok)
                    return;
                int deg = tuple_degree(c, t) + 3 - m;
                if (c.hom(c.arrow(t.back()).src, c.arrow(t.front()).tgt, deg).empty())
                    return;
                Vec r = stasheff_residual(a, t);
                if (!r.empty()) {
                    rep.ok = false;
                    rep.arity = m;
                    for (Index x : t)
                        rep.witness.push_back(c.arrow(x).name);
                    rep.residual = r;
                }
            },
            c.min_degree() - 3 + m, c.max_degree() - 3 + m);
    }
    return rep;
}

AInf deform(CatPtr a, BimodPtr m, const HochCochain& eta, bool require_cocycle)
{
    int n = eta.arity();
    if (n < 3)
        throw std::invalid_argument("deform: the cocycle must have arity at least 3");
    if (eta.cat_ptr() != a || eta.module_ptr() != m)
        throw std::invalid_argument("deform: cochain is not over the given category and bimodule");
    if (require_cocycle && !d_hoch(eta).is_zero())
        throw std::invalid_argument("deform: eta is not a Hochschild cocycle");
    auto base = std::make_shared<Cat>(trivial_extension(*a, *m, n - 2));
    AInf out(base, n);
    for (auto& [t, v] : eta.values()) {
        Vec w;
        for (auto& [i, c] : v)
            w.add(a->dim() + i, c);
        out.set_op(n, t, std::move(w));
    }
    return out;
}

AInf tensor_dg(const AInf& a, CatPtr b)
{
    const Cat& ca = a.cat();
    auto base = std::make_shared<Cat>(tensor(ca, *b));
    AInf out(base, a.arity_bound());
    Index db = b->dim();
    auto put = [&](const Vec& x, const Vec& y, const Scalar& s, Vec& into) {
        for (auto& [i, c] : x)
            for (auto& [j, e] : y)
                into.add(i * db + j, s * c * e);
    };
    auto koszul = [&](const Tuple& xs, const Tuple& ys) {
        long e = 0, tail = 0;
        for (Index j = xs.size(); j-- > 0;) {
            e += static_cast<long>(b->arrow(ys[j]).deg) * tail;
            tail += ca.arrow(xs[j]).deg - 1;
        }
        return Scalar(sign(e));
    };
    auto product = [&](const Tuple& ys) {
        Vec p = Vec::unit(ys[0], b->field().one());
        for (Index j = 1; j < ys.size(); ++j)
            p = b->compose(p, Vec::unit(ys[j], b->field().one()));
        return p;
    };
    for (int n : {1, 2}) {
        if (!a.overridden(n))
            continue;
        out.override_op(n);
        each_tuple(*base, n, [&](const Tuple& t) {
            Tuple xs, ys;
            for (Index z : t) {
                xs.push_back(z / db);
                ys.push_back(z % db);
            }
            Vec v;
            put(a.op(n, xs), product(ys), koszul(xs, ys), v);
            if (n == 1)
                put(Vec::unit(xs[0], ca.field().one()), b->d(ys[0]), Scalar(sign(ca.arrow(xs[0]).deg - 1)), v);
            if (!v.empty())
                out.set_op(n, t, std::move(v));
        });
    }
    for (int n : a.active()) {
        if (n < 3)
            continue;
        auto bt = composable_tuples(*b, n, false);
        for (auto& [xs, val] : a.table(n))
            for (auto& ys : bt) {
                Vec p = product(ys);
                if (p.empty())
                    continue;
                Tuple t(xs.size());
                for (Index j = 0; j < xs.size(); ++j)
                    t[j] = xs[j] * db + ys[j];
                Vec v;
                put(val, p, koszul(xs, ys), v);
                out.set_op(n, t, std::move(v));
            }
    }
    return out;
}

Vec mc_residual(const AInf& a, const MCElement& e)
{
    const Cat& c = a.cat();
    for (auto& [x, s] : e.delta) {
        const Arrow& ar = c.arrow(x);
        if (ar.src != e.object || ar.tgt != e.object || ar.deg != 1)
            throw std::invalid_argument("Maurer-Cartan element must be a degree-1 endomorphism");
    }
    Vec out;
    if (e.delta.empty())
        return out;
    for (int n = 1; n <= a.arity_bound(); ++n)
        out += a.op(n, std::vector<Vec>(static_cast<Index>(n), e.delta));
    return out;
}

TwResult tw_category(const AInf& a, const std::vector<MCElement>& objects)
{
    const Cat& c = a.cat();
    for (auto& e : objects) {
        Vec r = mc_residual(a, e);
        if (!r.empty())
            throw std::invalid_argument("Maurer-Cartan equation fails on object " + c.object_name(e.object) +
                                        ", residual " + r.str());
    }
    auto base = std::make_shared<Cat>(c.field());
    TwResult res;
    Index no = objects.size();
    std::map<Index, int> uses;
    for (auto& e : objects)
        ++uses[e.object];
    for (Index i = 0; i < no; ++i) {
        Index o = objects[i].object;
        base->add_object(uses[o] > 1 ? c.object_name(o) + "#" + std::to_string(i) : c.object_name(o));
        res.base_object.push_back(o);
    }
    // new_arrow[(i, j)][x] is the copy of base arrow x between objects i and j.
    std::map<std::pair<Index, Index>, std::map<Index, Index>> copy;
    for (Index i = 0; i < no; ++i)
        for (Index j = 0; j < no; ++j) {
            Index A = objects[i].object, B = objects[j].object;
            bool dup = uses[A] > 1 || uses[B] > 1;
            for (Index x : c.hom(A, B)) {
                const Arrow& ar = c.arrow(x);
                std::string name = dup ? ar.name + "#" + std::to_string(i) + "," + std::to_string(j) : ar.name;
                Index y = (i == j && c.identity_arrow(A) == x) ? base->add_identity(i, name)
                                                               : base->add_arrow(name, i, j, ar.deg);
                copy[{i, j}][x] = y;
                res.base_arrow.push_back(x);
            }
        }
    auto translate = [&](const Vec& v, Index i, Index j) {
        Vec out;
        auto& tab = copy.at({i, j});
        for (auto& [x, s] : v)
            out.add(tab.at(x), s);
        return out;
    };
    for (Index i = 0; i < no; ++i)
        if (c.identity_arrow(objects[i].object) == npos)
            base->set_identity_vector(i, translate(c.identity(objects[i].object), i, i));
    for (Index y = 0; y < base->dim(); ++y) {
        const Arrow& ay = base->arrow(y);
        Vec dv = c.d(res.base_arrow[y]);
        if (!dv.empty())
            base->set_diff(y, translate(dv, ay.src, ay.tgt));
        for (Index z : base->into(ay.src)) {
            Vec p = c.compose(res.base_arrow[y], res.base_arrow[z]);
            if (!p.empty())
                base->set_compose(y, z, translate(p, base->arrow(z).src, ay.tgt));
        }
    }
    auto tw = std::make_shared<AInf>(base, a.arity_bound());
    int bound = a.arity_bound();
    for (int p = 1; p <= bound; ++p) {
        if (p <= 2)
            tw->override_op(p);
        each_tuple(*base, p, [&](const Tuple& t) {
            // objects along the chain: obj[0] = target, obj[p] = source
            std::vector<Index> obj;
            obj.push_back(base->arrow(t[0]).tgt);
            for (Index x : t)
                obj.push_back(base->arrow(x).src);
            Vec total;
            std::vector<int> extra(static_cast<Index>(p) + 1, 0);
            auto rec = [&](auto&& self, Index slot, int left) -> void {
                if (slot == extra.size()) {
                    std::vector<Vec> args;
                    for (Index s = 0; s <= static_cast<Index>(p); ++s) {
                        for (int q = 0; q < extra[s]; ++q)
                            args.push_back(objects[obj[s]].delta);
                        if (s < static_cast<Index>(p))
                            args.push_back(Vec::unit(res.base_arrow[t[s]], c.field().one()));
                    }
                    int m = static_cast<int>(args.size());
                    total += a.op(m, args);
                    return;
                }
                for (int q = 0; q <= left; ++q) {
                    if (q > 0 && objects[obj[slot]].delta.empty())
                        break;
                    extra[slot] = q;
                    self(self, slot + 1, left - q);
                }
                extra[slot] = 0;
            };
            rec(rec, 0, bound - p);
            if (!total.empty())
                tw->set_op(p, t, translate(total, obj[p], obj[0]));
        });
    }
    res.tw = tw;
    return res;
}

Cofunctor::Cofunctor(AInfPtr src, AInfPtr tgt, std::vector<Index> on_objects)
    : src_(std::move(src)), tgt_(std::move(tgt)), obj_(std::move(on_objects))
{
    if (obj_.size() != src_->cat().num_objects())
        throw std::invalid_argument("cofunctor: object map has the wrong size");
    for (Index o : obj_)
        if (o >= tgt_->cat().num_objects())
            throw std::invalid_argument("cofunctor: object map leaves the target");
}

Cofunctor Cofunctor::strict(AInfPtr src, AInfPtr tgt, const GradedFunctor& f)
{
    Cofunctor out(std::move(src), std::move(tgt), f.on_objects);
    const Cat& c = out.src().cat();
    for (Index x = 0; x < c.dim(); ++x)
        if (!c.is_identity(x))
            out.set(1, {x}, f.on_arrows.at(x));
    return out;
}

void Cofunctor::set(int n, const Tuple& t, Vec v)
{
    const Cat& c = src_->cat();
    const Cat& d = tgt_->cat();
    if (n < 1 || static_cast<int>(t.size()) != n || !composable(c, t))
        throw std::invalid_argument("cofunctor: bad tuple");
    for (Index x : t)
        if (c.is_identity(x))
            throw std::invalid_argument("cofunctor: strictly unital, identity arguments are implicit");
    v = v.in_field(d.field().p);
    Index s = obj_[c.arrow(t.back()).src], g = obj_[c.arrow(t.front()).tgt];
    int deg = tuple_degree(c, t) + 1 - n;
    for (auto& [i, x] : v) {
        const Arrow& a = d.arrow(i);
        if (a.src != s || a.tgt != g || a.deg != deg)
            throw std::invalid_argument("cofunctor: coefficient has wrong endpoints or degree on " + tuple_names(c, t));
    }
    if (v.empty())
        f_[n].erase(t);
    else
        f_[n][t] = std::move(v);
}

void Cofunctor::add(int n, const Tuple& t, const Vec& v)
{
    Vec w = coef(n, t);
    w += v;
    set(n, t, std::move(w));
}

Vec Cofunctor::coef(int n, const Tuple& t) const
{
    const Cat& c = src_->cat();
    for (Index x : t)
        if (c.is_identity(x)) {
            if (n == 1)
                return tgt_->cat().identity(obj_[c.arrow(x).src]);
            return {};
        }
    auto it = f_.find(n);
    if (it == f_.end())
        return {};
    auto jt = it->second.find(t);
    return jt == it->second.end() ? Vec() : jt->second;
}

Vec Cofunctor::coef(int n, const std::vector<Vec>& args) const
{
    Vec out;
    if (n != 1 && table(n).empty())
        return out;
    expand(src_->cat(), args, [&](const Tuple& t, const Scalar& c) { out.axpy(c, coef(n, t)); });
    return out;
}

const OpTable& Cofunctor::table(int n) const
{
    auto it = f_.find(n);
    return it == f_.end() ? kNoTable : it->second;
}

std::vector<int> Cofunctor::active() const
{
    std::vector<int> out{1};
    for (auto& [n, t] : f_)
        if (n >= 2 && !t.empty())
            out.push_back(n);
    return out;
}

int Cofunctor::max_arity() const { return active().back(); }

Vec functor_defect(const Cofunctor& f, const std::vector<Vec>& args)
{
    const AInf& A = f.src();
    const AInf& B = f.tgt();
    const Cat& c = A.cat();
    int m = static_cast<int>(args.size());
    auto fa = f.active();
    auto ta = B.active();
    Vec out;
    std::vector<Vec> outs;
    auto rec = [&](auto&& self, int p) -> void {
        if (p == m) {
            int k = static_cast<int>(outs.size());
            if (std::binary_search(ta.begin(), ta.end(), k))
                out += B.op(k, outs);
            return;
        }
        for (int j : fa) {
            if (p + j > m)
                break;
            Vec v = f.coef(j, std::vector<Vec>(args.begin() + p, args.begin() + p + j));
            if (v.empty())
                continue;
            outs.push_back(std::move(v));
            self(self, p + j);
            outs.pop_back();
        }
    };
    rec(rec, 0);
    for (int s : A.active()) {
        int k = m - s + 1;
        if (s > m || !std::binary_search(fa.begin(), fa.end(), k))
            continue;
        long prefix = 0;
        for (int r = 0; r + s <= m; ++r) {
            if (r > 0)
                prefix += vec_degree(c, args[static_cast<Index>(r - 1)]) - 1;
            Vec inner = A.op(s, std::vector<Vec>(args.begin() + r, args.begin() + r + s));
            if (inner.empty())
                continue;
            std::vector<Vec> in(args.begin(), args.begin() + r);
            in.push_back(std::move(inner));
            in.insert(in.end(), args.begin() + r + s, args.end());
            out.axpy(Scalar(-sign(prefix)), f.coef(k, in));
        }
    }
    return out;
}

Vec functor_defect(const Cofunctor& f, const Tuple& t)
{
    std::vector<Vec> args;
    for (Index x : t)
        args.push_back(Vec::unit(x, f.src().cat().field().one()));
    return functor_defect(f, args);
}

int functor_check_bound(const Cofunctor& f)
{
    int j = f.max_arity();
    int k = f.tgt().active().back();
    int s = f.src().active().back();
    return std::max(j * k, j + s - 1);
}

CheckReport check_functor(const Cofunctor& f, int max_arity)
{
    const Cat& c = f.src().cat();
    const Cat& d = f.tgt().cat();
    CheckReport rep;
    if (d.dim() == 0)
        return rep;
    for (int m = 1; m <= max_arity && rep.ok; ++m)
        each_tuple(
            c, m,
            [&](const Tuple& t) {
                if (!rep.ok)
                    return;
                int deg = tuple_degree(c, t) + 2 - m;
                Index s = f.on_object(c.arrow(t.back()).src), g = f.on_object(c.arrow(t.front()).tgt);
                if (d.hom(s, g, deg).empty())
                    return;
                Vec r = functor_defect(f, t);
                if (!r.empty()) {
                    rep.ok = false;
                    rep.arity = m;
                    for (Index x : t)
                        rep.witness.push_back(c.arrow(x).name);
                    rep.residual = r;
                }
            },
            d.min_degree() - 2 + m, d.max_degree() - 2 + m);
    return rep;
}

MCElement mc_pushforward(const Cofunctor& f, const MCElement& e)
{
    MCElement out;
    out.object = f.on_object(e.object);
    if (!e.delta.empty())
        for (int n : f.active())
            out.delta += f.coef(n, std::vector<Vec>(static_cast<Index>(n), e.delta));
    Vec r = mc_residual(f.tgt(), out);
    if (!r.empty())
        throw std::runtime_error("pushed-forward element fails the Maurer-Cartan equation, residual " + r.str());
    return out;
}

CheckReport tw_cofunctor_check(const Cofunctor& f, const std::vector<MCElement>& deltas,
                               const std::vector<TwArrowSample>& arrows, int max_repeat)
{
    const Cat& c = f.src().cat();
    CheckReport rep;
    auto run = [&](const std::vector<std::pair<Vec, std::string>>& seq) {
        if (!rep.ok || seq.empty())
            return;
        std::vector<Vec> args;
        for (auto& [v, n] : seq)
            args.push_back(v);
        Vec r = functor_defect(f, args);
        if (!r.empty()) {
            rep.ok = false;
            rep.arity = static_cast<int>(args.size());
            for (auto& [v, n] : seq)
                rep.witness.push_back(n);
            rep.residual = r;
        }
    };
    auto repeat = [&](std::vector<std::pair<Vec, std::string>>& seq, Index which, int times) {
        for (int q = 0; q < times; ++q)
            seq.push_back({deltas[which].delta, "delta" + std::to_string(which)});
    };
    for (Index i = 0; i < deltas.size(); ++i)
        for (int n = 1; n <= max_repeat; ++n) {
            std::vector<std::pair<Vec, std::string>> seq;
            repeat(seq, i, n);
            run(seq);
        }
    for (Index a = 0; a < arrows.size(); ++a) {
        int deg = vec_degree(c, arrows[a].u);
        if (deg != 0 && deg != -1)
            continue;
        for (int n1 = 0; n1 <= max_repeat; ++n1)
            for (int n0 = 0; n0 <= max_repeat; ++n0) {
                std::vector<std::pair<Vec, std::string>> seq;
                repeat(seq, arrows[a].to, n1);
                seq.push_back({arrows[a].u, "u" + std::to_string(a)});
                repeat(seq, arrows[a].from, n0);
                run(seq);
            }
    }
    for (Index a = 0; a < arrows.size(); ++a)
        for (Index b = 0; b < arrows.size(); ++b) {
            // u_2 = arrows[a] after u_1 = arrows[b]
            if (arrows[b].to != arrows[a].from || vec_degree(c, arrows[a].u) != 0 || vec_degree(c, arrows[b].u) != 0)
                continue;
            for (int n2 = 0; n2 <= max_repeat; ++n2)
                for (int n1 = 0; n1 <= max_repeat; ++n1)
                    for (int n0 = 0; n0 <= max_repeat; ++n0) {
                        std::vector<std::pair<Vec, std::string>> seq;
                        repeat(seq, arrows[a].to, n2);
                        seq.push_back({arrows[a].u, "u" + std::to_string(a)});
                        repeat(seq, arrows[a].from, n1);
                        seq.push_back({arrows[b].u, "u" + std::to_string(b)});
                        repeat(seq, arrows[b].from, n0);
                        run(seq);
                    }
        }
    return rep;
}

}  // namespace hocat
