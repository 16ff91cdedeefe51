#include "hocat/glc.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hocat {

namespace {

const std::vector<Index> kEmpty;

constexpr std::size_t kMaxFailures = 25;

void note(Report& r, const std::string& s)
{
    if (r.failures.size() < kMaxFailures)
        r.fail(s);
}

}  // namespace

std::string Report::str() const
{
    if (ok())
        return "valid";
    std::ostringstream os;
    for (auto& f : failures)
        os << f << "\n";
    return os.str();
}

Index Cat::add_object(std::string name)
{
    if (obj_index_.count(name))
        throw std::invalid_argument("duplicate object '" + name + "'");
    obj_index_[name] = objects_.size();
    objects_.push_back(std::move(name));
    ids_.emplace_back();
    id_arrow_.push_back(npos);
    from_.emplace_back();
    into_.emplace_back();
    return objects_.size() - 1;
}

Index Cat::add_arrow(std::string name, Index src, Index tgt, int deg)
{
    if (src >= objects_.size() || tgt >= objects_.size())
        throw std::invalid_argument("arrow '" + name + "' has unknown endpoint");
    if (arrow_index_.count(name))
        throw std::invalid_argument("duplicate arrow '" + name + "'");
    arrow_index_[name] = arrows_.size();
    arrows_.push_back({std::move(name), src, tgt, deg});
    bucket_(arrows_.size() - 1);
    return arrows_.size() - 1;
}

void Cat::bucket_(Index x)
{
    const Arrow& a = arrows_[x];
    hom_[{a.src, a.tgt}].push_back(x);
    from_[a.src].push_back(x);
    into_[a.tgt].push_back(x);
}

Index Cat::add_identity(Index obj, std::string name)
{
    Index x = add_arrow(std::move(name), obj, obj, 0);
    set_identity_vector(obj, Vec::unit(x));
    return x;
}

void Cat::set_identity_vector(Index obj, Vec v)
{
    v = v.in_field(k_.p);
    id_arrow_.at(obj) = (v.size() == 1 && v.front().second.is_one()) ? v.front().first : npos;
    ids_.at(obj) = std::move(v);
}

void Cat::set_compose(Index g, Index f, Vec v)
{
    v = v.in_field(k_.p);
    if (v.empty())
        comp_.erase({g, f});
    else
        comp_[{g, f}] = std::move(v);
}

void Cat::set_diff(Index x, Vec v)
{
    v = v.in_field(k_.p);
    if (v.empty())
        diff_.erase(x);
    else
        diff_[x] = std::move(v);
}

std::optional<Index> Cat::find_object(const std::string& name) const
{
    auto it = obj_index_.find(name);
    if (it == obj_index_.end())
        return std::nullopt;
    return it->second;
}

std::optional<Index> Cat::find_arrow(const std::string& name) const
{
    auto it = arrow_index_.find(name);
    if (it == arrow_index_.end())
        return std::nullopt;
    return it->second;
}

bool Cat::is_identity(Index x) const
{
    const Arrow& a = arrows_.at(x);
    return id_arrow_[a.src] == x;
}

bool Cat::basis_identities() const
{
    return std::none_of(id_arrow_.begin(), id_arrow_.end(), [](Index i) { return i == npos; });
}

const std::vector<Index>& Cat::hom(Index a, Index b) const
{
    auto it = hom_.find({a, b});
    return it == hom_.end() ? kEmpty : it->second;
}

std::vector<Index> Cat::hom(Index a, Index b, int deg) const
{
    std::vector<Index> out;
    for (Index x : hom(a, b))
        if (arrows_[x].deg == deg)
            out.push_back(x);
    return out;
}

const std::vector<Index>& Cat::from(Index a) const { return from_.at(a); }
const std::vector<Index>& Cat::into(Index b) const { return into_.at(b); }

Vec Cat::compose(Index g, Index f) const
{
    const Arrow& ag = arrows_[g];
    const Arrow& af = arrows_[f];
    if (ag.src != af.tgt)
        return {};
    if (id_arrow_[ag.src] == g)
        return Vec::unit(f, k_.one());
    if (id_arrow_[af.src] == f)
        return Vec::unit(g, k_.one());
    auto it = comp_.find({g, f});
    return it == comp_.end() ? Vec() : it->second;
}

Vec Cat::compose(const Vec& g, const Vec& f) const
{
    Vec out;
    for (auto& [i, a] : g)
        for (auto& [j, b] : f) {
            Vec p = compose(i, j);
            if (!p.empty())
                out.axpy(a * b, p);
        }
    return out;
}

Vec Cat::d(Index x) const
{
    auto it = diff_.find(x);
    return it == diff_.end() ? Vec() : it->second;
}

Vec Cat::d(const Vec& v) const
{
    Vec out;
    if (diff_.empty())
        return out;
    for (auto& [i, a] : v) {
        auto it = diff_.find(i);
        if (it != diff_.end())
            out.axpy(a, it->second);
    }
    return out;
}

int Cat::min_degree() const
{
    int m = 0;
    for (auto& a : arrows_)
        m = std::min(m, a.deg);
    return m;
}

int Cat::max_degree() const
{
    int m = 0;
    for (auto& a : arrows_)
        m = std::max(m, a.deg);
    return m;
}

int Cat::degree(const Vec& v) const
{
    if (v.empty())
        throw std::invalid_argument("degree of zero vector");
    int d = arrows_.at(v.front().first).deg;
    for (auto& [i, c] : v)
        if (arrows_.at(i).deg != d)
            throw std::invalid_argument("inhomogeneous vector");
    return d;
}

Index Cat::src(const Vec& v) const
{
    if (v.empty())
        throw std::invalid_argument("source of zero vector");
    return arrows_.at(v.front().first).src;
}

Index Cat::tgt(const Vec& v) const
{
    if (v.empty())
        throw std::invalid_argument("target of zero vector");
    return arrows_.at(v.front().first).tgt;
}

namespace {

bool supported_in(const Cat& c, const Vec& v, Index a, Index b, int deg)
{
    for (auto& [i, x] : v) {
        const Arrow& ar = c.arrow(i);
        if (ar.src != a || ar.tgt != b || ar.deg != deg)
            return false;
    }
    return true;
}

}  // namespace

Report validate(const Cat& c)
{
    Report r;
    for (Index o = 0; o < c.num_objects(); ++o) {
        const Vec& id = c.identity(o);
        if (!supported_in(c, id, o, o, 0))
            note(r, "identity of " + c.object_name(o) + " is not a degree-0 endomorphism");
        if (!c.d(id).empty())
            note(r, "identity of " + c.object_name(o) + " is not closed");
    }
    for (auto& [key, v] : c.compose_table()) {
        const Arrow& g = c.arrow(key.first);
        const Arrow& f = c.arrow(key.second);
        if (g.src != f.tgt) {
            note(r, "composition " + g.name + " o " + f.name + " stored for non-composable pair");
            continue;
        }
        if (!supported_in(c, v, f.src, g.tgt, g.deg + f.deg))
            note(r, "composition " + g.name + " o " + f.name + " has wrong endpoints or degree");
    }
    for (auto& [x, v] : c.diff_table()) {
        const Arrow& a = c.arrow(x);
        if (!supported_in(c, v, a.src, a.tgt, a.deg + 1))
            note(r, "differential of " + a.name + " has wrong endpoints or degree");
    }
    for (Index x = 0; x < c.dim(); ++x) {
        const Arrow& a = c.arrow(x);
        Vec ux = Vec::unit(x);
        if (c.compose(c.identity(a.tgt), ux) != ux || c.compose(ux, c.identity(a.src)) != ux)
            note(r, "unit law fails for " + a.name);
        if (!c.d(c.d(ux)).empty())
            note(r, "d^2 != 0 on " + a.name);
    }
    for (Index f = 0; f < c.dim(); ++f) {
        const Arrow& af = c.arrow(f);
        for (Index g : c.from(af.tgt)) {
            const Arrow& ag = c.arrow(g);
            Vec gf = c.compose(g, f);
            if (c.has_diff()) {
                Vec lhs = c.d(gf);
                Vec rhs = c.compose(c.d(Vec::unit(g)), Vec::unit(f));
                rhs.axpy(Scalar(sign(ag.deg)), c.compose(Vec::unit(g), c.d(Vec::unit(f))));
                if (lhs != rhs)
                    note(r, "Leibniz rule fails on (" + ag.name + ", " + af.name + ")");
            }
            for (Index h : c.from(ag.tgt)) {
                if (c.is_identity(h) || c.is_identity(g) || c.is_identity(f))
                    continue;
                Vec lhs = c.compose(c.compose(Vec::unit(h), Vec::unit(g)), Vec::unit(f));
                Vec rhs = c.compose(Vec::unit(h), gf);
                if (lhs != rhs)
                    note(r, "associativity fails on (" + c.arrow(h).name + ", " + ag.name + ", " + af.name + ")");
            }
        }
    }
    return r;
}

CatPtr unit_cat(Field k)
{
    auto c = std::make_shared<Cat>(k);
    Index o = c->add_object("pt");
    c->add_identity(o, "1");
    return c;
}

Bimodule::Bimodule(CatPtr left, CatPtr right) : l_(std::move(left)), r_(std::move(right))
{
    if (!l_ || !r_)
        throw std::invalid_argument("bimodule needs both categories");
}

Index Bimodule::add_element(std::string name, Index src, Index tgt, int deg)
{
    if (src >= r_->num_objects() || tgt >= l_->num_objects())
        throw std::invalid_argument("bimodule element '" + name + "' has unknown endpoint");
    if (index_.count(name))
        throw std::invalid_argument("duplicate bimodule element '" + name + "'");
    index_[name] = el_.size();
    el_.push_back({std::move(name), src, tgt, deg});
    part_[{src, tgt}].push_back(el_.size() - 1);
    return el_.size() - 1;
}

void Bimodule::set_left(Index x, Index m, Vec v)
{
    v = v.in_field(l_->field().p);
    if (v.empty())
        lt_.erase({x, m});
    else
        lt_[{x, m}] = std::move(v);
}

void Bimodule::set_right(Index m, Index y, Vec v)
{
    v = v.in_field(l_->field().p);
    if (v.empty())
        rt_.erase({m, y});
    else
        rt_[{m, y}] = std::move(v);
}

void Bimodule::set_diff(Index m, Vec v)
{
    v = v.in_field(l_->field().p);
    if (v.empty())
        diff_.erase(m);
    else
        diff_[m] = std::move(v);
}

const std::vector<Index>& Bimodule::part(Index src, Index tgt) const
{
    auto it = part_.find({src, tgt});
    return it == part_.end() ? kEmpty : it->second;
}

std::optional<Index> Bimodule::find(const std::string& name) const
{
    auto it = index_.find(name);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

Vec Bimodule::act_left(Index x, Index m) const
{
    const Arrow& ax = l_->arrow(x);
    if (ax.src != el_[m].tgt)
        return {};
    if (l_->identity_arrow(ax.src) == x)
        return Vec::unit(m, l_->field().one());
    auto it = lt_.find({x, m});
    return it == lt_.end() ? Vec() : it->second;
}

Vec Bimodule::act_right(Index m, Index y) const
{
    const Arrow& ay = r_->arrow(y);
    if (ay.tgt != el_[m].src)
        return {};
    if (r_->identity_arrow(ay.tgt) == y)
        return Vec::unit(m, l_->field().one());
    auto it = rt_.find({m, y});
    return it == rt_.end() ? Vec() : it->second;
}

Vec Bimodule::act_left(const Vec& x, const Vec& m) const
{
    Vec out;
    for (auto& [i, a] : x)
        for (auto& [j, b] : m)
            out.axpy(a * b, act_left(i, j));
    return out;
}

Vec Bimodule::act_right(const Vec& m, const Vec& y) const
{
    Vec out;
    for (auto& [i, a] : m)
        for (auto& [j, b] : y)
            out.axpy(a * b, act_right(i, j));
    return out;
}

Vec Bimodule::d(const Vec& m) const
{
    Vec out;
    for (auto& [i, a] : m) {
        auto it = diff_.find(i);
        if (it != diff_.end())
            out.axpy(a, it->second);
    }
    return out;
}

Bimodule Bimodule::degree_part(int deg) const
{
    Bimodule out(l_, r_);
    std::vector<Index> to(el_.size(), npos);
    for (Index m = 0; m < el_.size(); ++m)
        if (el_[m].deg == deg)
            to[m] = out.add_element(el_[m].name, el_[m].src, el_[m].tgt, deg);
    auto move = [&](const Vec& v) {
        Vec w;
        for (auto& [i, c] : v) {
            if (to[i] == npos)
                throw std::invalid_argument("bimodule action does not preserve degree");
            w.push_back(to[i], c);
        }
        return w;
    };
    for (auto& [k, v] : lt_)
        if (to[k.second] != npos)
            out.set_left(k.first, to[k.second], move(v));
    for (auto& [k, v] : rt_)
        if (to[k.first] != npos)
            out.set_right(to[k.first], k.second, move(v));
    return out;
}

Report validate(const Bimodule& m)
{
    Report r;
    const Cat& L = m.left();
    const Cat& R = m.right();
    auto in_part = [&](const Vec& v, Index s, Index t, int deg) {
        for (auto& [i, c] : v) {
            const Arrow& e = m.element(i);
            if (e.src != s || e.tgt != t || e.deg != deg)
                return false;
        }
        return true;
    };
    for (auto& [k, v] : m.left_table()) {
        const Arrow& x = L.arrow(k.first);
        const Arrow& e = m.element(k.second);
        if (x.src != e.tgt || !in_part(v, e.src, x.tgt, x.deg + e.deg))
            note(r, "left action " + x.name + " . " + e.name + " misplaced");
    }
    for (auto& [k, v] : m.right_table()) {
        const Arrow& e = m.element(k.first);
        const Arrow& y = R.arrow(k.second);
        if (y.tgt != e.src || !in_part(v, y.src, e.tgt, y.deg + e.deg))
            note(r, "right action " + e.name + " . " + y.name + " misplaced");
    }
    for (Index i = 0; i < m.dim(); ++i) {
        const Arrow& e = m.element(i);
        Vec ue = Vec::unit(i);
        if (m.act_left(L.identity(e.tgt), ue) != ue || m.act_right(ue, R.identity(e.src)) != ue)
            note(r, "unit law fails on " + e.name);
        for (Index x : L.from(e.tgt)) {
            Vec xm = m.act_left(x, i);
            for (Index x2 : L.from(L.arrow(x).tgt)) {
                if (m.act_left(Vec::unit(x2), xm) != m.act_left(L.compose(x2, x), ue))
                    note(r, "left associativity fails on (" + L.arrow(x2).name + ", " + L.arrow(x).name + ", " +
                                e.name + ")");
            }
            for (Index y : R.into(e.src)) {
                if (m.act_right(xm, Vec::unit(y)) != m.act_left(Vec::unit(x), m.act_right(i, y)))
                    note(r, "bimodule compatibility fails on (" + L.arrow(x).name + ", " + e.name + ", " +
                                R.arrow(y).name + ")");
            }
            if (m.has_diff() || L.has_diff()) {
                Vec lhs = m.d(xm);
                Vec rhs = m.act_left(L.d(Vec::unit(x)), ue);
                rhs.axpy(Scalar(sign(L.arrow(x).deg)), m.act_left(Vec::unit(x), m.d(ue)));
                if (lhs != rhs)
                    note(r, "left Leibniz fails on (" + L.arrow(x).name + ", " + e.name + ")");
            }
        }
        for (Index y : R.into(e.src)) {
            Vec my = m.act_right(i, y);
            for (Index y2 : R.into(R.arrow(y).src)) {
                if (m.act_right(my, Vec::unit(y2)) != m.act_right(ue, R.compose(y, y2)))
                    note(r, "right associativity fails on (" + e.name + ", " + R.arrow(y).name + ", " +
                                R.arrow(y2).name + ")");
            }
            if (m.has_diff() || R.has_diff()) {
                Vec lhs = m.d(my);
                Vec rhs = m.act_right(m.d(ue), Vec::unit(y));
                rhs.axpy(Scalar(sign(e.deg)), m.act_right(ue, R.d(Vec::unit(y))));
                if (lhs != rhs)
                    note(r, "right Leibniz fails on (" + e.name + ", " + R.arrow(y).name + ")");
            }
        }
        if (!m.d(m.d(ue)).empty())
            note(r, "d^2 != 0 on " + e.name);
    }
    return r;
}

Bimodule diagonal(CatPtr c)
{
    Bimodule m(c, c);
    for (auto& a : c->arrows())
        m.add_element(a.name, a.src, a.tgt, a.deg);
    for (Index e = 0; e < c->dim(); ++e) {
        const Arrow& a = c->arrow(e);
        for (Index x : c->from(a.tgt))
            if (!c->is_identity(x))
                m.set_left(x, e, c->compose(x, e));
        for (Index y : c->into(a.src))
            if (!c->is_identity(y))
                m.set_right(e, y, c->compose(e, y));
    }
    for (auto& [x, v] : c->diff_table())
        m.set_diff(x, v);
    return m;
}

Bimodule left_module(CatPtr c) { return Bimodule(c, unit_cat(c->field())); }

Vec GradedFunctor::apply(const Vec& v) const
{
    Vec out;
    for (auto& [i, c] : v)
        out.axpy(c, on_arrows.at(i));
    return out;
}

Report validate(const GradedFunctor& f, bool check_diff)
{
    Report r;
    const Cat& A = *f.src;
    const Cat& B = *f.tgt;
    if (f.on_objects.size() != A.num_objects() || f.on_arrows.size() != A.dim()) {
        r.fail("functor tables have the wrong size");
        return r;
    }
    for (Index o = 0; o < A.num_objects(); ++o) {
        if (f.on_objects[o] >= B.num_objects()) {
            r.fail("object " + A.object_name(o) + " sent outside the target");
            return r;
        }
        if (f.apply(A.identity(o)) != B.identity(f.on_objects[o]))
            note(r, "identity of " + A.object_name(o) + " not preserved");
    }
    for (Index x = 0; x < A.dim(); ++x) {
        const Arrow& a = A.arrow(x);
        if (!supported_in(B, f.on_arrows[x], f.on_objects[a.src], f.on_objects[a.tgt], a.deg))
            note(r, "image of " + a.name + " has wrong endpoints or degree");
        if (check_diff && f.apply(A.d(Vec::unit(x))) != B.d(f.on_arrows[x]))
            note(r, "functor does not commute with d on " + a.name);
        for (Index g : A.from(a.tgt)) {
            if (f.apply(A.compose(g, x)) != B.compose(f.on_arrows[g], f.on_arrows[x]))
                note(r, "composition not preserved on (" + A.arrow(g).name + ", " + a.name + ")");
        }
    }
    return r;
}

GradedFunctor identity_functor(CatPtr c)
{
    GradedFunctor f{c, c, {}, {}};
    for (Index o = 0; o < c->num_objects(); ++o)
        f.on_objects.push_back(o);
    for (Index x = 0; x < c->dim(); ++x)
        f.on_arrows.push_back(Vec::unit(x));
    return f;
}

Index tensor_index(const Cat& /*a*/, const Cat& b, Index x, Index y) { return x * b.dim() + y; }

Cat tensor(const Cat& a, const Cat& b)
{
    if (a.field() != b.field())
        throw std::invalid_argument("tensor: categories over different fields");
    Cat t(a.field());
    Index nb = b.num_objects();
    for (Index i = 0; i < a.num_objects(); ++i)
        for (Index j = 0; j < nb; ++j)
            t.add_object(a.object_name(i) + "." + b.object_name(j));
    for (Index x = 0; x < a.dim(); ++x)
        for (Index y = 0; y < b.dim(); ++y) {
            const Arrow& ax = a.arrow(x);
            const Arrow& by = b.arrow(y);
            t.add_arrow(ax.name + "." + by.name, ax.src * nb + by.src, ax.tgt * nb + by.tgt, ax.deg + by.deg);
        }
    auto tv = [&](const Vec& u, const Vec& v) {
        Vec out;
        for (auto& [i, c] : u)
            for (auto& [j, e] : v)
                out.add(tensor_index(a, b, i, j), c * e);
        return out;
    };
    for (Index i = 0; i < a.num_objects(); ++i)
        for (Index j = 0; j < nb; ++j)
            t.set_identity_vector(i * nb + j, tv(a.identity(i), b.identity(j)));
    for (Index x = 0; x < a.dim(); ++x)
        for (Index y = 0; y < b.dim(); ++y) {
            Index f = tensor_index(a, b, x, y);
            const Arrow& ax = a.arrow(x);
            const Arrow& by = b.arrow(y);
            for (Index x2 : a.from(ax.tgt))
                for (Index y2 : b.from(by.tgt)) {
                    Index g = tensor_index(a, b, x2, y2);
                    if (t.is_identity(g) || t.is_identity(f))
                        continue;
                    Vec p = tv(a.compose(x2, x), b.compose(y2, y));
                    p *= Scalar(sign(static_cast<long>(b.arrow(y2).deg) * ax.deg));
                    t.set_compose(g, f, std::move(p));
                }
            Vec dv = tv(a.d(Vec::unit(x)), Vec::unit(y));
            dv.axpy(Scalar(sign(ax.deg)), tv(Vec::unit(x), b.d(Vec::unit(y))));
            t.set_diff(f, std::move(dv));
        }
    return t;
}

Cat trivial_extension(const Cat& a, const Bimodule& m, int shift)
{
    if (m.left().dim() != a.dim() || m.right().dim() != a.dim() || m.left().num_objects() != a.num_objects())
        throw std::invalid_argument("trivial extension: bimodule is not over the given category");
    Cat t(a.field());
    for (Index o = 0; o < a.num_objects(); ++o)
        t.add_object(a.object_name(o));
    for (auto& ar : a.arrows())
        t.add_arrow(ar.name, ar.src, ar.tgt, ar.deg);
    Index off = a.dim();
    for (auto& e : m.elements())
        t.add_arrow(a.find_arrow(e.name) ? "s" + e.name : e.name, e.src, e.tgt, e.deg - shift);
    auto up = [&](const Vec& v) {
        Vec w;
        for (auto& [i, c] : v)
            w.push_back(i + off, c);
        return w;
    };
    for (Index o = 0; o < a.num_objects(); ++o)
        t.set_identity_vector(o, a.identity(o));
    for (auto& [k, v] : a.compose_table())
        t.set_compose(k.first, k.second, v);
    for (auto& [x, v] : a.diff_table())
        t.set_diff(x, v);
    for (auto& [k, v] : m.left_table())
        t.set_compose(k.first, k.second + off, Scalar(sign(static_cast<long>(shift) * a.arrow(k.first).deg)) * up(v));
    for (auto& [k, v] : m.right_table())
        t.set_compose(k.first + off, k.second, up(v));
    for (auto& [x, v] : m.diff_table())
        t.set_diff(x + off, Scalar(sign(shift)) * up(v));
    return t;
}

HomCohomology::HomCohomology(const Cat& c, Index a, Index b, int deg, const std::vector<Vec>& preferred) : c_(&c)
{
    below_ = c.hom(a, b, deg - 1);
    here_ = c.hom(a, b, deg);
    above_ = c.hom(a, b, deg + 1);
    din_ = Matrix(here_.size(), below_.size());
    for (Index j = 0; j < below_.size(); ++j)
        din_.set_col(j, local_(c.d(below_[j]), here_));
    dout_ = Matrix(above_.size(), here_.size());
    for (Index j = 0; j < here_.size(); ++j)
        dout_.set_col(j, local_(c.d(here_[j]), above_));
    std::vector<Vec> pref;
    for (auto& v : preferred)
        pref.push_back(local_(v, here_));
    h_.emplace(din_, dout_, pref);
}

Vec HomCohomology::local_(const Vec& v, const std::vector<Index>& basis) const
{
    Vec w;
    for (auto& [i, c] : v) {
        auto it = std::lower_bound(basis.begin(), basis.end(), i);
        if (it == basis.end() || *it != i)
            throw std::invalid_argument("vector outside the Hom space " + c_->arrow(i).name);
        w.push_back(static_cast<Index>(it - basis.begin()), c);
    }
    return w;
}

Vec HomCohomology::global_(const Vec& v, const std::vector<Index>& basis) const
{
    Vec w;
    for (auto& [i, c] : v)
        w.push_back(basis[i], c);
    return w;
}

Vec HomCohomology::rep(Index k) const { return global_(h_->basis().at(k), here_); }

Vec HomCohomology::project(const Vec& v) const { return h_->project(local_(v, here_)); }

bool HomCohomology::is_cocycle(const Vec& v) const { return dout_.apply(local_(v, here_)).empty(); }

std::vector<Vec> HomCohomology::cocycles() const
{
    std::vector<Vec> out;
    for (auto& z : kernel_basis(dout_))
        out.push_back(global_(z, here_));
    return out;
}

std::optional<Vec> HomCohomology::primitive(const Vec& v) const
{
    auto y = solve(din_, local_(v, here_));
    if (!y)
        return std::nullopt;
    return global_(*y, below_);
}

H0Result h0_functor(CatPtr cp)
{
    const Cat& c = *cp;
    if (c.max_degree() > 0)
        throw std::invalid_argument("h0_functor: category has morphisms of positive degree");
    auto h = std::make_shared<Cat>(c.field());
    for (Index o = 0; o < c.num_objects(); ++o)
        h->add_object(c.object_name(o));
    Index n = c.num_objects();
    std::vector<std::optional<HomCohomology>> hc(n * n);
    std::vector<std::vector<Index>> cls(n * n);
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) {
            std::vector<Vec> pref;
            if (a == b)
                pref.push_back(c.identity(a));
            auto& H = hc[a * n + b].emplace(c, a, b, 0, pref);
            for (Index k = 0; k < H.dim(); ++k) {
                Vec r = H.rep(k);
                std::string name;
                if (r.size() == 1 && r.front().second.is_one())
                    name = c.arrow(r.front().first).name;
                else
                    name = "h_" + c.object_name(a) + "_" + c.object_name(b) + "_" + std::to_string(k);
                cls[a * n + b].push_back(h->add_arrow(name, a, b, 0));
            }
            if (a == b) {
                bool zero = H.project(c.identity(a)).empty();
                h->set_identity_vector(a, zero ? Vec() : Vec::unit(cls[a * n + b].at(0)));
            }
        }
    auto to_h = [&](Index a, Index b, const Vec& coords) {
        Vec w;
        for (auto& [k, s] : coords)
            w.push_back(cls[a * n + b][k], s);
        return w;
    };
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
            for (Index i = 0; i < cls[a * n + b].size(); ++i)
                for (Index cc = 0; cc < n; ++cc)
                    for (Index j = 0; j < cls[b * n + cc].size(); ++j) {
                        Index f = cls[a * n + b][i], g = cls[b * n + cc][j];
                        if (h->is_identity(f) || h->is_identity(g))
                            continue;
                        Vec p = c.compose(hc[b * n + cc]->rep(j), hc[a * n + b]->rep(i));
                        h->set_compose(g, f, p.empty() ? Vec() : to_h(a, cc, hc[a * n + cc]->project(p)));
                    }
    GradedFunctor g{cp, h, {}, {}};
    for (Index o = 0; o < n; ++o)
        g.on_objects.push_back(o);
    for (Index x = 0; x < c.dim(); ++x) {
        const Arrow& ar = c.arrow(x);
        if (ar.deg != 0)
            g.on_arrows.emplace_back();
        else
            g.on_arrows.push_back(to_h(ar.src, ar.tgt, hc[ar.src * n + ar.tgt]->project(Vec::unit(x))));
    }
    return {h, g};
}

Cat tau_le0(const Cat& c)
{
    Cat t(c.field());
    Index n = c.num_objects();
    for (Index o = 0; o < n; ++o)
        t.add_object(c.object_name(o));
    std::vector<Index> keep(c.dim(), npos);
    for (Index x = 0; x < c.dim(); ++x) {
        const Arrow& a = c.arrow(x);
        if (a.deg < 0)
            keep[x] = t.add_arrow(a.name, a.src, a.tgt, a.deg);
    }
    // Cocycle basis of each degree-0 Hom space, with tags pointing at the new arrows.
    std::vector<Reducer> z0(n * n);
    std::vector<std::vector<std::pair<Index, Vec>>> zvec(n * n);
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) {
            HomCohomology H(c, a, b, 0);
            std::vector<Vec> cand;
            if (a == b)
                cand.push_back(c.identity(a));
            for (Index x : c.hom(a, b, 0))
                if (c.d(x).empty())
                    cand.push_back(Vec::unit(x));
            for (auto& z : H.cocycles())
                cand.push_back(z);
            Index k = 0;
            for (auto& v : cand) {
                if (v.empty())
                    continue;
                std::string name;
                if (v.size() == 1 && v.front().second.is_one())
                    name = c.arrow(v.front().first).name;
                else
                    name = "z_" + c.object_name(a) + "_" + c.object_name(b) + "_" + std::to_string(k);
                if (t.find_arrow(name))
                    name = "z_" + c.object_name(a) + "_" + c.object_name(b) + "_" + std::to_string(k);
                Index id = t.dim();
                if (z0[a * n + b].insert(v, Vec::unit(id))) {
                    t.add_arrow(name, a, b, 0);
                    zvec[a * n + b].emplace_back(id, v);
                    ++k;
                }
            }
        }
    std::vector<Vec> old_of(t.dim());
    for (Index x = 0; x < c.dim(); ++x)
        if (keep[x] != npos)
            old_of[keep[x]] = Vec::unit(x);
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
            for (auto& [id, v] : zvec[a * n + b])
                old_of[id] = v;
    auto express = [&](const Vec& v) {
        Vec out;
        Vec deg0;
        for (auto& [i, s] : v) {
            const Arrow& ar = c.arrow(i);
            if (ar.deg < 0)
                out.add(keep[i], s);
            else if (ar.deg == 0)
                deg0.push_back(i, s);
            else
                throw std::logic_error("tau_le0: positive degree in truncated product");
        }
        if (!deg0.empty()) {
            Index a = c.arrow(deg0.front().first).src, b = c.arrow(deg0.front().first).tgt;
            Vec tag;
            if (!z0[a * n + b].reduce(deg0, &tag).empty())
                throw std::logic_error("tau_le0: product is not a cocycle");
            out += -tag;
        }
        return out;
    };
    for (Index o = 0; o < n; ++o)
        t.set_identity_vector(o, express(c.identity(o)));
    for (Index f = 0; f < t.dim(); ++f)
        for (Index g : t.from(t.arrow(f).tgt)) {
            if (t.is_identity(g) || t.is_identity(f))
                continue;
            if (t.arrow(g).deg + t.arrow(f).deg > 0)
                continue;
            t.set_compose(g, f, express(c.compose(old_of[g], old_of[f])));
        }
    for (Index x = 0; x < t.dim(); ++x)
        if (t.arrow(x).deg < 0)
            t.set_diff(x, express(c.d(old_of[x])));
    return t;
}

}  // namespace hocat
