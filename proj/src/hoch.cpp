#include "hocat/hoch.hpp"

#include <algorithm>
#include <stdexcept>

namespace hocat {

std::vector<Tuple> composable_tuples(const Cat& a, int n, bool skip_identities)
{
    std::vector<Tuple> out;
    if (n < 0)
        return out;
    if (n == 0) {
        for (Index o = 0; o < a.num_objects(); ++o)
            out.push_back({o});
        return out;
    }
    for (Index x = 0; x < a.dim(); ++x)
        if (!skip_identities || !a.is_identity(x))
            out.push_back({x});
    for (int len = 1; len < n; ++len) {
        std::vector<Tuple> next;
        for (auto& t : out)
            for (Index y : a.into(a.arrow(t.back()).src)) {
                if (skip_identities && a.is_identity(y))
                    continue;
                Tuple u = t;
                u.push_back(y);
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    return out;
}

Index tuple_src(const Cat& a, const Tuple& t, int arity)
{
    return arity == 0 ? t.at(0) : a.arrow(t.back()).src;
}

Index tuple_tgt(const Cat& a, const Tuple& t, int arity)
{
    return arity == 0 ? t.at(0) : a.arrow(t.front()).tgt;
}

void check_hochschild_input(const Cat& a, const Bimodule& m)
{
    if (a.has_diff() || m.has_diff())
        throw std::invalid_argument("Hochschild cochains need zero differentials");
    if (a.dim() && (a.min_degree() != 0 || a.max_degree() != 0))
        throw std::invalid_argument("Hochschild cochains need a category concentrated in degree 0");
    if (!a.basis_identities())
        throw std::invalid_argument("Hochschild cochains need identities in the basis");
    if (&m.left() != &a || &m.right() != &a)
        throw std::invalid_argument("bimodule is not over the given category");
}

HochCochain::HochCochain(CatPtr a, BimodPtr m, int arity) : a_(std::move(a)), m_(std::move(m)), n_(arity)
{
    if (n_ < 0)
        throw std::invalid_argument("negative arity");
    check_hochschild_input(*a_, *m_);
}

Vec HochCochain::at(const Tuple& t) const
{
    auto it = v_.find(t);
    return it == v_.end() ? Vec() : it->second;
}

void HochCochain::set(const Tuple& t, Vec v)
{
    if (static_cast<int>(t.size()) != std::max(n_, 1))
        throw std::invalid_argument("cochain: wrong tuple length");
    if (n_ == 0) {
        if (t[0] >= a_->num_objects())
            throw std::invalid_argument("cochain: bad object");
    } else {
        for (Index j = 0; j < t.size(); ++j) {
            if (t[j] >= a_->dim())
                throw std::invalid_argument("cochain: bad arrow");
            if (a_->is_identity(t[j]))
                throw std::invalid_argument("cochain: normalized cochains vanish on identities");
            if (j + 1 < t.size() && a_->arrow(t[j]).src != a_->arrow(t[j + 1]).tgt)
                throw std::invalid_argument("cochain: tuple is not composable");
        }
    }
    Index s = tuple_src(*a_, t, n_), g = tuple_tgt(*a_, t, n_);
    for (auto& [i, c] : v)
        if (i >= m_->dim() || m_->element(i).src != s || m_->element(i).tgt != g)
            throw std::invalid_argument("cochain: value outside M(src, tgt)");
    if (v.empty())
        v_.erase(t);
    else
        v_[t] = std::move(v);
}

void HochCochain::add(const Tuple& t, const Vec& v)
{
    Vec w = at(t);
    w += v;
    set(t, std::move(w));
}

Vec HochCochain::eval(const std::vector<Vec>& args) const
{
    if (static_cast<int>(args.size()) != n_ || n_ == 0)
        throw std::invalid_argument("cochain: eval needs arity-many arguments");
    Vec out;
    Tuple t(n_);
    auto rec = [&](auto&& self, int j, const Scalar& c) -> void {
        if (j == n_) {
            auto it = v_.find(t);
            if (it != v_.end())
                out.axpy(c, it->second);
            return;
        }
        for (auto& [x, a] : args[j]) {
            if (a_->is_identity(x))
                continue;
            if (j > 0 && a_->arrow(t[j - 1]).src != a_->arrow(x).tgt)
                continue;
            t[j] = x;
            self(self, j + 1, c * a);
        }
    };
    rec(rec, 0, a_->field().one());
    return out;
}

HochCochain& HochCochain::operator+=(const HochCochain& o)
{
    if (o.n_ != n_ || o.a_ != a_ || o.m_ != m_)
        throw std::invalid_argument("cochain: incompatible sum");
    for (auto& [t, v] : o.v_)
        add(t, v);
    return *this;
}

HochCochain& HochCochain::operator*=(const Scalar& c)
{
    if (c.is_zero()) {
        v_.clear();
        return *this;
    }
    for (auto& [t, v] : v_)
        v *= c;
    return *this;
}

HochCochain d_hoch(const HochCochain& phi)
{
    const Cat& a = phi.cat();
    const Bimodule& m = phi.module();
    int n = phi.arity();
    HochCochain out(phi.cat_ptr(), phi.module_ptr(), n + 1);
    auto value = [&](const Tuple& t) { return phi.at(t); };
    for (auto& s : composable_tuples(a, n + 1)) {
        Vec r;
        Tuple inner(s.begin() + 1, s.end());
        if (n == 0)
            inner = {a.arrow(s[0]).src};
        r += m.act_left(Vec::unit(s[0]), value(inner));
        for (int i = 0; i < n; ++i) {
            Vec p = a.compose(s[i], s[i + 1]);
            for (auto& [y, c] : p) {
                if (a.is_identity(y))
                    continue;
                Tuple t;
                t.insert(t.end(), s.begin(), s.begin() + i);
                t.push_back(y);
                t.insert(t.end(), s.begin() + i + 2, s.end());
                r.axpy(c * Scalar(sign(i + 1)), value(t));
            }
        }
        Tuple head(s.begin(), s.end() - 1);
        if (n == 0)
            head = {a.arrow(s[0]).tgt};
        r.axpy(Scalar(sign(n + 1)), m.act_right(value(head), Vec::unit(s[n])));
        if (!r.empty())
            out.set(s, std::move(r));
    }
    return out;
}

HochComplex::HochComplex(CatPtr a, BimodPtr m, bool normalized)
    : a_(std::move(a)), m_(std::move(m)), normalized_(normalized)
{
    check_hochschild_input(*a_, *m_);
}

HochComplex::Level& HochComplex::level_(int n)
{
    auto it = levels_.find(n);
    if (it != levels_.end())
        return it->second;
    Level l;
    l.tuples = composable_tuples(*a_, n, normalized_);
    for (Index i = 0; i < l.tuples.size(); ++i) {
        l.pos[l.tuples[i]] = i;
        l.off.push_back(l.dim);
        l.dim += part_(l.tuples[i], n).size();
    }
    return levels_.emplace(n, std::move(l)).first->second;
}

const std::vector<Index>& HochComplex::part_(const Tuple& t, int n)
{
    return m_->part(tuple_src(*a_, t, n), tuple_tgt(*a_, t, n));
}

Index HochComplex::dim(int n) { return n < 0 ? 0 : level_(n).dim; }

const std::vector<Tuple>& HochComplex::tuples(int n) { return level_(n).tuples; }

const Matrix& HochComplex::differential(int n)
{
    auto it = diff_.find(n);
    if (it != diff_.end())
        return it->second;
    Level& lo = level_(n);
    Level& hi = level_(n + 1);
    Matrix d(hi.dim, lo.dim);
    const Cat& a = *a_;
    const Bimodule& m = *m_;
    // Position of element e inside the part list of a tuple.
    auto local = [&](const std::vector<Index>& part, Index e) {
        return static_cast<Index>(std::lower_bound(part.begin(), part.end(), e) - part.begin());
    };
    for (Index si = 0; si < hi.tuples.size(); ++si) {
        const Tuple& s = hi.tuples[si];
        const auto& rows = part_(s, n + 1);
        if (rows.empty())
            continue;
        Index rbase = hi.off[si];
        auto emit_action = [&](const Tuple& t, bool left, Index x, const Scalar& sg) {
            auto it = lo.pos.find(t);
            if (it == lo.pos.end())
                return;
            Index cbase = lo.off[it->second];
            const auto& cols = part_(t, n);
            for (Index k = 0; k < cols.size(); ++k) {
                Vec img = left ? m.act_left(x, cols[k]) : m.act_right(cols[k], x);
                for (auto& [e, c] : img)
                    d.add(rbase + local(rows, e), cbase + k, sg * c);
            }
        };
        Tuple inner(s.begin() + 1, s.end());
        if (n == 0)
            inner = {a.arrow(s[0]).src};
        emit_action(inner, true, s[0], Scalar(1));
        for (int i = 0; i < n; ++i) {
            Vec p = a.compose(s[i], s[i + 1]);
            for (auto& [y, c] : p) {
                Tuple t;
                t.insert(t.end(), s.begin(), s.begin() + i);
                t.push_back(y);
                t.insert(t.end(), s.begin() + i + 2, s.end());
                auto it = lo.pos.find(t);
                if (it == lo.pos.end())
                    continue;
                Index cbase = lo.off[it->second];
                for (Index k = 0; k < rows.size(); ++k)
                    d.add(rbase + k, cbase + k, c * Scalar(sign(i + 1)));
            }
        }
        Tuple head(s.begin(), s.end() - 1);
        if (n == 0)
            head = {a.arrow(s[0]).tgt};
        emit_action(head, false, s[n], Scalar(sign(n + 1)));
    }
    for (Index j = 0; j < d.cols(); ++j)
        d.set_col(j, d.col(j).in_field(a.field().p));
    return diff_.emplace(n, std::move(d)).first->second;
}

const Cohomology& HochComplex::cohomology(int n)
{
    auto it = coh_.find(n);
    if (it != coh_.end())
        return *it->second;
    Matrix din = n == 0 ? Matrix(dim(0), 0) : differential(n - 1);
    const Matrix& dout = differential(n);
    return *coh_.emplace(n, std::make_unique<Cohomology>(din, dout)).first->second;
}

Vec HochComplex::to_vector(const HochCochain& phi)
{
    if (phi.cat_ptr() != a_ || phi.module_ptr() != m_)
        throw std::invalid_argument("cochain belongs to another complex");
    int n = phi.arity();
    Level& l = level_(n);
    Vec out;
    for (auto& [t, v] : phi.values()) {
        auto it = l.pos.find(t);
        if (it == l.pos.end())
            throw std::logic_error("cochain tuple missing from complex");
        const auto& part = part_(t, n);
        for (auto& [e, c] : v) {
            Index k = static_cast<Index>(std::lower_bound(part.begin(), part.end(), e) - part.begin());
            out.add(l.off[it->second] + k, c);
        }
    }
    return out;
}

HochCochain HochComplex::from_vector(int n, const Vec& v)
{
    if (!normalized_)
        throw std::logic_error("from_vector is only available on the normalized complex");
    Level& l = level_(n);
    HochCochain out(a_, m_, n);
    for (auto& [i, c] : v) {
        Index ti = static_cast<Index>(std::upper_bound(l.off.begin(), l.off.end(), i) - l.off.begin()) - 1;
        const Tuple& t = l.tuples[ti];
        out.add(t, Vec::unit(part_(t, n).at(i - l.off[ti]), c));
    }
    return out;
}

HHResult hh(CatPtr a, BimodPtr m, int n)
{
    HochComplex cx(std::move(a), std::move(m));
    const Cohomology& h = cx.cohomology(n);
    HHResult out;
    out.dim = h.dim();
    for (auto& v : h.basis())
        out.basis.push_back(cx.from_vector(n, v));
    return out;
}

std::vector<Index> hh_dims(CatPtr a, BimodPtr m, int max_n)
{
    HochComplex cx(std::move(a), std::move(m));
    std::vector<Index> out;
    for (int n = 0; n <= max_n; ++n)
        out.push_back(cx.cohomology(n).dim());
    return out;
}

CohomologyClass hh_class(HochComplex& cx, const HochCochain& phi)
{
    Vec coords = cx.cohomology(phi.arity()).project(cx.to_vector(phi));
    return {phi, std::move(coords)};
}

Bimodule tensor_bimodule(CatPtr ab, const Bimodule& m, const Cat& b)
{
    const Cat& a = m.left();
    if (ab->dim() != a.dim() * b.dim() || ab->num_objects() != a.num_objects() * b.num_objects())
        throw std::invalid_argument("tensor_bimodule: category is not a (x) b");
    Index nb = b.num_objects(), db = b.dim();
    Bimodule out(ab, ab);
    for (Index i = 0; i < m.dim(); ++i)
        for (Index y = 0; y < db; ++y) {
            const Arrow& e = m.element(i);
            const Arrow& ay = b.arrow(y);
            out.add_element(e.name + "." + ay.name, e.src * nb + ay.src, e.tgt * nb + ay.tgt, e.deg + ay.deg);
        }
    auto idx = [&](Index i, Index y) { return i * db + y; };
    auto put = [&](const Vec& mv, const Vec& bv, const Scalar& s) {
        Vec out;
        for (auto& [i, c] : mv)
            for (auto& [y, e] : bv)
                out.add(idx(i, y), s * c * e);
        return out;
    };
    for (Index i = 0; i < m.dim(); ++i) {
        const Arrow& e = m.element(i);
        for (Index y = 0; y < db; ++y) {
            const Arrow& ay = b.arrow(y);
            Index me = idx(i, y);
            for (Index x : a.from(e.tgt))
                for (Index z : b.from(ay.tgt)) {
                    Index xz = tensor_index(a, b, x, z);
                    if (ab->is_identity(xz))
                        continue;
                    Vec v = put(m.act_left(x, i), b.compose(z, y), Scalar(sign(static_cast<long>(b.arrow(z).deg) * e.deg)));
                    if (!v.empty())
                        out.set_left(xz, me, std::move(v));
                }
            for (Index x : a.into(e.src))
                for (Index z : b.into(ay.src)) {
                    Index xz = tensor_index(a, b, x, z);
                    if (ab->is_identity(xz))
                        continue;
                    Vec v = put(m.act_right(i, x), b.compose(y, z), Scalar(sign(static_cast<long>(ay.deg) * a.arrow(x).deg)));
                    if (!v.empty())
                        out.set_right(me, xz, std::move(v));
                }
            Vec dv = put(m.d(Vec::unit(i)), Vec::unit(y), Scalar(1));
            dv.axpy(Scalar(sign(e.deg)), put(Vec::unit(i), b.d(y), Scalar(1)));
            if (!dv.empty())
                out.set_diff(me, std::move(dv));
        }
    }
    return out;
}

HochCochain cup_one(const HochCochain& eta, CatPtr ab, BimodPtr mb, const Cat& b)
{
    const Cat& a = eta.cat();
    int n = eta.arity();
    if (n < 1)
        throw std::invalid_argument("cup_one: arity must be positive");
    HochCochain out(ab, mb, n);
    Index db = b.dim();
    auto btuples = composable_tuples(b, n, false);
    for (auto& [t, val] : eta.values())
        for (auto& bt : btuples) {
            Vec prod = Vec::unit(bt[0]);
            for (int j = 1; j < n; ++j)
                prod = b.compose(prod, Vec::unit(bt[j]));
            if (prod.empty())
                continue;
            long e = 0, tail = 0;
            for (int j = n - 1; j >= 0; --j) {
                e += static_cast<long>(b.arrow(bt[j]).deg) * tail;
                tail += a.arrow(t[j]).deg - 1;
            }
            Tuple abt(n);
            for (int j = 0; j < n; ++j)
                abt[j] = tensor_index(a, b, t[j], bt[j]);
            Vec v;
            for (auto& [i, c] : val)
                for (auto& [y, s] : prod)
                    v.add(i * db + y, Scalar(sign(e)) * c * s);
            out.add(abt, v);
        }
    return out;
}

}  // namespace hocat
