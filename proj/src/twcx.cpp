#include "hocat/twcx.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hocat {

void clean(Block& b)
{
    std::erase_if(b, [](const auto& kv) { return kv.second.empty(); });
}

Block compose(const Cat& a, const Block& g, const Block& f)
{
    std::multimap<Index, std::pair<Index, const Vec*>> by_src;
    for (auto& [kl, v] : g)
        by_src.emplace(kl.first, std::make_pair(kl.second, &v));
    Block out;
    for (auto& [km, fv] : f) {
        auto [lo, hi] = by_src.equal_range(km.second);
        for (auto it = lo; it != hi; ++it) {
            Vec p = a.compose(*it->second.second, fv);
            if (!p.empty())
                out[{km.first, it->second.first}] += p;
        }
    }
    clean(out);
    return out;
}

Block d_free(const Cat& a, const std::vector<Shifted>& target, const Block& f)
{
    Block out;
    if (!a.has_diff())
        return out;
    for (auto& [kl, v] : f) {
        Vec dv = a.d(v);
        if (!dv.empty())
            out[kl] = Scalar(sign(target.at(kl.second).shift)) * dv;
    }
    return out;
}

std::optional<int> block_degree(const Cat& a, const std::vector<Shifted>& src, const std::vector<Shifted>& tgt,
                                const Block& f)
{
    std::optional<int> deg;
    for (auto& [kl, v] : f) {
        if (v.empty())
            continue;
        int d = a.degree(v) + src.at(kl.first).shift - tgt.at(kl.second).shift;
        if (deg && *deg != d)
            throw std::invalid_argument("block is not homogeneous");
        deg = d;
    }
    return deg;
}

Block identity_block(const TwObject& x)
{
    Block out;
    for (Index k = 0; k < x.size(); ++k) {
        const Vec& id = x.base->identity(x.comps[k].obj);
        if (!id.empty())
            out[{k, k}] = id;
    }
    return out;
}

Block scaled(const Block& b, const Scalar& c)
{
    Block out;
    if (c.is_zero())
        return out;
    for (auto& [kl, v] : b)
        out[kl] = c * v;
    return out;
}

Block add(Block a, const Block& b, const Scalar& c)
{
    for (auto& [kl, v] : b)
        a[kl].axpy(c, v);
    clean(a);
    return a;
}

Block mc_residual(const TwObject& x)
{
    return add(d_free(*x.base, x.comps, x.delta), compose(*x.base, x.delta, x.delta));
}

Report validate(const TwObject& x)
{
    Report r;
    const Cat& a = *x.base;
    for (auto& c : x.comps)
        if (c.obj >= a.num_objects())
            r.fail("component object out of range");
    if (!r.ok())
        return r;
    for (auto& [kl, v] : x.delta) {
        auto [k, l] = kl;
        std::string at = "delta(" + std::to_string(k) + "," + std::to_string(l) + ")";
        if (k >= x.size() || l >= x.size()) {
            r.fail(at + " out of range");
            continue;
        }
        if (v.empty())
            continue;
        if (k >= l)
            r.fail(at + " is not strictly one-sided");
        if (a.src(v) != x.comps[k].obj || a.tgt(v) != x.comps[l].obj)
            r.fail(at + " has the wrong source or target");
        else if (a.degree(v) + x.comps[k].shift - x.comps[l].shift != 1)
            r.fail(at + " does not have degree 1");
    }
    if (!r.ok())
        return r;
    for (auto& [kl, v] : mc_residual(x))
        r.fail("Maurer-Cartan residual at (" + std::to_string(kl.first) + "," + std::to_string(kl.second) +
               "): " + v.str());
    return r;
}

Block d_tw(const TwObject& x, const TwObject& y, const Block& f, int deg)
{
    const Cat& a = *x.base;
    Block out = d_free(a, y.comps, f);
    out = add(std::move(out), compose(a, y.delta, f));
    out = add(std::move(out), compose(a, f, x.delta), Scalar(-sign(deg)));
    return out;
}

TwObject single(CatPtr a, Index obj, int shift)
{
    return {a, {{obj, shift}}, {}};
}

TwObject shift(const TwObject& x, int n)
{
    TwObject y = x;
    for (auto& c : y.comps)
        c.shift += n;
    y.delta = scaled(x.delta, Scalar(sign(n)));
    return y;
}

TwObject direct_sum(const TwObject& x, const TwObject& y)
{
    TwObject s = x;
    Index off = x.size();
    for (auto& c : y.comps)
        s.comps.push_back(c);
    for (auto& [kl, v] : y.delta)
        s.delta[{kl.first + off, kl.second + off}] = v;
    return s;
}

TwHom::TwHom(TwObject x, TwObject y, std::function<bool(Index, Index)> keep) : x_(std::move(x)), y_(std::move(y))
{
    if (x_.base != y_.base)
        throw std::invalid_argument("TwHom: twisted complexes over different categories");
    for (const TwObject* t : {&x_, &y_}) {
        Report r = validate(*t);
        if (!r.ok())
            throw std::invalid_argument("TwHom: " + r.str());
    }
    const Cat& a = *x_.base;
    bool first = true;
    for (Index k = 0; k < x_.size(); ++k)
        for (Index l = 0; l < y_.size(); ++l) {
            if (keep && !keep(k, l))
                continue;
            for (Index ar : a.hom(x_.comps[k].obj, y_.comps[l].obj)) {
                int deg = a.arrow(ar).deg + x_.comps[k].shift - y_.comps[l].shift;
                auto& b = basis_[deg];
                pos_[{k, l, ar}] = b.size();
                b.push_back({k, l, ar});
                lo_ = first ? deg : std::min(lo_, deg);
                hi_ = first ? deg : std::max(hi_, deg);
                first = false;
            }
        }
}

const std::vector<TwHom::Entry>& TwHom::basis(int deg) const
{
    static const std::vector<Entry> none;
    auto it = basis_.find(deg);
    return it == basis_.end() ? none : it->second;
}

Block TwHom::to_block(int deg, const Vec& v) const
{
    const auto& b = basis(deg);
    Block out;
    for (auto& [i, c] : v) {
        const Entry& e = b.at(i);
        out[{e.k, e.l}].add(e.arrow, c);
    }
    clean(out);
    return out;
}

Vec TwHom::to_vec(int deg, const Block& f) const
{
    Vec out;
    const Cat& a = *x_.base;
    for (auto& [kl, v] : f)
        for (auto& [ar, c] : v) {
            auto it = pos_.find({kl.first, kl.second, ar});
            if (it == pos_.end() ||
                a.arrow(ar).deg + x_.comps.at(kl.first).shift - y_.comps.at(kl.second).shift != deg)
                throw std::invalid_argument("TwHom: entry outside the complex in degree " + std::to_string(deg));
            out.add(it->second, c);
        }
    return out;
}

Matrix TwHom::differential(int deg) const
{
    const auto& b = basis(deg);
    Matrix m(dim(deg + 1), b.size());
    for (Index j = 0; j < b.size(); ++j) {
        Block f;
        f[{b[j].k, b[j].l}] = Vec::unit(b[j].arrow, x_.base->field().one());
        m.set_col(j, to_vec(deg + 1, d(deg, f)));
    }
    return m;
}

Cohomology TwHom::cohomology(int deg, const std::vector<Vec>& preferred) const
{
    return Cohomology(differential(deg - 1), differential(deg), preferred);
}

bool TwHom::is_cocycle(int deg, const Block& f) const
{
    return d(deg, f).empty();
}

std::optional<Block> TwHom::primitive(int deg, const Block& f) const
{
    auto w = solve(differential(deg - 1), to_vec(deg, f));
    if (!w)
        return std::nullopt;
    return to_block(deg - 1, *w);
}

TwObject tot(const NestedTw& n)
{
    if (n.pieces.empty())
        throw std::invalid_argument("tot: no pieces");
    if (n.shifts.size() != n.pieces.size())
        throw std::invalid_argument("tot: one shift per piece expected");
    TwObject out{n.pieces.front().base, {}, {}};
    std::vector<Index> off;
    for (Index i = 0; i < n.pieces.size(); ++i) {
        if (n.pieces[i].base != out.base)
            throw std::invalid_argument("tot: pieces over different categories");
        off.push_back(out.size());
        out = direct_sum(out, shift(n.pieces[i], n.shifts[i]));
    }
    for (auto& [ij, b] : n.delta) {
        auto [i, j] = ij;
        if (i >= j || j >= n.pieces.size())
            throw std::invalid_argument("tot: outer delta is not one-sided");
        for (auto& [kl, v] : b)
            out.delta[{off[i] + kl.first, off[j] + kl.second}] += v;
    }
    clean(out.delta);
    return out;
}

Cone cone(const TwObject& x, const TwObject& y, const Block& u)
{
    if (x.base != y.base)
        throw std::invalid_argument("cone: different base categories");
    auto deg = block_degree(*x.base, x.comps, y.comps, u);
    if (deg && *deg != 0)
        throw std::invalid_argument("cone: map is not of degree 0");
    if (!d_tw(x, y, u, 0).empty())
        throw std::invalid_argument("cone: map is not closed");
    Cone c;
    Index nx = x.size();
    c.c = direct_sum(shift(x, 1), y);
    for (auto& [kl, v] : u)
        c.c.delta[{kl.first, nx + kl.second}] += v;
    clean(c.c.delta);
    const Cat& a = *x.base;
    for (Index l = 0; l < y.size(); ++l)
        if (!a.identity(y.comps[l].obj).empty())
            c.i[{l, nx + l}] = a.identity(y.comps[l].obj);
    for (Index k = 0; k < nx; ++k)
        if (!a.identity(x.comps[k].obj).empty()) {
            c.p[{k, k}] = a.identity(x.comps[k].obj);
            c.homotopy[{k, k}] = a.identity(x.comps[k].obj);
        }
    return c;
}

Report validate(const FiltObject& j)
{
    Report r = validate(j.tw);
    if (j.index.size() != j.tw.size()) {
        r.fail("one filtration index per component expected");
        return r;
    }
    for (auto& [kl, v] : j.tw.delta)
        if (!v.empty() && j.index[kl.second] > j.index[kl.first])
            r.fail("delta raises the filtration index at (" + std::to_string(kl.first) + "," +
                   std::to_string(kl.second) + ")");
    return r;
}

TwObject omega(const FiltObject& j)
{
    return j.tw;
}

FiltObject gr(const FiltObject& j)
{
    FiltObject g = j;
    std::erase_if(g.tw.delta, [&](const auto& kv) { return j.index[kv.first.first] != j.index[kv.first.second]; });
    return g;
}

FiltObject twist(const FiltObject& j, int n)
{
    FiltObject t = j;
    for (int& i : t.index)
        i -= n;
    return t;
}

std::vector<int> indices(const FiltObject& j)
{
    std::set<int> s(j.index.begin(), j.index.end());
    return {s.begin(), s.end()};
}

namespace {

// Sub-object on the components satisfying pred, with the positions taken.
std::pair<FiltObject, std::vector<Index>> restrict(const FiltObject& j, const std::function<bool(int)>& pred)
{
    FiltObject out{{j.tw.base, {}, {}}, {}};
    std::vector<Index> where;
    std::vector<Index> local(j.tw.size(), npos);
    for (Index k = 0; k < j.tw.size(); ++k)
        if (pred(j.index[k])) {
            local[k] = where.size();
            where.push_back(k);
            out.tw.comps.push_back(j.tw.comps[k]);
            out.index.push_back(j.index[k]);
        }
    for (auto& [kl, v] : j.tw.delta)
        if (local[kl.first] != npos && local[kl.second] != npos)
            out.tw.delta[{local[kl.first], local[kl.second]}] = v;
    return {out, where};
}

bool same_matrix(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return false;
    for (Index j = 0; j < a.cols(); ++j)
        if (a.col(j) != b.col(j))
            return false;
    return true;
}

// Matrix of the identity-on-entries map from one complex into another in degree deg.
Matrix entry_map(const TwHom& from, const TwHom& to, int deg, bool drop_missing)
{
    const auto& b = from.basis(deg);
    Matrix m(to.dim(deg), b.size());
    for (Index j = 0; j < b.size(); ++j) {
        Block f;
        f[{b[j].k, b[j].l}] = Vec::unit(b[j].arrow, from.source().base->field().one());
        try {
            m.set_col(j, to.to_vec(deg, f));
        } catch (const std::invalid_argument&) {
            if (!drop_missing)
                throw;
        }
    }
    return m;
}

}  // namespace

FiltObject piece(const FiltObject& j, int i)
{
    return restrict(j, [i](int x) { return x == i; }).first;
}

TwHom filt_hom(const FiltObject& j, const FiltObject& jp)
{
    return TwHom(j.tw, jp.tw, [&](Index k, Index l) { return j.index[k] >= jp.index[l]; });
}

TwHom gr_hom(const FiltObject& j, const FiltObject& jp)
{
    return TwHom(gr(j).tw, gr(jp).tw, [&](Index k, Index l) { return j.index[k] == jp.index[l]; });
}

bool ExactSeqReport::ok() const
{
    return std::all_of(degrees.begin(), degrees.end(),
                       [](const Degree& d) { return d.chain && d.injective && d.surjective && d.exact_middle; });
}

std::string ExactSeqReport::str() const
{
    std::ostringstream os;
    for (auto& d : degrees) {
        os << "degree " << d.deg << ": " << d.left << " -> " << d.middle << " -> " << d.right;
        if (!d.chain)
            os << " [not a chain map]";
        if (!d.injective)
            os << " [not injective]";
        if (!d.surjective)
            os << " [not surjective]";
        if (!d.exact_middle)
            os << " [not exact in the middle]";
        os << "\n";
    }
    return os.str();
}

ExactSeqReport exact_seq_check(const FiltObject& j, const FiltObject& jp)
{
    for (const FiltObject* f : {&j, &jp}) {
        Report r = validate(*f);
        if (!r.ok())
            throw std::invalid_argument("exact_seq_check: " + r.str());
    }
    FiltObject jm = twist(jp, -1);
    TwHom left = filt_hom(j, jm);
    TwHom mid = filt_hom(j, jp);
    TwHom right = gr_hom(j, jp);
    ExactSeqReport rep;
    int lo = std::min({left.min_degree(), mid.min_degree(), right.min_degree()});
    int hi = std::max({left.max_degree(), mid.max_degree(), right.max_degree()});
    if (mid.dim(mid.min_degree()) == 0 && left.dim(left.min_degree()) == 0 && right.dim(right.min_degree()) == 0)
        return rep;
    for (int deg = lo; deg <= hi; ++deg) {
        ExactSeqReport::Degree d{deg, left.dim(deg), mid.dim(deg), right.dim(deg)};
        Matrix iota = entry_map(left, mid, deg, false), iota1 = entry_map(left, mid, deg + 1, false);
        Matrix pi = entry_map(mid, right, deg, true), pi1 = entry_map(mid, right, deg + 1, true);
        d.chain = same_matrix(mid.differential(deg).after(iota), iota1.after(left.differential(deg))) &&
                  same_matrix(right.differential(deg).after(pi), pi1.after(mid.differential(deg)));
        Index ri = rank(iota), rp = rank(pi);
        d.injective = ri == d.left;
        d.surjective = rp == d.right;
        d.exact_middle = pi.after(iota).is_zero() && ri + rp == d.middle;
        rep.degrees.push_back(d);
    }
    return rep;
}

TwObject apply_g(const H0Result& h, const TwObject& x)
{
    if (x.base != h.g.src)
        throw std::invalid_argument("apply_g: twisted complex is not over the source of G");
    TwObject y{h.h0, x.comps, apply_g(h, x.delta)};
    for (auto& c : y.comps)
        c.obj = h.g.on_objects.at(c.obj);
    return y;
}

Block apply_g(const H0Result& h, const Block& f)
{
    Block out;
    for (auto& [kl, v] : f) {
        Vec w = h.g.apply(v);
        if (!w.empty())
            out[kl] = w;
    }
    return out;
}

GapReport gap_check(const Cat& b, const std::vector<Index>& objs, int m)
{
    GapReport r;
    for (int q = 1; q <= m; ++q)
        for (Index s : objs)
            for (Index t : objs)
                if (HomCohomology(b, s, t, -q).dim() != 0) {
                    r.ok = false;
                    r.blocking_degree = -q;
                    r.src = s;
                    r.tgt = t;
                    return r;
                }
    return r;
}

namespace {

// Degree-0 cocycle of b mapping to w under G.
class H0Lifter {
  public:
    explicit H0Lifter(const H0Result& h) : h_(h) {}

    Vec lift(Index s, Index t, const Vec& w)
    {
        if (w.empty())
            return {};
        auto it = cache_.find({s, t});
        if (it == cache_.end()) {
            const Cat& b = *h_.g.src;
            HomCohomology hc(b, s, t, 0);
            std::vector<Vec> z = hc.cocycles();
            Matrix m(h_.h0->dim(), z.size());
            for (Index j = 0; j < z.size(); ++j)
                m.set_col(j, h_.g.apply(z[j]));
            it = cache_.emplace(std::make_pair(s, t), std::make_pair(LinearSystem(m), z)).first;
        }
        auto c = it->second.first.solve(w);
        if (!c)
            throw std::runtime_error("moore_object: a map of H^0 has no cocycle representative");
        Vec out;
        for (auto& [j, sc] : *c)
            out.axpy(sc, it->second.second[j]);
        return out;
    }

  private:
    const H0Result& h_;
    std::map<std::pair<Index, Index>, std::pair<LinearSystem, std::vector<Vec>>> cache_;
};

}  // namespace

TwObject moore_object(const H0Result& h, const TwObject& x, int m)
{
    if (x.base != h.h0)
        throw std::invalid_argument("moore_object: complex is not over H^0(b)");
    Report r = validate(x);
    if (!r.ok())
        throw std::invalid_argument("moore_object: " + r.str());
    CatPtr b = h.g.src;
    TwObject out{b, x.comps, {}};
    if (x.size() == 0)
        return out;
    int top = x.comps.front().shift, bottom = top;
    std::set<Index> objs;
    for (auto& c : x.comps) {
        top = std::max(top, c.shift);
        bottom = std::min(bottom, c.shift);
        objs.insert(c.obj);
    }
    if (top - bottom > m)
        throw std::invalid_argument("moore_object: complex has length " + std::to_string(top - bottom) +
                                    " > " + std::to_string(m));
    GapReport gap = gap_check(*b, {objs.begin(), objs.end()}, m);
    if (!gap.ok)
        throw std::invalid_argument("moore_object: gap condition fails in degree " +
                                    std::to_string(gap.blocking_degree) + " at (" + b->object_name(gap.src) +
                                    ", " + b->object_name(gap.tgt) + ")");
    H0Lifter lifter(h);
    for (auto& [kl, w] : x.delta)
        if (!w.empty())
            out.delta[kl] = lifter.lift(x.comps[kl.first].obj, x.comps[kl.second].obj, w);
    for (int step = 2; step <= top - bottom; ++step) {
        Block sq = compose(*b, out.delta, out.delta);
        Block fix;
        for (auto& [kl, v] : sq) {
            auto [k, l] = kl;
            if (x.comps[k].shift - x.comps[l].shift != step)
                continue;
            if (k >= l)
                throw std::runtime_error("moore_object: components are not ordered by position");
            Vec rhs = Scalar(-sign(x.comps[l].shift)) * v;
            HomCohomology hc(*b, x.comps[k].obj, x.comps[l].obj, 2 - step);
            auto y = hc.primitive(rhs);
            if (!y)
                throw std::runtime_error("moore_object: no completion at step " + std::to_string(step) +
                                         ", obstruction in degree " + std::to_string(2 - step));
            fix[kl] = *y;
        }
        for (auto& [kl, v] : fix)
            out.delta[kl] += v;
        clean(out.delta);
    }
    r = validate(out);
    if (!r.ok())
        throw std::logic_error("moore_object: completion fails " + r.str());
    return out;
}

std::optional<LiftedMap> lift_map(const H0Result& h, const TwObject& lx, const TwObject& ly, const Block& f)
{
    TwHom top(lx, ly);
    TwHom bottom(apply_g(h, lx), apply_g(h, ly));
    std::vector<Vec> z = kernel_basis(top.differential(0));
    Matrix dw = bottom.differential(-1);
    Vec rhs = bottom.to_vec(0, f);
    for (bool with_homotopy : {false, true}) {
        Index extra = with_homotopy ? dw.cols() : 0;
        Matrix sys(bottom.dim(0), z.size() + extra);
        for (Index j = 0; j < z.size(); ++j)
            sys.set_col(j, bottom.to_vec(0, apply_g(h, top.to_block(0, z[j]))));
        for (Index j = 0; j < extra; ++j)
            sys.set_col(z.size() + j, Scalar(-1) * dw.col(j));
        auto sol = solve(sys, rhs);
        if (!sol)
            continue;
        Vec uz, wv;
        for (auto& [j, c] : *sol) {
            if (j < z.size())
                uz.axpy(c, z[j]);
            else
                wv.add(j - z.size(), c);
        }
        return LiftedMap{top.to_block(0, uz), bottom.to_block(-1, wv)};
    }
    return std::nullopt;
}

FilteredLift lift_filtered(const H0Result& h, const FiltObject& x, int m)
{
    Report r = validate(x);
    if (!r.ok())
        throw std::invalid_argument("lift_filtered: " + r.str());
    if (x.tw.base != h.h0)
        throw std::invalid_argument("lift_filtered: complex is not over H^0(b)");
    std::vector<int> idx = indices(x);
    FilteredLift out;
    if (idx.size() <= 1) {
        out.y.tw = moore_object(h, x.tw, m);
        out.y.index = x.index;
        out.phi = out.psi = identity_block(x.tw);
        return out;
    }
    int i0 = idx.front();
    auto [q, qw] = restrict(x, [i0](int i) { return i > i0; });
    auto [p, pw] = restrict(x, [i0](int i) { return i == i0; });
    std::vector<Index> qloc(x.tw.size(), npos), ploc(x.tw.size(), npos);
    for (Index k = 0; k < qw.size(); ++k)
        qloc[qw[k]] = k;
    for (Index k = 0; k < pw.size(); ++k)
        ploc[pw[k]] = k;
    Block u;
    for (auto& [kl, v] : x.tw.delta)
        if (qloc[kl.first] != npos && ploc[kl.second] != npos)
            u[{qloc[kl.first], ploc[kl.second]}] = v;

    FilteredLift lq = lift_filtered(h, q, m);
    TwObject lp = moore_object(h, p.tw, m);
    const Cat& h0 = *h.h0;
    TwObject sq = shift(lq.y.tw, -1);
    Block target = compose(h0, u, lq.phi);

    auto lifted = lift_map(h, sq, lp, target);
    if (!lifted)
        throw std::runtime_error("lift_filtered: the connecting map into index " + std::to_string(i0) +
                                 " has no closed lift in degree 0");
    const Block& ut = lifted->map;
    const Block& w = lifted->homotopy;

    Cone c = cone(sq, lp, ut);
    Index nq = q.tw.size();
    out.y.tw = c.c;
    out.y.index = lq.y.index;
    out.y.index.insert(out.y.index.end(), p.index.begin(), p.index.end());
    for (auto& [kl, v] : lq.phi)
        out.phi[{kl.first, qw[kl.second]}] = v;
    for (auto& [kl, v] : lq.psi)
        out.psi[{qw[kl.first], kl.second}] = v;
    for (Index k = 0; k < pw.size(); ++k) {
        const Vec& id = h0.identity(p.tw.comps[k].obj);
        if (id.empty())
            continue;
        out.phi[{nq + k, pw[k]}] = id;
        out.psi[{pw[k], nq + k}] = id;
    }
    for (auto& [kl, v] : w)
        out.phi[{kl.first, pw[kl.second]}] += v;
    for (auto& [kl, v] : compose(h0, w, lq.psi))
        out.psi[{kl.first, nq + kl.second}] -= v;
    clean(out.phi);
    clean(out.psi);

    TwObject gy = apply_g(h, out.y.tw);
    if (!d_tw(gy, x.tw, out.phi, 0).empty() || !add(compose(h0, out.phi, out.psi), identity_block(x.tw), -1).empty() ||
        !add(compose(h0, out.psi, out.phi), identity_block(gy), -1).empty())
        throw std::logic_error("lift_filtered: comparison map is not an isomorphism");
    r = validate(out.y);
    if (!r.ok())
        throw std::logic_error("lift_filtered: " + r.str());
    return out;
}

Bimodule dual_module(const Bimodule& n, CatPtr op)
{
    const Cat& c = n.left();
    Bimodule d = left_module(op);
    for (Index u = 0; u < n.dim(); ++u)
        d.add_element("D" + n.element(u).name, 0, n.element(u).tgt, -n.element(u).deg);
    for (Index x = 0; x < c.dim(); ++x) {
        if (c.is_identity(x))
            continue;
        const Arrow& ax = c.arrow(x);
        for (Index up : n.part(0, ax.tgt)) {
            Vec img;
            for (Index u : n.part(0, ax.src)) {
                Scalar s = n.act_left(x, u).get(up);
                if (!s.is_zero())
                    img.add(u, s);
            }
            d.set_left(x, up, img);
        }
    }
    return d;
}

bool is_injective(const Bimodule& n)
{
    auto op = std::make_shared<Cat>(opposite(n.left()));
    return is_projective(dual_module(n, op));
}

Bimodule cohomology_bimodule(const H0Result& h, int deg)
{
    const Cat& b = *h.g.src;
    Bimodule out(h.h0, h.h0);
    Index no = b.num_objects();
    std::vector<std::unique_ptr<HomCohomology>> hc(no * no);
    std::vector<std::vector<Index>> el(no * no);
    for (Index s = 0; s < no; ++s)
        for (Index t = 0; t < no; ++t) {
            hc[s * no + t] = std::make_unique<HomCohomology>(b, s, t, deg);
            for (Index k = 0; k < hc[s * no + t]->dim(); ++k)
                el[s * no + t].push_back(out.add_element(
                    "H" + std::to_string(deg) + "(" + b.object_name(s) + "," + b.object_name(t) + ")" +
                        std::to_string(k),
                    s, t, 0));
        }
    H0Lifter lifter(h);
    auto coords = [&](Index s, Index t, const Vec& v) {
        Vec w;
        for (auto& [k, c] : hc[s * no + t]->project(v))
            w.add(el[s * no + t][k], c);
        return w;
    };
    const Cat& h0 = *h.h0;
    for (Index x = 0; x < h0.dim(); ++x) {
        if (h0.is_identity(x))
            continue;
        const Arrow& ax = h0.arrow(x);
        Vec rx = lifter.lift(ax.src, ax.tgt, Vec::unit(x));
        for (Index s = 0; s < no; ++s) {
            // x . m for m in H(s, src x)
            for (Index k = 0; k < el[s * no + ax.src].size(); ++k) {
                Vec p = b.compose(rx, hc[s * no + ax.src]->rep(k));
                out.set_left(x, el[s * no + ax.src][k], p.empty() ? Vec() : coords(s, ax.tgt, p));
            }
            // m . x for m in H(tgt x, s)
            for (Index k = 0; k < el[ax.tgt * no + s].size(); ++k) {
                Vec p = b.compose(hc[ax.tgt * no + s]->rep(k), rx);
                out.set_right(el[ax.tgt * no + s][k], x, p.empty() ? Vec() : coords(ax.src, s, p));
            }
        }
    }
    return out;
}

DerivedInjHom derived_inj_hom(const H0Result& h, ModPtr i, ModPtr j, int min_degree)
{
    if (i->left_ptr() != h.h0 || j->left_ptr() != h.h0)
        throw std::invalid_argument("derived_inj_hom: modules are not over H^0(b)");
    if (!is_injective(*i) || !is_injective(*j))
        throw std::invalid_argument("derived_inj_hom: module is not injective");
    if (h.g.src->max_degree() > 0)
        throw std::invalid_argument("derived_inj_hom: category has positive degrees");
    DerivedInjHom out;
    out.hom_ij = ext_dims(i, j, 0).at(0);
    for (int deg = 0; deg >= min_degree; --deg) {
        auto hb = std::make_shared<Bimodule>(cohomology_bimodule(h, deg));
        if (hb->dim() == 0) {
            out.dims[deg] = 0;
            continue;
        }
        HomModule hm = hom_over(hb, i);
        out.hom_hi[deg] = hm.m;
        out.dims[deg] = hm.m->dim() == 0 ? 0 : ext_dims(hm.m, j, 0).at(0);
    }
    return out;
}

}  // namespace hocat
