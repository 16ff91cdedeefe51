#include "hocat/massey.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace hocat {

namespace {

Scalar random_scalar(const Field& k, std::mt19937_64& rng)
{
    if (k.p)
        return Scalar::residue(static_cast<long>(rng() % k.p), k.p);
    return Scalar(static_cast<long>(rng() % 7) - 3);
}

Block random_cocycle(const TwHom& hom, int deg, std::mt19937_64& rng)
{
    Vec v;
    Field k = hom.source().base->field();
    for (const Vec& z : kernel_basis(hom.differential(deg)))
        v.axpy(random_scalar(k, rng), z);
    return hom.to_block(deg, v);
}

std::vector<Block> class_reps(const TwHom& hom, int deg)
{
    std::vector<Block> out;
    Cohomology h = hom.cohomology(deg);
    for (const Vec& r : h.basis())
        out.push_back(hom.to_block(deg, r));
    return out;
}

// Columns and right-hand side of a linear system whose rows are split over several spaces.
class Stacked {
  public:
    explicit Stacked(std::vector<Index> row_dims)
    {
        Index o = 0;
        for (Index d : row_dims) {
            off_.push_back(o);
            o += d;
        }
        rows_ = o;
    }

    Vec place(Index part, const Vec& v) const
    {
        Vec out;
        for (auto& [i, c] : v)
            out.push_back(i + off_.at(part), c);
        return out;
    }

    Index add_column(Vec v)
    {
        cols_.push_back(std::move(v));
        return cols_.size() - 1;
    }

    std::optional<Vec> solve(const Vec& rhs, std::mt19937_64* rng, const Field& k) const
    {
        Matrix m(rows_, cols_.size());
        for (Index j = 0; j < cols_.size(); ++j)
            m.set_col(j, cols_[j]);
        LinearSystem ls(m);
        auto x = ls.solve(rhs);
        if (x && rng)
            for (const Vec& kv : ls.kernel())
                x->axpy(random_scalar(k, *rng), kv);
        return x;
    }

  private:
    std::vector<Index> off_;
    Index rows_ = 0;
    std::vector<Vec> cols_;
};

Block combine(const TwHom& hom, int deg, const std::vector<Vec>& basis, const Vec& x, Index from)
{
    Vec v;
    for (auto& [j, c] : x)
        if (j >= from && j < from + basis.size())
            v.axpy(c, basis[j - from]);
    return hom.to_block(deg, v);
}

void require_closed(const TwHom& hom, const Block& f, const char* what)
{
    hom.to_vec(0, f);
    if (!hom.is_cocycle(0, f))
        throw std::invalid_argument(std::string("massey: ") + what + " is not closed");
}

}  // namespace

MasseyHoms massey_homs(const TwObject& x, const TwObject& y, const TwObject& z, const TwObject& u)
{
    return {std::make_shared<TwHom>(x, y), std::make_shared<TwHom>(y, z), std::make_shared<TwHom>(z, u),
            std::make_shared<TwHom>(x, z), std::make_shared<TwHom>(y, u), std::make_shared<TwHom>(x, u)};
}

MasseyHoms filt_massey_homs(const FiltObject& x, const FiltObject& y, const FiltObject& z, const FiltObject& u)
{
    return {std::make_shared<TwHom>(filt_hom(x, y)), std::make_shared<TwHom>(filt_hom(y, z)),
            std::make_shared<TwHom>(filt_hom(z, u)), std::make_shared<TwHom>(filt_hom(x, z)),
            std::make_shared<TwHom>(filt_hom(y, u)), std::make_shared<TwHom>(filt_hom(x, u))};
}

MasseySet::MasseySet(std::shared_ptr<const TwHom> xu, Block rep, const std::vector<Block>& generators)
    : xu_(std::move(xu)), h_(std::make_shared<Cohomology>(xu_->cohomology(-1))), rep_(std::move(rep))
{
    coords_ = class_of(rep_);
    for (const Block& g : generators) {
        Vec c = class_of(g);
        gens_.push_back(c);
        span_.insert(c);
    }
}

Vec MasseySet::class_of(const Block& cocycle) const
{
    return h_->project(xu_->to_vec(-1, cocycle));
}

bool MasseySet::contains_class(const Vec& c) const
{
    return span_.contains(c - coords_);
}

bool MasseySet::same_coset(const MasseySet& o) const
{
    if (o.indeterminacy_dim() != indeterminacy_dim())
        return false;
    for (const Vec& g : o.gens_)
        if (!span_.contains(g))
            return false;
    return contains_class(o.coords_);
}

std::string MasseySet::str() const
{
    std::ostringstream os;
    os << "representative " << coords_.str() << " in H^-1 of dimension " << ambient_dim()
       << ", indeterminacy of dimension " << indeterminacy_dim();
    return os.str();
}

MasseySet massey_dg(const MasseyHoms& m, const Block& f, const Block& g, const Block& h, std::mt19937_64* rng)
{
    const Cat& a = *m.xy->source().base;
    require_closed(*m.xy, f, "f");
    require_closed(*m.yz, g, "g");
    require_closed(*m.zu, h, "h");
    auto s = m.xz->primitive(0, compose(a, g, f));
    if (!s)
        throw std::invalid_argument("massey: [g f] is not zero");
    auto t = m.yu->primitive(0, compose(a, h, g));
    if (!t)
        throw std::invalid_argument("massey: [h g] is not zero");
    if (rng) {
        *s = add(*s, random_cocycle(*m.xz, -1, *rng));
        *t = add(*t, random_cocycle(*m.yu, -1, *rng));
    }
    Block b = add(compose(a, h, *s), compose(a, *t, f), Scalar(-1));
    if (!m.xu->is_cocycle(-1, b))
        throw std::logic_error("massey: h s - t f is not closed");
    std::vector<Block> gens;
    for (const Block& z : class_reps(*m.xz, -1))
        gens.push_back(compose(a, h, z));
    for (const Block& z : class_reps(*m.yu, -1))
        gens.push_back(compose(a, z, f));
    return MasseySet(m.xu, b, gens);
}

MasseySet massey_tri(const TwObject& x, const TwObject& y, const TwObject& z, const TwObject& u, const Block& f,
                     const Block& g, const Block& h, std::mt19937_64* rng)
{
    const Cat& a = *x.base;
    Field k = a.field();
    MasseyHoms m = massey_homs(x, y, z, u);
    require_closed(*m.xy, f, "f");
    require_closed(*m.yz, g, "g");
    require_closed(*m.zu, h, "h");
    if (m.xz->primitive(0, compose(a, g, f)) == std::nullopt || m.yu->primitive(0, compose(a, h, g)) == std::nullopt)
        throw std::invalid_argument("massey: the composites are not zero in H^0");
    Cone c = cone(x, y, f);
    TwObject sx = shift(x, 1);
    TwHom cz(c.c, z), cu(c.c, u), sxu(sx, u);

    // a: C(f) -> Z closed with [a i] = [g]
    std::vector<Vec> za = kernel_basis(cz.differential(0));
    Stacked s1({m.yz->dim(0)});
    for (const Vec& v : za)
        s1.add_column(m.yz->to_vec(0, compose(a, cz.to_block(0, v), c.i)));
    Matrix dyz = m.yz->differential(-1);
    for (Index j = 0; j < dyz.cols(); ++j)
        s1.add_column(Scalar(-1) * dyz.col(j));
    auto x1 = s1.solve(m.yz->to_vec(0, g), rng, k);
    if (!x1)
        throw std::runtime_error("massey_tri: g does not extend over the cone");
    Block am = combine(cz, 0, za, *x1, 0);

    // b: Sigma X -> U closed with [b p] = [h a]
    std::vector<Vec> zb = kernel_basis(sxu.differential(0));
    Stacked s2({cu.dim(0)});
    for (const Vec& v : zb)
        s2.add_column(cu.to_vec(0, compose(a, sxu.to_block(0, v), c.p)));
    Matrix dcu = cu.differential(-1);
    for (Index j = 0; j < dcu.cols(); ++j)
        s2.add_column(Scalar(-1) * dcu.col(j));
    auto x2 = s2.solve(cu.to_vec(0, compose(a, h, am)), rng, k);
    if (!x2)
        throw std::runtime_error("massey_tri: the diagram has no completion");
    Block bm = combine(sxu, 0, zb, *x2, 0);

    std::vector<Block> gens;
    for (const Block& w : class_reps(*m.xz, -1))
        gens.push_back(compose(a, h, w));
    for (const Block& w : class_reps(*m.yu, -1))
        gens.push_back(compose(a, w, f));
    return MasseySet(m.xu, bm, gens);
}

Block suspension_unit(const TwObject& x)
{
    return identity_block(x);
}

std::optional<Block> h0_inverse(const TwObject& a, const TwObject& b, const Block& x)
{
    const Cat& c = *a.base;
    TwHom ba(b, a), aa(a, a), bb(b, b);
    std::vector<Vec> z = kernel_basis(ba.differential(0));
    Stacked s({aa.dim(0), bb.dim(0)});
    for (const Vec& v : z) {
        Block y = ba.to_block(0, v);
        s.add_column(s.place(0, aa.to_vec(0, compose(c, y, x))) + s.place(1, bb.to_vec(0, compose(c, x, y))));
    }
    Matrix da = aa.differential(-1), db = bb.differential(-1);
    for (Index j = 0; j < da.cols(); ++j)
        s.add_column(s.place(0, Scalar(-1) * da.col(j)));
    for (Index j = 0; j < db.cols(); ++j)
        s.add_column(s.place(1, Scalar(-1) * db.col(j)));
    Vec rhs = s.place(0, aa.to_vec(0, identity_block(a))) + s.place(1, bb.to_vec(0, identity_block(b)));
    auto sol = s.solve(rhs, nullptr, c.field());
    if (!sol)
        return std::nullopt;
    return combine(ba, 0, z, *sol, 0);
}

std::optional<Block> triangle_completion(const TwObject& x, const TwObject& y, const TwObject& z, const Block& f,
                                         const Block& g, const Block& h)
{
    const Cat& a = *x.base;
    Cone c = cone(x, y, f);
    TwObject sx = shift(x, 1);
    TwHom cz(c.c, z), yz(y, z), csx(c.c, sx);
    std::vector<Vec> zc = kernel_basis(cz.differential(0));
    Stacked s({yz.dim(0), csx.dim(0)});
    for (const Vec& v : zc) {
        Block xm = cz.to_block(0, v);
        s.add_column(s.place(0, yz.to_vec(0, compose(a, xm, c.i))) + s.place(1, csx.to_vec(0, compose(a, h, xm))));
    }
    Matrix d1 = yz.differential(-1), d2 = csx.differential(-1);
    for (Index j = 0; j < d1.cols(); ++j)
        s.add_column(s.place(0, Scalar(-1) * d1.col(j)));
    for (Index j = 0; j < d2.cols(); ++j)
        s.add_column(s.place(1, Scalar(-1) * d2.col(j)));
    auto sol = s.solve(s.place(0, yz.to_vec(0, g)) + s.place(1, csx.to_vec(0, c.p)), nullptr, a.field());
    if (!sol)
        return std::nullopt;
    return combine(cz, 0, zc, *sol, 0);
}

namespace {

bool same_object(const TwObject& p, const TwObject& q)
{
    return p.comps == q.comps && p.delta == q.delta;
}

bool homotopic(const TwObject& a, const TwObject& b, const Block& p, const Block& q)
{
    Block diff = add(p, q, Scalar(-1));
    if (diff.empty())
        return true;
    TwHom hom(a, b);
    return hom.primitive(0, diff).has_value();
}

}  // namespace

TriangleCertificate certify_triangle(const H0Result& hr, const Triangle& s, const Triangle& t)
{
    TriangleCertificate out;
    auto fail = [&](std::string why) {
        out.failed = std::move(why);
        return out;
    };
    if (!same_object(apply_g(hr, t.x), s.x) || !same_object(apply_g(hr, t.y), s.y) ||
        !same_object(apply_g(hr, t.z), s.z))
        return fail("G o L = id on objects");
    if (!homotopic(s.x, s.y, apply_g(hr, t.f), s.f) || !homotopic(s.y, s.z, apply_g(hr, t.g), s.g) ||
        !homotopic(s.z, shift(s.x, 1), apply_g(hr, t.h), s.h))
        return fail("G o L = id on morphisms");
    TwObject su = shift(s.x, 1), tu = shift(t.x, 1);
    MasseySet src = massey_dg(massey_homs(s.x, s.y, s.z, su), s.f, s.g, s.h);
    if (!src.contains(suspension_unit(s.x)))
        return fail("source triangle: id not in <h, g, f>");
    std::optional<MasseySet> tgt;
    try {
        tgt = massey_dg(massey_homs(t.x, t.y, t.z, tu), t.f, t.g, t.h);
    } catch (const std::invalid_argument&) {
        return fail("L g L f or L h L g is not zero in H^0");
    }
    // phi = G(theta) for theta in <L h, L g, L f>, so L(phi) = theta when G is injective on H^-1(L X, Sigma L X)
    Block phi = apply_g(hr, tgt->rep());
    out.phi = src.class_of(phi);
    if (!src.contains(phi))
        return fail("G(theta) not in <h, g, f>");
    TwHom txu(t.x, tu), sxu(s.x, su);
    Cohomology ht = txu.cohomology(-1);
    Cohomology hs = sxu.cohomology(-1);
    Reducer im;
    for (const Vec& r : ht.basis())
        if (!im.insert(hs.project(sxu.to_vec(-1, apply_g(hr, txu.to_block(-1, r))))))
            return fail("G is not injective on End(L X)");
    if (!tgt->contains(suspension_unit(t.x)))
        return fail("id not in <L h, L g, L f>");
    out.x = triangle_completion(t.x, t.y, t.z, t.f, t.g, t.h);
    if (!out.x)
        return fail("no completion of the triangle");
    Cone c = cone(t.x, t.y, t.f);
    out.x_inverse = h0_inverse(c.c, t.z, *out.x);
    if (!out.x_inverse)
        return fail("completion is not an isomorphism");
    if (!h0_inverse(apply_g(hr, c.c), s.z, apply_g(hr, *out.x)))
        return fail("G(x) is not an isomorphism");
    out.distinguished = true;
    return out;
}

namespace {

Block restrict_block(const Block& b, const FiltObject& p, const FiltObject& q, int i, const std::vector<Index>& lp,
                     const std::vector<Index>& lq)
{
    Block out;
    for (auto& [kl, v] : b)
        if (p.index[kl.first] == i && q.index[kl.second] == i)
            out[{lp[kl.first], lq[kl.second]}] = v;
    return out;
}

std::vector<Index> local_positions(const FiltObject& j, int i)
{
    std::vector<Index> out(j.index.size(), npos);
    Index n = 0;
    for (Index k = 0; k < j.index.size(); ++k)
        if (j.index[k] == i)
            out[k] = n++;
    return out;
}

}  // namespace

std::vector<GradedMembership> filtered_massey_gr(const FiltObject& x, const FiltObject& y, const FiltObject& z,
                                                 const FiltObject& u, const Block& f, const Block& g,
                                                 const Block& h, const Block& phi)
{
    std::set<int> all;
    for (const FiltObject* o : {&x, &y, &z, &u})
        for (int i : o->index)
            all.insert(i);
    std::vector<GradedMembership> out;
    for (int i : all) {
        auto lx = local_positions(x, i), ly = local_positions(y, i), lz = local_positions(z, i),
             lu = local_positions(u, i);
        TwObject px = piece(x, i).tw, py = piece(y, i).tw, pz = piece(z, i).tw, pu = piece(u, i).tw;
        Block fi = restrict_block(f, x, y, i, lx, ly);
        Block gi = restrict_block(g, y, z, i, ly, lz);
        Block hi = restrict_block(h, z, u, i, lz, lu);
        Block phii = restrict_block(phi, x, u, i, lx, lu);
        MasseySet ms = massey_dg(massey_homs(px, py, pz, pu), fi, gi, hi);
        out.push_back({i, ms.contains(phii)});
    }
    return out;
}

}  // namespace hocat
