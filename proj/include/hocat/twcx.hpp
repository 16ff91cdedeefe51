#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hocat/glc.hpp"
#include "hocat/modules.hpp"

namespace hocat {

/* Sigma^shift obj, with (Sigma^n A)^q = A^{q+n}. */
struct Shifted {
    Index obj = 0;
    int shift = 0;
    bool operator==(const Shifted&) const = default;
};

/* A morphism of Free a between two component lists.
 *
 * Entry (k, l) is an element v of a(A_k, B_l), read as s^{n_l} v s^{-n_k}: it has
 * degree |v| + n_k - n_l, composes without signs and d acts as (-1)^{n_l} d_a.
 */
using Block = std::map<std::pair<Index, Index>, Vec>;

/* One-sided twisted complex: delta_{kl} = 0 unless k < l, |delta| = 1, d(delta) + delta^2 = 0. */
struct TwObject {
    CatPtr base;
    std::vector<Shifted> comps;
    Block delta;

    Index size() const { return comps.size(); }
};

void clean(Block& b);
Block compose(const Cat& a, const Block& g, const Block& f);  // g o f
Block d_free(const Cat& a, const std::vector<Shifted>& target, const Block& f);
std::optional<int> block_degree(const Cat& a, const std::vector<Shifted>& src, const std::vector<Shifted>& tgt,
                                const Block& f);
Block identity_block(const TwObject& x);
Block scaled(const Block& b, const Scalar& c);
Block add(Block a, const Block& b, const Scalar& c = Scalar(1));

Block mc_residual(const TwObject& x);
Report validate(const TwObject& x);

/* d_Tw(f) = d f + delta_Y f - (-1)^{|f|} f delta_X for homogeneous f of degree deg. */
Block d_tw(const TwObject& x, const TwObject& y, const Block& f, int deg);

TwObject single(CatPtr a, Index obj, int shift = 0);
/* Sigma^n X: shifts raised by n, delta multiplied by (-1)^n. */
TwObject shift(const TwObject& x, int n);
TwObject direct_sum(const TwObject& x, const TwObject& y);

/* The Hom complex (Tw a)(X, Y), optionally restricted to entries (k, l) with keep(k, l). */
class TwHom {
  public:
    struct Entry {
        Index k, l, arrow;
    };

    TwHom(TwObject x, TwObject y, std::function<bool(Index, Index)> keep = {});

    const TwObject& source() const { return x_; }
    const TwObject& target() const { return y_; }
    int min_degree() const { return lo_; }
    int max_degree() const { return hi_; }
    const std::vector<Entry>& basis(int deg) const;
    Index dim(int deg) const { return basis(deg).size(); }

    Block to_block(int deg, const Vec& v) const;
    // Throws if b has an entry outside the basis of this degree.
    Vec to_vec(int deg, const Block& b) const;
    Block d(int deg, const Block& f) const { return d_tw(x_, y_, f, deg); }
    Matrix differential(int deg) const;  // degree deg -> deg + 1
    Cohomology cohomology(int deg, const std::vector<Vec>& preferred = {}) const;
    bool is_cocycle(int deg, const Block& f) const;
    // Some w of degree deg - 1 with d(w) = f, if f is a coboundary.
    std::optional<Block> primitive(int deg, const Block& f) const;

  private:
    TwObject x_, y_;
    int lo_ = 0, hi_ = -1;
    std::map<int, std::vector<Entry>> basis_;
    std::map<std::tuple<Index, Index, Index>, Index> pos_;
};

/* A twisted complex of twisted complexes: outer components Sigma^{shifts[i]} pieces[i]. */
struct NestedTw {
    std::vector<TwObject> pieces;
    std::vector<int> shifts;
    std::map<std::pair<Index, Index>, Block> delta;  // (i, j), i < j, between the shifted pieces
};

TwObject tot(const NestedTw& n);

/* C(u) = (Sigma X; Y) with delta = [[-delta_X, 0], [u, delta_Y]]; i = (0, 1)^t, p = (1, 0). */
struct Cone {
    TwObject c;
    Block i;          // Y -> C
    Block p;          // C -> Sigma X
    Block homotopy;   // X -> C of degree -1 with d(homotopy) = i u
};

Cone cone(const TwObject& x, const TwObject& y, const Block& u);

/* Filtered object: a twisted complex whose components carry an index; delta_{kl} needs index(l) <= index(k). */
struct FiltObject {
    TwObject tw;
    std::vector<int> index;
};

Report validate(const FiltObject& j);
TwObject omega(const FiltObject& j);
FiltObject gr(const FiltObject& j);
FiltObject twist(const FiltObject& j, int n);  // J(n)_i = J_{i+n}
FiltObject piece(const FiltObject& j, int i);
std::vector<int> indices(const FiltObject& j);

/* c^f(J, J') = sum_{i >= j} c(J_i, J'_j); c^gr the diagonal part. */
TwHom filt_hom(const FiltObject& j, const FiltObject& jp);
TwHom gr_hom(const FiltObject& j, const FiltObject& jp);

struct ExactSeqReport {
    struct Degree {
        int deg;
        Index left, middle, right;
        bool chain = false, injective = false, surjective = false, exact_middle = false;
    };
    std::vector<Degree> degrees;
    bool ok() const;
    std::string str() const;
};

/* 0 -> c^f(J, J'(-1)) -> c^f(J, J') -> c^gr(gr J, gr J') -> 0. */
ExactSeqReport exact_seq_check(const FiltObject& j, const FiltObject& jp);

/* The functor G: Tw b -> Tw H^0(b), entrywise; entries of nonzero degree go to 0. */
TwObject apply_g(const H0Result& h, const TwObject& x);
Block apply_g(const H0Result& h, const Block& f);

struct GapReport {
    bool ok = true;
    int blocking_degree = 0;
    Index src = 0, tgt = 0;
};

/* H^{-q}(b)(A, B) = 0 for q = 1..m and all objects A, B in objs. */
GapReport gap_check(const Cat& b, const std::vector<Index>& objs, int m);

/* Completes a complex of injectives over H^0(b) to a twisted complex over b, staircase order.
 * x lives over h.h0 with degree-0 entries; the span of shifts must be at most m.
 */
TwObject moore_object(const H0Result& h, const TwObject& x, int m);

/* A closed degree-0 map u~: lx -> ly with G(u~) - d(w) = f; an exact lift (w = 0) is preferred. */
struct LiftedMap {
    Block map;
    Block homotopy;
};

std::optional<LiftedMap> lift_map(const H0Result& h, const TwObject& lx, const TwObject& ly, const Block& f);

/* H^0(G^f)(Y) = X up to the closed isomorphism phi: G(Y) -> X with strict inverse psi. */
struct FilteredLift {
    FiltObject y;
    Block phi, psi;
};

FilteredLift lift_filtered(const H0Result& h, const FiltObject& x, int m);

/* Hom^i(L(I), L(J)) = Hom_{H^0}(Hom_{H^0}(H^i(b), I), J) for i <= 0. */
struct DerivedInjHom {
    std::map<int, Index> dims;       // degree -> dimension
    std::map<int, ModPtr> hom_hi;    // degree -> Hom_{H^0}(H^i(b), I)
    Index hom_ij = 0;                // dim Hom_{H^0}(I, J)
};

/* Hom_k(N, k) as a left module over op = opposite(left category of N). */
Bimodule dual_module(const Bimodule& n, CatPtr op);
bool is_injective(const Bimodule& n);

DerivedInjHom derived_inj_hom(const H0Result& h, ModPtr i, ModPtr j, int min_degree);

/* H^deg(b) as an H^0(b)-bimodule. */
Bimodule cohomology_bimodule(const H0Result& h, int deg);

}  // namespace hocat
