#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "hocat/hoch.hpp"

namespace hocat {

/* Left modules over c are bimodules over (c, unit_cat); an element of N(A) is an arrow pt -> A. */
using ModPtr = std::shared_ptr<const Bimodule>;

Cat opposite(const Cat& c);

/* c(a, -) as a left module. */
Bimodule representable(CatPtr c, Index a);

/* M(a, -) as a left module over the left category. */
Bimodule left_part(const Bimodule& m, Index a);
/* M(-, b) as a left module over op, which must be opposite(M.right()). */
Bimodule right_part(const Bimodule& m, Index b, CatPtr op);

/* N with x acting as s(x); s must fix objects. */
Bimodule twist(const Bimodule& n, const GradedFunctor& s);
/* c as a bimodule with the right action twisted: m . y = m s(y). */
Bimodule twisted_diagonal(CatPtr c, const GradedFunctor& s);

/* Hom_k(N, P) as a bimodule: (x . phi . y)(u) = x phi(y u). */
struct HomK {
    std::shared_ptr<Bimodule> m;
    ModPtr n, p;
    std::map<std::pair<Index, Index>, Index> index;  // (N element, P element) -> elementary map
    std::vector<std::pair<Index, Index>> entry;

    Index at(Index i, Index j) const { return index.at({i, j}); }
    Vec apply(const Vec& phi, Index u) const;
};

HomK hom_k(ModPtr n, ModPtr p);

/* phi' = alpha phi beta for module maps beta: N' -> N and alpha: P -> P', elementwise images. */
HochCochain transport(const HochCochain& c, const HomK& from, const HomK& to, const std::vector<Vec>& beta,
                      const std::vector<Vec>& alpha);

/* M (x)_a U for a bimodule M and a left module U. */
struct TensorModule {
    std::shared_ptr<Bimodule> m;
    BimodPtr bimod;
    ModPtr u;
    Vec cls(Index mel, Index uel) const;  // class of mel (x) uel

    std::vector<Cohomology> quot;          // per object
    std::vector<Index> offset;             // first element of each object
    std::map<std::pair<Index, Index>, Index> ambient;  // (mel, uel) -> local index
};

TensorModule tensor_over(BimodPtr m, ModPtr u);

/* Hom_a(M, U) as a left module: (x . phi)(m) = phi(m x). */
struct HomModule {
    std::shared_ptr<Bimodule> m;
    BimodPtr bimod;
    ModPtr u;
    std::vector<Vec> maps;  // per element, coordinates over (M element, U element) pairs
    std::map<std::pair<Index, Index>, Index> ambient;
    Vec eval(Index phi, Index mel) const;  // phi(mel) in U
};

HomModule hom_over(BimodPtr m, ModPtr u);

/* Projectivity by splitting the canonical free cover; degree-0 data only. */
bool is_projective(const Bimodule& n);
bool right_projective(const Bimodule& m);  // every M(-, b)
bool left_projective(const Bimodule& m);   // every M(a, -)

/* Ext^i_a(N, P), i = 0..max_n, as HH^i(a, Hom_k(N, P)). */
std::vector<Index> ext_dims(ModPtr n, ModPtr p, int max_n);
/* The same dimensions from a greedily built projective resolution of N by representables. */
std::vector<Index> ext_dims_resolution(ModPtr n, ModPtr p, int max_n);

}  // namespace hocat
