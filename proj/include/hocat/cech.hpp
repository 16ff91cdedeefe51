#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hocat/modules.hpp"

namespace hocat {

/* Nonempty subsets I of {1..n} with a finite-dimensional commutative algebra O(I) each.
 *
 * I <= J iff J is a subset of I.  For j < i, rho(i, j): O(i) -> O(j) is given on the basis of O(i).
 * Absent subsets are empty intersections.
 */
struct CoverPoset {
    int n = 0;
    std::vector<std::vector<int>> subsets;  // sorted, 1-based charts
    std::vector<CatPtr> rings;              // one-object categories in degree 0
    std::map<std::pair<Index, Index>, std::vector<Vec>> rho;

    Index size() const { return subsets.size(); }
    bool leq(Index i, Index j) const;  // i <= j
    std::optional<Index> find(const std::vector<int>& s) const;
    // rho(i, j) applied to v; the identity when i == j.
    Vec restrict(Index i, Index j, const Vec& v) const;
    std::string name(Index i) const;  // "U12"
};

Report validate(const CoverPoset& p);

/* All nonempty subsets of {1..m}, every ring r, identity restrictions. */
CoverPoset redundant_cover(CatPtr r, int m);
/* Charts with pairwise empty intersections. */
CoverPoset disjoint_cover(const std::vector<CatPtr>& rings);

/* Hom(i, j) = O(j) for j <= i, else 0; g o f = g rho(f). Arrow names "r:U1>U12". */
struct CoverCat {
    std::shared_ptr<Cat> cat;
    // arrow index of basis element r of O(j) in Hom(i, j)
    std::map<std::tuple<Index, Index, Index>, Index> arrow;
};

CoverCat build_cover_cat(const CoverPoset& p);

/* A presheaf of modules or bimodules: M(i) over O(i) (left modules have right category unit_cat,
 * bimodules have right category O(i)); res(i, j): M(i) -> M(j) for j < i, images of elements.
 */
struct Presheaf {
    std::vector<BimodPtr> at;
    std::map<std::pair<Index, Index>, std::vector<Vec>> res;

    bool two_sided() const;
    Vec restrict(Index i, Index j, const Vec& m) const;
};

Report validate(const CoverPoset& p, const Presheaf& m);

/* O as a presheaf of bimodules, or of left modules. */
Presheaf structure_sheaf(const CoverPoset& p, bool two_sided);
/* The same R-bimodule (or module) everywhere with identity restrictions; p must be redundant. */
Presheaf constant_presheaf(const CoverPoset& p, BimodPtr m);

/* Elements of pi_star(M) are listed object by object: element e of M(i) is offset[i] + e. */
struct CoverModule {
    std::shared_ptr<Bimodule> mod;
    std::vector<Index> offset;
};

CoverModule pi_star(const CoverPoset& p, const CoverCat& x, const Presheaf& m);

/* Pi_star(M)(i, j) = M(j) for j <= i. */
struct CoverBimodule {
    std::shared_ptr<Bimodule> mod;
    std::map<std::tuple<Index, Index, Index>, Index> element;  // (i, j, e in M(j)) -> element
};

CoverBimodule Pi_star(const CoverPoset& p, const CoverCat& x, const Presheaf& m);

/* Morphisms of presheaves of left modules: families f_i commuting with actions and restrictions. */
Index presheaf_hom_dim(const CoverPoset& p, const Presheaf& m, const Presheaf& n);

/* M (x)_c N for a (b, c)-bimodule M and a (c, d)-bimodule N, as a (b, d)-bimodule; degree 0 data. */
struct BimoduleTensor {
    std::shared_ptr<Bimodule> mod;
    std::vector<Vec> reps;  // per element, a combination of ambient pairs
    std::vector<std::pair<Index, Index>> pairs;  // ambient pairs (m, n)
    Vec class_of(Index m, Index n) const;

    std::map<std::pair<Index, Index>, Index> ambient;
    std::map<std::pair<Index, Index>, Index> part_of;  // (D, A) -> part
    std::vector<Cohomology> quot;
    std::vector<Index> offset;
    std::vector<std::vector<Index>> local;  // per part, ambient indices
    std::vector<Index> pair_part, pair_local;  // per ambient pair
};

BimoduleTensor tensor_bimodules(BimodPtr m, BimodPtr n);

/* M(i) (x)_{O(i)} N(i) pointwise, for bimodule presheaves. */
Presheaf tensor_presheaf(const CoverPoset& p, const Presheaf& m, const Presheaf& n);

/* Pi*(M (x)_O N) against Pi*(M) (x) Pi*(N) through m (x) n at (i, k) -> [m at (k, k)] (x) [n at (i, k)]. */
struct ProductCheck {
    bool iso = false;
    std::string failed;
    std::vector<Vec> map;  // image of each element of Pi*(M (x) N)
};

ProductCheck product_identity(const CoverPoset& p, const CoverCat& x, const Presheaf& m, const Presheaf& n);

/* The Cech complex: degree q is the sum of M(I) over |I| = q + 1. */
struct CechComplex {
    std::vector<Index> dims;
    std::vector<Matrix> d;  // d[q]: degree q -> q + 1
    std::vector<std::vector<std::pair<Index, Index>>> parts;  // per degree, (poset element, first index)
    std::vector<Index> cohomology_dims() const;
};

CechComplex cech_complex(const CoverPoset& p, const Presheaf& m);

/* Ring maps phi_i: O_Y(i) -> O_X(i) on the same subsets, commuting with restrictions. */
struct CoverMorphism {
    const CoverPoset* y = nullptr;
    const CoverPoset* x = nullptr;
    std::vector<std::vector<Vec>> phi;
};

Report validate(const CoverMorphism& f);

/* The induced functor Y~ -> X~. */
GradedFunctor cover_functor(const CoverMorphism& f, const CoverCat& cy, const CoverCat& cx);

/* Restriction of scalars along functors fixing objects; right == nullptr keeps the right category. */
Bimodule restrict_scalars(const Bimodule& m, const GradedFunctor& left, const GradedFunctor* right);

/* f_*: modules over X~ to modules over Y~. */
Bimodule pushforward(const GradedFunctor& f, const Bimodule& module);

/* phi^* eta(y_1, ..., y_n) = eta(f y_1, ..., f y_n) with values in the restricted bimodule. */
HochCochain pullback(const GradedFunctor& f, const HochCochain& eta, BimodPtr restricted);

struct ComparisonVerdict {
    std::vector<Index> cover;  // dim HH^n(X~, Pi*(M))
    std::vector<Index> ring;   // dim HH^n(R, M)
    bool equal = false;
    std::string str() const;
};

ComparisonVerdict comparison_hh(CatPtr r, int charts, BimodPtr m, int max_n);

}  // namespace hocat
