#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hocat/linalg.hpp"

namespace hocat {

inline constexpr Index npos = static_cast<Index>(-1);

struct PairHash {
    std::size_t operator()(const std::pair<Index, Index>& p) const noexcept
    {
        return std::hash<Index>()(p.first) * 0x9e3779b97f4a7c15ULL ^ std::hash<Index>()(p.second);
    }
};

using PairTable = std::unordered_map<std::pair<Index, Index>, Vec, PairHash>;

inline int sign(long e) { return (e % 2 == 0) ? 1 : -1; }

struct Arrow {
    std::string name;
    Index src = 0;
    Index tgt = 0;
    int deg = 0;
};

/* A finite graded (or DG) linear category with a global basis of morphisms.
 *
 * compose(g, f) is g o f for f: A -> B, g: B -> C.  Identities are either a
 * single basis element (the usual case) or an arbitrary vector.
 */
class Cat {
  public:
    Cat() = default;
    explicit Cat(Field k) : k_(k) {}

    Field field() const { return k_; }
    void set_field(Field k) { k_ = k; }

    Index add_object(std::string name);
    Index add_arrow(std::string name, Index src, Index tgt, int deg);
    // Adds a degree-0 endomorphism and marks it as the identity of obj.
    Index add_identity(Index obj, std::string name);
    void set_identity_vector(Index obj, Vec v);
    void set_compose(Index g, Index f, Vec v);
    void set_diff(Index x, Vec v);

    Index num_objects() const { return objects_.size(); }
    Index dim() const { return arrows_.size(); }
    const std::string& object_name(Index a) const { return objects_.at(a); }
    const Arrow& arrow(Index x) const { return arrows_.at(x); }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    std::optional<Index> find_object(const std::string& name) const;
    std::optional<Index> find_arrow(const std::string& name) const;

    const Vec& identity(Index obj) const { return ids_.at(obj); }
    // Basis index of the identity, or npos when the identity is not a basis vector.
    Index identity_arrow(Index obj) const { return id_arrow_.at(obj); }
    bool is_identity(Index x) const;
    bool basis_identities() const;

    const std::vector<Index>& hom(Index a, Index b) const;
    std::vector<Index> hom(Index a, Index b, int deg) const;
    const std::vector<Index>& from(Index a) const;  // arrows with source a
    const std::vector<Index>& into(Index b) const;  // arrows with target b

    Vec compose(Index g, Index f) const;
    Vec compose(const Vec& g, const Vec& f) const;
    Vec d(Index x) const;
    Vec d(const Vec& v) const;
    bool has_diff() const { return !diff_.empty(); }

    const PairTable& compose_table() const { return comp_; }
    const std::unordered_map<Index, Vec>& diff_table() const { return diff_; }

    int min_degree() const;
    int max_degree() const;
    // Degree of a homogeneous vector; throws if inhomogeneous or zero.
    int degree(const Vec& v) const;
    Index src(const Vec& v) const;
    Index tgt(const Vec& v) const;

  private:
    void bucket_(Index x);

    Field k_;
    std::vector<std::string> objects_;
    std::vector<Arrow> arrows_;
    std::vector<Vec> ids_;
    std::vector<Index> id_arrow_;
    PairTable comp_;
    std::unordered_map<Index, Vec> diff_;
    std::unordered_map<std::pair<Index, Index>, std::vector<Index>, PairHash> hom_;
    std::vector<std::vector<Index>> from_, into_;
    std::unordered_map<std::string, Index> obj_index_, arrow_index_;
};

using CatPtr = std::shared_ptr<const Cat>;

struct Report {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
    void fail(std::string s) { failures.push_back(std::move(s)); }
    std::string str() const;
};

Report validate(const Cat& c);

/* The one-object category k. */
CatPtr unit_cat(Field k);

/* Bimodule with left category L and right category R.
 *
 * An element m of M(B, A) (B in R, A in L) is stored as an arrow B -> A;
 * x . m is defined for x: A -> A' in L and m . y for y: B' -> B in R.
 * A left module is a bimodule whose right category is unit_cat.
 */
class Bimodule {
  public:
    Bimodule(CatPtr left, CatPtr right);

    const Cat& left() const { return *l_; }
    const Cat& right() const { return *r_; }
    CatPtr left_ptr() const { return l_; }
    CatPtr right_ptr() const { return r_; }

    Index add_element(std::string name, Index src, Index tgt, int deg);
    void set_left(Index x, Index m, Vec v);
    void set_right(Index m, Index y, Vec v);
    void set_diff(Index m, Vec v);

    Index dim() const { return el_.size(); }
    const Arrow& element(Index m) const { return el_.at(m); }
    const std::vector<Arrow>& elements() const { return el_; }
    const std::vector<Index>& part(Index src, Index tgt) const;
    std::optional<Index> find(const std::string& name) const;

    Vec act_left(Index x, Index m) const;
    Vec act_right(Index m, Index y) const;
    Vec act_left(const Vec& x, const Vec& m) const;
    Vec act_right(const Vec& m, const Vec& y) const;
    Vec d(const Vec& m) const;
    bool has_diff() const { return !diff_.empty(); }

    const PairTable& left_table() const { return lt_; }
    const PairTable& right_table() const { return rt_; }
    const std::unordered_map<Index, Vec>& diff_table() const { return diff_; }

    // Restricts to elements of one degree (the actions preserve degree when both categories are in degree 0).
    Bimodule degree_part(int deg) const;

  private:
    CatPtr l_, r_;
    std::vector<Arrow> el_;
    PairTable lt_, rt_;
    std::unordered_map<Index, Vec> diff_;
    std::unordered_map<std::pair<Index, Index>, std::vector<Index>, PairHash> part_;
    std::unordered_map<std::string, Index> index_;
};

using BimodPtr = std::shared_ptr<const Bimodule>;

Report validate(const Bimodule& m);

Bimodule diagonal(CatPtr c);
Bimodule left_module(CatPtr c);  // empty module over c, to be filled in

/* Graded functor given on objects and on basis arrows. */
struct GradedFunctor {
    CatPtr src, tgt;
    std::vector<Index> on_objects;
    std::vector<Vec> on_arrows;

    Vec apply(const Vec& v) const;
};

Report validate(const GradedFunctor& f, bool check_diff = false);

GradedFunctor identity_functor(CatPtr c);

/* Tensor product of DG categories, basis x (x) y with Koszul signs. */
Cat tensor(const Cat& a, const Cat& b);
Index tensor_index(const Cat& a, const Cat& b, Index x, Index y);

/* a (+) M as a graded category: M is a square-zero ideal placed in its given degrees. */
Cat trivial_extension(const Cat& a, const Bimodule& m, int shift = 0);

struct H0Result {
    std::shared_ptr<Cat> h0;
    GradedFunctor g;  // from c to h0
};

H0Result h0_functor(CatPtr c);
Cat tau_le0(const Cat& c);

/* Cohomology of the Hom complex c(a, b) in one degree, in global arrow coordinates. */
class HomCohomology {
  public:
    HomCohomology(const Cat& c, Index a, Index b, int deg, const std::vector<Vec>& preferred = {});

    Index dim() const { return h_->dim(); }
    Vec rep(Index k) const;
    Vec project(const Vec& v) const;  // v must be a cocycle of the right degree
    bool is_cocycle(const Vec& v) const;
    const std::vector<Index>& arrows() const { return here_; }
    // Global-coordinate basis of the cocycles.
    std::vector<Vec> cocycles() const;
    // Some y of degree deg - 1 with d(y) = v, if v is a coboundary.
    std::optional<Vec> primitive(const Vec& v) const;

  private:
    Vec local_(const Vec& v, const std::vector<Index>& basis) const;
    Vec global_(const Vec& v, const std::vector<Index>& basis) const;

    const Cat* c_;
    std::vector<Index> below_, here_, above_;
    Matrix din_, dout_;
    std::optional<Cohomology> h_;
};

}  // namespace hocat
