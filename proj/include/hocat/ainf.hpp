#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hocat/glc.hpp"
#include "hocat/hoch.hpp"

namespace hocat {

/* Operation tables are kept unsuspended: m_n(x_1, ..., x_n) stands for
 * b_n(sx_1, ..., sx_n) = s m_n(x_1, ..., x_n), so |m_n| = sum |x_i| + 2 - n.
 * For a DG category m_1 = -d and m_2(g, f) = (-1)^|g| g o f.
 */
using OpTable = std::map<Tuple, Vec>;

class AInf {
  public:
    AInf(CatPtr base, int arity_bound);
    static AInf from_dg(CatPtr c);

    const Cat& cat() const { return *c_; }
    CatPtr cat_ptr() const { return c_; }
    int arity_bound() const { return bound_; }

    // Sets m_n on a basis tuple. For n = 1, 2 the first call replaces the
    // structure coming from the base category by an explicit table.
    void set_op(int n, const Tuple& t, Vec v);
    void override_op(int n);
    bool overridden(int n) const { return over_.count(n) > 0; }
    const OpTable& table(int n) const;
    Vec op(int n, const Tuple& t) const;
    Vec op(int n, const std::vector<Vec>& args) const;
    // Arities whose operation may be nonzero.
    std::vector<int> active() const;
    bool is_dg() const;

  private:
    CatPtr c_;
    int bound_;
    std::map<int, OpTable> ops_;
    std::set<int> over_;
};

using AInfPtr = std::shared_ptr<const AInf>;

struct CheckReport {
    bool ok = true;
    int arity = 0;
    std::vector<std::string> witness;
    Vec residual;
    std::string str() const;
};

std::string tuple_names(const Cat& c, const Tuple& t);

/* Evaluates sum m_{r+1+t}(x_1..x_r, m_s(...), ...) on every composable tuple of
 * non-identity arrows up to max_arity; arities without contributing terms are skipped.
 */
CheckReport check_stasheff(const AInf& a, int max_arity);
Vec stasheff_residual(const AInf& a, const Tuple& t);

/* a (+) Sigma^{n-2} M with m_n = eta. */
AInf deform(CatPtr a, BimodPtr m, const HochCochain& eta, bool require_cocycle = true);

/* Tensor with a DG category: m_n(x_1 (x) y_1, ...) = +- m_n(x_1..x_n) (x) y_1...y_n. */
AInf tensor_dg(const AInf& a, CatPtr b);

struct MCElement {
    Index object = 0;
    Vec delta;
};

Vec mc_residual(const AInf& a, const MCElement& e);

struct TwResult {
    std::shared_ptr<AInf> tw;
    std::vector<Index> base_object;  // object of a underlying each new object
    std::vector<Index> base_arrow;   // arrow of a underlying each new arrow
};

TwResult tw_category(const AInf& a, const std::vector<MCElement>& objects);

/* Taylor coefficients F_n(x_1..x_n) with s F_n = f_n(sx_1..sx_n); |F_n| = sum |x_i| + 1 - n. */
class Cofunctor {
  public:
    Cofunctor(AInfPtr src, AInfPtr tgt, std::vector<Index> on_objects);
    static Cofunctor strict(AInfPtr src, AInfPtr tgt, const GradedFunctor& f);

    const AInf& src() const { return *src_; }
    const AInf& tgt() const { return *tgt_; }
    AInfPtr src_ptr() const { return src_; }
    AInfPtr tgt_ptr() const { return tgt_; }
    Index on_object(Index a) const { return obj_.at(a); }
    const std::vector<Index>& on_objects() const { return obj_; }

    void set(int n, const Tuple& t, Vec v);
    void add(int n, const Tuple& t, const Vec& v);
    Vec coef(int n, const Tuple& t) const;
    Vec coef(int n, const std::vector<Vec>& args) const;
    const OpTable& table(int n) const;
    std::vector<int> active() const;
    int max_arity() const;

  private:
    AInfPtr src_, tgt_;
    std::vector<Index> obj_;
    std::map<int, OpTable> f_;
};

/* (b o F - F o b) evaluated on a tuple. */
Vec functor_defect(const Cofunctor& f, const Tuple& t);
Vec functor_defect(const Cofunctor& f, const std::vector<Vec>& args);
CheckReport check_functor(const Cofunctor& f, int max_arity);
// An arity beyond which every term of the functor equation vanishes.
int functor_check_bound(const Cofunctor& f);

MCElement mc_pushforward(const Cofunctor& f, const MCElement& e);

struct TwArrowSample {
    Vec u;
    Index from = 0, to = 0;  // indices into the MC sample list
};

/* Evaluates the defect of f on the sequences (d_0..d_0), (d_1..d_1, u, d_0..d_0) with
 * |u| in {0, -1}, and (d_2..,u_2,d_1..,u_1,d_0..) with |u_i| = 0.
 */
CheckReport tw_cofunctor_check(const Cofunctor& f, const std::vector<MCElement>& deltas,
                               const std::vector<TwArrowSample>& arrows, int max_repeat);

}  // namespace hocat
