#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "hocat/glc.hpp"

namespace hocat {

/* A chain of arrows (x_1, ..., x_n), x_1 applied last: src(x_j) == tgt(x_{j+1}).
 * Arity-0 chains are keyed by the one-element vector {object}.
 */
using Tuple = std::vector<Index>;

std::vector<Tuple> composable_tuples(const Cat& a, int n, bool skip_identities = true);
Index tuple_src(const Cat& a, const Tuple& t, int arity);
Index tuple_tgt(const Cat& a, const Tuple& t, int arity);

/* Normalized Hochschild cochain: values on chains of non-identity arrows.
 * The base category sits in degree 0 and M has zero differential.
 */
class HochCochain {
  public:
    HochCochain(CatPtr a, BimodPtr m, int arity);

    const Cat& cat() const { return *a_; }
    const Bimodule& module() const { return *m_; }
    CatPtr cat_ptr() const { return a_; }
    BimodPtr module_ptr() const { return m_; }
    int arity() const { return n_; }

    Vec at(const Tuple& t) const;
    void set(const Tuple& t, Vec v);
    void add(const Tuple& t, const Vec& v);
    const std::map<Tuple, Vec>& values() const { return v_; }
    // Multilinear evaluation on arbitrary arrow vectors (identity components contribute zero).
    Vec eval(const std::vector<Vec>& args) const;
    bool is_zero() const { return v_.empty(); }

    HochCochain& operator+=(const HochCochain& o);
    HochCochain& operator*=(const Scalar& c);
    friend bool operator==(const HochCochain& x, const HochCochain& y) { return x.v_ == y.v_ && x.n_ == y.n_; }

  private:
    CatPtr a_;
    BimodPtr m_;
    int n_;
    std::map<Tuple, Vec> v_;
};

void check_hochschild_input(const Cat& a, const Bimodule& m);

HochCochain d_hoch(const HochCochain& phi);

/* The (normalized or full) Hochschild complex with explicit bases per arity. */
class HochComplex {
  public:
    HochComplex(CatPtr a, BimodPtr m, bool normalized = true);

    const Cat& cat() const { return *a_; }
    const Bimodule& module() const { return *m_; }
    Index dim(int n);
    const std::vector<Tuple>& tuples(int n);
    const Matrix& differential(int n);  // C^n -> C^{n+1}
    const Cohomology& cohomology(int n);

    Vec to_vector(const HochCochain& phi);
    HochCochain from_vector(int n, const Vec& v);

  private:
    struct Level {
        std::vector<Tuple> tuples;
        std::map<Tuple, Index> pos;
        std::vector<Index> off;
        Index dim = 0;
    };
    Level& level_(int n);
    const std::vector<Index>& part_(const Tuple& t, int n);

    CatPtr a_;
    BimodPtr m_;
    bool normalized_;
    std::map<int, Level> levels_;
    std::map<int, Matrix> diff_;
    std::map<int, std::unique_ptr<Cohomology>> coh_;
};

struct CohomologyClass {
    HochCochain rep;
    Vec coords;
};

struct HHResult {
    Index dim = 0;
    std::vector<HochCochain> basis;
};

HHResult hh(CatPtr a, BimodPtr m, int n);
std::vector<Index> hh_dims(CatPtr a, BimodPtr m, int max_n);

/* Class coordinates of a cocycle; throws if phi is not a cocycle. */
CohomologyClass hh_class(HochComplex& cx, const HochCochain& phi);

/* M (x) b as an (a (x) b)-bimodule. */
Bimodule tensor_bimodule(CatPtr ab, const Bimodule& m, const Cat& b);

/* (eta cup 1)(a_1 (x) b_1, ..., a_n (x) b_n) = +- eta(a_1..a_n) (x) b_1...b_n, Koszul sign. */
HochCochain cup_one(const HochCochain& eta, CatPtr ab, BimodPtr mb, const Cat& b);

}  // namespace hocat
