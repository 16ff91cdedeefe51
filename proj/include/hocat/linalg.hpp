#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hocat/scalar.hpp"

namespace hocat {

using Index = std::size_t;

/* Sparse vector: entries sorted by index, no explicit zeros. */
class Vec {
  public:
    using Entry = std::pair<Index, Scalar>;

    Vec() = default;
    static Vec unit(Index i, const Scalar& c = Scalar(1));

    bool empty() const { return e_.empty(); }
    std::size_t size() const { return e_.size(); }
    auto begin() const { return e_.begin(); }
    auto end() const { return e_.end(); }
    const Entry& front() const { return e_.front(); }

    Scalar get(Index i) const;
    void add(Index i, const Scalar& c);
    void axpy(const Scalar& c, const Vec& o);
    Vec& operator+=(const Vec& o) { axpy(Scalar(1), o); return *this; }
    Vec& operator-=(const Vec& o) { axpy(Scalar(-1), o); return *this; }
    Vec& operator*=(const Scalar& c);
    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(const Scalar& c, Vec a) { return a *= c; }
    Vec operator-() const { return Scalar(-1) * *this; }
    friend bool operator==(const Vec& a, const Vec& b);
    friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }

    Index leading() const { return e_.front().first; }
    Index max_index() const { return e_.back().first; }
    // Appends an entry with index larger than all present ones.
    void push_back(Index i, const Scalar& c);
    Vec in_field(std::uint32_t p) const;
    std::string str() const;

  private:
    std::vector<Entry> e_;
};

/* Column-stored sparse matrix; column j is the image of basis vector j. */
class Matrix {
  public:
    Matrix() = default;
    Matrix(Index rows, Index cols) : rows_(rows), c_(cols) {}

    Index rows() const { return rows_; }
    Index cols() const { return c_.size(); }
    const Vec& col(Index j) const { return c_.at(j); }
    void set_col(Index j, Vec v);
    void add(Index i, Index j, const Scalar& c);
    Scalar at(Index i, Index j) const { return c_.at(j).get(i); }

    Vec apply(const Vec& x) const;
    Matrix after(const Matrix& inner) const;  // this * inner
    bool is_zero() const;
    std::vector<Vec> row_vectors() const;

  private:
    Index rows_ = 0;
    std::vector<Vec> c_;
};

struct GradedSpace {
    std::vector<std::string> names;
    std::vector<int> degrees;

    Index dim() const { return names.size(); }
    void add(std::string name, int degree);
    GradedSpace shifted(int by) const;  // degree(v) becomes degree(v) - by
    void check() const;
};

/* A homogeneous map between graded spaces. */
class SparseMap {
  public:
    SparseMap(GradedSpace dom, GradedSpace cod, int degree, Matrix m);

    const GradedSpace& domain() const { return dom_; }
    const GradedSpace& codomain() const { return cod_; }
    int degree() const { return deg_; }
    const Matrix& matrix() const { return m_; }

  private:
    GradedSpace dom_, cod_;
    int deg_;
    Matrix m_;
};

/* Incremental echelon basis with bookkeeping tags.
 *
 * Every stored row has a leading index (its smallest index) normalized to 1.
 * The tag of a row records which combination of inserted vectors it came from.
 */
class Reducer {
  public:
    // Returns true if v was independent of the rows already present; otherwise
    // *relation (if given) receives the reduced tag, a combination mapping to zero.
    bool insert(const Vec& v, const Vec& tag = {}, Vec* relation = nullptr);
    // Reduces v against the stored rows; tag (if given) receives the combination subtracted.
    Vec reduce(Vec v, Vec* tag = nullptr) const;
    Index rank() const { return rows_.size(); }
    bool contains(const Vec& v) const { return reduce(v).empty(); }

  private:
    std::map<Index, std::pair<Vec, Vec>> rows_;
};

/* Solver for A x = b sharing one elimination across right-hand sides. */
class LinearSystem {
  public:
    explicit LinearSystem(const Matrix& a);

    std::optional<Vec> solve(const Vec& b) const;
    Index rank() const { return r_.rank(); }
    const std::vector<Vec>& kernel() const { return kernel_; }
    const Matrix& matrix() const { return a_; }

  private:
    Matrix a_;
    Reducer r_;
    std::vector<Vec> kernel_;
};

std::optional<Vec> solve(const Matrix& a, const Vec& b);
std::optional<Vec> solve(const SparseMap& a, const Vec& b);
std::vector<Vec> kernel_basis(const Matrix& a);
std::vector<Vec> kernel_basis(const SparseMap& a);
Index rank(const Matrix& a);

/* Cohomology at the middle of  C' --d_in--> C --d_out--> C''. */
class Cohomology {
  public:
    // Cocycles in preferred are tried first when choosing the class basis.
    Cohomology(const Matrix& d_in, const Matrix& d_out, const std::vector<Vec>& preferred = {});

    Index dim() const { return basis_.size(); }
    // Cocycle representatives of a quotient basis.
    const std::vector<Vec>& basis() const { return basis_; }
    // Coordinates of a cocycle in the class basis; throws if v is not a cocycle.
    Vec project(const Vec& v) const;
    bool is_coboundary(const Vec& v) const { return project(v).empty(); }
    Index cocycle_dim() const { return zdim_; }

  private:
    std::vector<Vec> basis_;
    Reducer r_;
    Index zdim_ = 0;
};

Cohomology cohomology(const SparseMap& d_in, const SparseMap& d_out);

}  // namespace hocat
