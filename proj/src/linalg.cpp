#include "hocat/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hocat {

Vec Vec::unit(Index i, const Scalar& c)
{
    Vec v;
    if (!c.is_zero())
        v.e_.emplace_back(i, c);
    return v;
}

Scalar Vec::get(Index i) const
{
    auto it = std::lower_bound(e_.begin(), e_.end(), i,
                               [](const Entry& e, Index k) { return e.first < k; });
    return (it != e_.end() && it->first == i) ? it->second : Scalar();
}

void Vec::add(Index i, const Scalar& c)
{
    if (c.is_zero())
        return;
    auto it = std::lower_bound(e_.begin(), e_.end(), i,
                               [](const Entry& e, Index k) { return e.first < k; });
    if (it != e_.end() && it->first == i) {
        it->second += c;
        if (it->second.is_zero())
            e_.erase(it);
    } else {
        e_.insert(it, {i, c});
    }
}

void Vec::push_back(Index i, const Scalar& c)
{
    if (!e_.empty() && e_.back().first >= i)
        throw std::logic_error("Vec::push_back out of order");
    if (!c.is_zero())
        e_.emplace_back(i, c);
}

void Vec::axpy(const Scalar& c, const Vec& o)
{
    if (c.is_zero() || o.e_.empty())
        return;
    std::vector<Entry> out;
    out.reserve(e_.size() + o.e_.size());
    auto a = e_.begin(), ae = e_.end();
    auto b = o.e_.begin(), be = o.e_.end();
    while (a != ae || b != be) {
        if (b == be || (a != ae && a->first < b->first)) {
            out.push_back(std::move(*a++));
        } else if (a == ae || b->first < a->first) {
            Scalar s = c * b->second;
            if (!s.is_zero())
                out.emplace_back(b->first, std::move(s));
            ++b;
        } else {
            Scalar s = a->second + c * b->second;
            if (!s.is_zero())
                out.emplace_back(a->first, std::move(s));
            ++a;
            ++b;
        }
    }
    e_ = std::move(out);
}

Vec& Vec::operator*=(const Scalar& c)
{
    if (c.is_zero()) {
        e_.clear();
        return *this;
    }
    for (auto& e : e_)
        e.second *= c;
    return *this;
}

bool operator==(const Vec& a, const Vec& b)
{
    if (a.e_.size() != b.e_.size())
        return false;
    for (std::size_t i = 0; i < a.e_.size(); ++i)
        if (a.e_[i].first != b.e_[i].first || a.e_[i].second != b.e_[i].second)
            return false;
    return true;
}

Vec Vec::in_field(std::uint32_t p) const
{
    Vec v;
    for (auto& [i, c] : e_)
        v.push_back(i, c.in_field(p));
    return v;
}

std::string Vec::str() const
{
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto& [i, c] : e_) {
        os << (first ? "" : ", ") << i << ": " << c.str();
        first = false;
    }
    os << "}";
    return os.str();
}

void Matrix::set_col(Index j, Vec v)
{
    if (!v.empty() && v.max_index() >= rows_)
        throw std::out_of_range("column entry outside matrix");
    c_.at(j) = std::move(v);
}

void Matrix::add(Index i, Index j, const Scalar& c)
{
    if (i >= rows_)
        throw std::out_of_range("row index outside matrix");
    c_.at(j).add(i, c);
}

Vec Matrix::apply(const Vec& x) const
{
    Vec y;
    for (auto& [j, c] : x) {
        if (j >= c_.size())
            throw std::invalid_argument("vector does not lie in the matrix domain");
        y.axpy(c, c_[j]);
    }
    return y;
}

Matrix Matrix::after(const Matrix& inner) const
{
    if (inner.rows() != cols())
        throw std::invalid_argument("dimension mismatch in matrix product");
    Matrix out(rows_, inner.cols());
    for (Index j = 0; j < inner.cols(); ++j)
        out.c_[j] = apply(inner.col(j));
    return out;
}

bool Matrix::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Vec& v) { return v.empty(); });
}

std::vector<Vec> Matrix::row_vectors() const
{
    std::vector<Vec> r(rows_);
    for (Index j = 0; j < c_.size(); ++j)
        for (auto& [i, c] : c_[j])
            r[i].push_back(j, c);
    return r;
}

void GradedSpace::add(std::string name, int degree)
{
    names.push_back(std::move(name));
    degrees.push_back(degree);
}

GradedSpace GradedSpace::shifted(int by) const
{
    GradedSpace g = *this;
    for (auto& d : g.degrees)
        d -= by;
    return g;
}

void GradedSpace::check() const
{
    if (names.size() != degrees.size())
        throw std::invalid_argument("graded space: names and degrees differ in length");
    std::set<std::string> seen(names.begin(), names.end());
    if (seen.size() != names.size())
        throw std::invalid_argument("graded space: repeated basis name");
}

SparseMap::SparseMap(GradedSpace dom, GradedSpace cod, int degree, Matrix m)
    : dom_(std::move(dom)), cod_(std::move(cod)), deg_(degree), m_(std::move(m))
{
    dom_.check();
    cod_.check();
    if (m_.cols() != dom_.dim() || m_.rows() != cod_.dim())
        throw std::invalid_argument("sparse map: matrix shape does not match spaces");
    for (Index j = 0; j < m_.cols(); ++j)
        for (auto& [i, c] : m_.col(j))
            if (cod_.degrees[i] != dom_.degrees[j] + deg_)
                throw std::invalid_argument("sparse map: entry " + cod_.names[i] + " <- " + dom_.names[j] +
                                            " breaks the degree shift");
}

bool Reducer::insert(const Vec& v, const Vec& tag, Vec* relation)
{
    Vec t = tag;
    Vec w = reduce(v, &t);
    if (w.empty()) {
        if (relation)
            *relation = std::move(t);
        return false;
    }
    Scalar inv = w.front().second.inverse();
    w *= inv;
    t *= inv;
    Index piv = w.leading();
    rows_.emplace(piv, std::make_pair(std::move(w), std::move(t)));
    return true;
}

Vec Reducer::reduce(Vec v, Vec* tag) const
{
    if (rows_.empty())
        return v;
    Index from = 0;
    while (true) {
        const std::pair<Vec, Vec>* row = nullptr;
        Scalar c;
        for (auto& [i, x] : v) {
            if (i < from)
                continue;
            auto it = rows_.find(i);
            if (it != rows_.end()) {
                row = &it->second;
                c = x;
                from = i + 1;
                break;
            }
        }
        if (!row)
            return v;
        v.axpy(-c, row->first);
        if (tag)
            tag->axpy(-c, row->second);
    }
}

LinearSystem::LinearSystem(const Matrix& a) : a_(a)
{
    for (Index j = 0; j < a.cols(); ++j) {
        Vec rel;
        if (!r_.insert(a.col(j), Vec::unit(j), &rel))
            kernel_.push_back(std::move(rel));
    }
}

std::optional<Vec> LinearSystem::solve(const Vec& b) const
{
    if (!b.empty() && b.max_index() >= a_.rows())
        throw std::invalid_argument("right-hand side outside codomain");
    Vec t;
    Vec w = r_.reduce(b, &t);
    if (!w.empty())
        return std::nullopt;
    Vec x = -t;
    if (a_.apply(x) != b)
        throw std::logic_error("solve: substitution check failed");
    return x;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) { return LinearSystem(a).solve(b); }

std::optional<Vec> solve(const SparseMap& a, const Vec& b) { return solve(a.matrix(), b); }

std::vector<Vec> kernel_basis(const Matrix& a)
{
    LinearSystem s(a);
    for (auto& k : s.kernel())
        if (!a.apply(k).empty())
            throw std::logic_error("kernel vector does not map to zero");
    return s.kernel();
}

std::vector<Vec> kernel_basis(const SparseMap& a) { return kernel_basis(a.matrix()); }

Index rank(const Matrix& a) { return LinearSystem(a).rank(); }

Cohomology::Cohomology(const Matrix& d_in, const Matrix& d_out, const std::vector<Vec>& preferred)
{
    if (d_in.rows() != d_out.cols())
        throw std::invalid_argument("cohomology: d_in and d_out do not compose");
    if (!d_out.after(d_in).is_zero())
        throw std::invalid_argument("cohomology: d_out o d_in is not zero");
    auto z = kernel_basis(d_out);
    zdim_ = z.size();
    for (Index j = 0; j < d_in.cols(); ++j)
        r_.insert(d_in.col(j));
    for (auto& v : preferred) {
        if (!d_out.apply(v).empty())
            throw std::invalid_argument("cohomology: preferred vector is not a cocycle");
        if (r_.insert(v, Vec::unit(basis_.size())))
            basis_.push_back(v);
    }
    for (auto& v : z) {
        if (r_.insert(v, Vec::unit(basis_.size())))
            basis_.push_back(v);
    }
}

Vec Cohomology::project(const Vec& v) const
{
    Vec t;
    Vec w = r_.reduce(v, &t);
    if (!w.empty())
        throw std::invalid_argument("cohomology: vector is not a cocycle");
    return -t;
}

Cohomology cohomology(const SparseMap& d_in, const SparseMap& d_out)
{
    if (d_in.codomain().names != d_out.domain().names)
        throw std::invalid_argument("cohomology: spaces do not match");
    return Cohomology(d_in.matrix(), d_out.matrix());
}

}  // namespace hocat
