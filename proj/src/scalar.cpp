#include "hocat/scalar.hpp"

#include <charconv>

namespace hocat {

namespace {

std::uint32_t reduce(long v, std::uint32_t p)
{
    long r = v % static_cast<long>(p);
    if (r < 0)
        r += p;
    return static_cast<std::uint32_t>(r);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p)
{
    if (a == 0)
        throw ArithmeticError("division by zero in F_" + std::to_string(p));
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0)
        t += p;
    return static_cast<std::uint32_t>(t);
}

std::uint32_t mpz_mod(const mpz_class& z, std::uint32_t p)
{
    mpz_class r = z % p;
    if (r < 0)
        r += p;
    return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

Scalar::Scalar(long v)
{
    if (v != 0)
        q_.emplace(v);
}

Scalar::Scalar(const mpq_class& q)
{
    if (q != 0) {
        q_.emplace(q);
        q_->canonicalize();
    }
}

Scalar::Scalar(long num, long den)
{
    if (den == 0)
        throw ArithmeticError("zero denominator");
    if (num != 0) {
        q_.emplace(num, den);
        q_->canonicalize();
    }
}

Scalar Scalar::residue(long v, std::uint32_t p)
{
    if (p == 0)
        return Scalar(v);
    Scalar s;
    s.p_ = p;
    s.r_ = reduce(v, p);
    return s;
}

bool Scalar::is_one() const
{
    return p_ ? r_ == 1 % p_ : (q_ && *q_ == 1);
}

mpq_class Scalar::rational() const
{
    if (p_)
        return mpq_class(r_);
    return q_ ? *q_ : mpq_class(0);
}

Scalar Scalar::in_field(std::uint32_t p) const
{
    if (p_ == p)
        return *this;
    if (p_ != 0)
        throw ArithmeticError("cannot move F_" + std::to_string(p_) + " element to another field");
    if (p == 0)
        return *this;
    Scalar s;
    s.p_ = p;
    if (q_) {
        std::uint32_t den = mpz_mod(q_->get_den(), p);
        if (den == 0)
            throw ArithmeticError("denominator divisible by " + std::to_string(p));
        std::uint64_t num = mpz_mod(q_->get_num(), p);
        s.r_ = static_cast<std::uint32_t>(num * inv_mod(den, p) % p);
    }
    return s;
}

void Scalar::unify_(Scalar& a, Scalar& b)
{
    if (a.p_ == b.p_)
        return;
    if (a.p_ && b.p_)
        throw ArithmeticError("mixing F_" + std::to_string(a.p_) + " and F_" + std::to_string(b.p_));
    if (a.p_)
        b = b.in_field(a.p_);
    else
        a = a.in_field(b.p_);
}

void Scalar::normalize_()
{
    if (!p_ && q_ && *q_ == 0)
        q_.reset();
}

Scalar Scalar::operator-() const
{
    Scalar s = *this;
    if (p_)
        s.r_ = r_ ? p_ - r_ : 0;
    else if (q_)
        *s.q_ = -*q_;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    if (o.is_zero() && (o.p_ == p_ || !o.p_))
        return *this;
    Scalar b = o;
    unify_(*this, b);
    if (p_) {
        r_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(r_) + b.r_) % p_);
    } else if (b.q_) {
        if (q_)
            *q_ += *b.q_;
        else
            q_ = b.q_;
        normalize_();
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o)
{
    Scalar b = o;
    unify_(*this, b);
    if (p_) {
        r_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(r_) * b.r_ % p_);
    } else if (!q_ || !b.q_) {
        q_.reset();
    } else {
        *q_ *= *b.q_;
    }
    return *this;
}

Scalar Scalar::inverse() const
{
    if (is_zero())
        throw ArithmeticError("division by zero");
    Scalar s = *this;
    if (p_)
        s.r_ = inv_mod(r_, p_);
    else
        *s.q_ = 1 / *q_;
    return s;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    Scalar b = o;
    unify_(*this, b);
    return *this *= b.inverse();
}

bool operator==(const Scalar& a, const Scalar& b)
{
    if (a.p_ == b.p_)
        return a.p_ ? a.r_ == b.r_ : (a.is_zero() ? b.is_zero() : (b.q_ && *a.q_ == *b.q_));
    Scalar x = a, y = b;
    Scalar::unify_(x, y);
    return x == y;
}

std::string Scalar::str() const
{
    if (p_)
        return std::to_string(r_);
    return q_ ? q_->get_str() : "0";
}

Scalar Field::parse(std::string_view text) const
{
    std::string s(text);
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad scalar '" + s + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("bad scalar '" + s + "'");
    q.canonicalize();
    return Scalar(q).in_field(p);
}

std::string Field::name() const
{
    return p ? "F" + std::to_string(p) : "Q";
}

bool is_prime(std::uint32_t p)
{
    if (p < 2)
        return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

Field parse_field(std::string_view text)
{
    if (text == "Q" || text == "QQ")
        return {};
    std::string_view digits = text;
    if (!digits.empty() && digits[0] == 'F')
        digits.remove_prefix(1);
    std::uint32_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || !is_prime(p))
        throw std::invalid_argument("field must be Q or F<prime>, got '" + std::string(text) + "'");
    return Field{p};
}

}  // namespace hocat
