#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hocat {

class ArithmeticError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/* Element of Q or of F_p.
 *
 * A scalar with modulus 0 is a rational number.  Rationals combine with
 * residues mod p by reduction; combining residues of different primes throws.
 */
class Scalar {
  public:
    Scalar() = default;
    Scalar(long v);
    Scalar(int v) : Scalar(static_cast<long>(v)) {}
    explicit Scalar(const mpq_class& q);
    Scalar(long num, long den);

    static Scalar residue(long v, std::uint32_t p);

    std::uint32_t modulus() const { return p_; }
    bool is_zero() const { return p_ ? r_ == 0 : !q_; }
    bool is_one() const;
    Scalar in_field(std::uint32_t p) const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    Scalar inverse() const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // "3", "-2/5"; residues print as their representative in [0, p).
    std::string str() const;

    std::uint32_t raw_residue() const { return r_; }
    mpq_class rational() const;

  private:
    void normalize_();
    static void unify_(Scalar& a, Scalar& b);

    std::uint32_t p_ = 0;
    std::uint32_t r_ = 0;
    std::optional<mpq_class> q_;
};

/* The ground field: p == 0 means Q. */
struct Field {
    std::uint32_t p = 0;

    Scalar from_int(long v) const { return p ? Scalar::residue(v, p) : Scalar(v); }
    Scalar one() const { return from_int(1); }
    Scalar zero() const { return from_int(0); }
    Scalar parse(std::string_view text) const;
    std::string name() const;
    bool operator==(const Field&) const = default;
};

bool is_prime(std::uint32_t p);
Field parse_field(std::string_view text);

}  // namespace hocat
