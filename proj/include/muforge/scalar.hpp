#pragma once

#include "muforge/polynomial.hpp"

#include <optional>

namespace muforge {

/// Element of the field Q(t), where t stands for q^{1/2}.
///
/// Canonical form: gcd(num, den) = 1, den monic and nonzero, zero is 0/1.
/// Equality is therefore plain structural equality.
class Scalar {
public:
    Scalar() : den_(Polynomial(Rat(1))) {}
    explicit Scalar(const Rat& c) : num_(Polynomial(c)), den_(Polynomial(Rat(1))) {}
    Scalar(Polynomial num, Polynomial den);

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(Rat(1)); }
    /// c * t^k, k may be negative.
    static Scalar monomial(const Rat& c, long long k);
    static Scalar t_power(long long k) { return monomial(Rat(1), k); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar inv() const;
    Scalar pow(long long e) const;

    bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    int compare(const Scalar& o) const;
    bool operator<(const Scalar& o) const { return compare(o) < 0; }

    struct Monomial {
        Rat c;
        long long k; // exponent of t, may be negative
    };
    /// Present iff the value is c * t^k (zero counts, with k = 0).
    std::optional<Monomial> as_monomial() const;

    /// Field automorphism t -> sign * t.
    Scalar galois(int sign) const;

    std::string str() const;

private:
    Polynomial num_, den_;
};

/// Result of comparing a monomial scalar at t = sqrt(qF) against 0 and 1.
struct ScalarOrder {
    int sign;   // -1, 0, +1 versus zero
    int vs_one; // -1, 0, +1 versus one
};

/// Exact order of a = c*t^k at t = sqrt(qF), qF > 1 rational.
/// Rejects non-monomial input ("comparison undefined").
ScalarOrder scalar_compare(const Scalar& a, const Rat& qF);

} // namespace muforge
