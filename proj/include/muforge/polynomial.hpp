#pragma once

#include "muforge/rational.hpp"

#include <utility>
#include <vector>

namespace muforge {

/// Dense univariate polynomial over Q; coefficient i belongs to t^i.
/// The zero polynomial has an empty coefficient list.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(const Rat& c) {
        if (c != 0) coef_ = {c};
    }
    explicit Polynomial(std::vector<Rat> coef) : coef_(std::move(coef)) { trim(); }

    static Polynomial monomial(const Rat& c, int k);

    bool is_zero() const { return coef_.empty(); }
    bool is_one() const { return coef_.size() == 1 && coef_[0] == 1; }
    int degree() const { return static_cast<int>(coef_.size()) - 1; }
    const std::vector<Rat>& coefficients() const { return coef_; }
    const Rat& leading() const;
    Rat coefficient(int k) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;

    /// Monic gcd; gcd(0, 0) = 0.
    static Polynomial gcd(Polynomial a, Polynomial b);

    Polynomial scaled(const Rat& c) const;
    Polynomial monic() const;

    /// t -> s*t for s in {+1, -1}.
    Polynomial substitute_sign(int s) const;

    bool operator==(const Polynomial& o) const { return coef_ == o.coef_; }
    bool operator!=(const Polynomial& o) const { return coef_ != o.coef_; }

    /// Total order for use as a map key.
    int compare(const Polynomial& o) const;

    std::string str() const;

private:
    void trim() {
        while (!coef_.empty() && coef_.back() == 0) coef_.pop_back();
    }

    std::vector<Rat> coef_;
};

} // namespace muforge
