#pragma once

#include "muforge/torus.hpp"

#include <map>
#include <vector>

namespace muforge {

/// Canonical factored rational function on the torus:
///
///     constant * x^monomial * prod_i (1 - u_i * x^{lambda_i})^{e_i}
///
/// with u_i in Q(t) nonzero, lambda_i != 0 normalized so its first nonzero
/// coordinate is positive, and no two factors sharing (u, lambda). The
/// Laurent prefactor x^monomial absorbs the normalization identity
/// (1 - u x^lambda) = (-u x^lambda)(1 - u^{-1} x^{-lambda}); it vanishes for
/// every mu- and j-function built here.
class FactoredRational {
public:
    struct Key {
        LatticeVector lam;
        Scalar u;
        bool operator<(const Key& o) const {
            if (lam != o.lam) return lam < o.lam;
            return u < o.u;
        }
    };

    explicit FactoredRational(size_t rank, Scalar constant = Scalar::one())
        : rank_(rank), constant_(std::move(constant)) {
        if (constant_.is_zero()) throw Error("factored rational with zero constant");
        monomial_.assign(rank, 0);
    }

    static FactoredRational one(size_t rank) { return FactoredRational(rank); }

    size_t rank() const { return rank_; }
    const Scalar& constant() const { return constant_; }
    const LatticeVector& monomial() const { return monomial_; }
    const std::map<Key, long long>& factors() const { return factors_; }

    /// Multiply by (1 - u x^lambda)^e, normalizing as needed.
    void mul_factor(const Scalar& u, const LatticeVector& lam, long long e);
    void mul_constant(const Scalar& c);

    FactoredRational operator*(const FactoredRational& o) const;
    FactoredRational inv() const;
    FactoredRational pow(long long e) const;

    bool operator==(const FactoredRational& o) const {
        return rank_ == o.rank_ && constant_ == o.constant_ && monomial_ == o.monomial_ &&
               factors_ == o.factors_;
    }

    /// If both functions have the same factor data, the constant ratio
    /// this/other; otherwise empty.
    std::optional<Scalar> ratio_to(const FactoredRational& o) const;

    /// Signed vanishing-order at a point: sum of exponents over the factors
    /// that vanish there (positive = zero, negative = pole). Requires every
    /// u to be a monomial in t.
    long long order_at(const TorusPoint& p) const;

    /// Factors vanishing at p, as (lambda, exponent) pairs.
    std::vector<std::pair<LatticeVector, long long>> vanishing_factors(const TorusPoint& p) const;

    /// Whether the lattice vectors of the vanishing factors at p are
    /// linearly independent (every direction sees the full order).
    bool vanishing_in_general_position(const TorusPoint& p) const;

    /// One-variable specialization along chi = p * s^v.
    struct LineFactor {
        Rat c;       // rational coefficient of the unit part
        Rat rot;     // rotation of the unit part
        Rat qexp;    // exponent of q in the unit part
        long long m; // power of the line parameter s
        long long e; // factor exponent
        bool vanishes_at_one() const;
    };
    struct LineSpecialization {
        long long s_power = 0; // from the Laurent prefactor
        std::vector<LineFactor> factors;
        /// Order at s = 1; throws if some factor vanishes identically
        /// along the line (degenerate direction).
        long long order_at_one() const;
        bool degenerate() const;
    };
    LineSpecialization specialize_line(const TorusPoint& p, const LatticeVector& v) const;

    /// x -> x^{-1}.
    FactoredRational substitute_inverse() const;

    /// Push along an integer lattice map phi (rows give the image
    /// coordinates); factors with phi(lambda) = 0 collapse into the constant.
    FactoredRational restrict_along(const IntMat& phi) const;

    /// Apply a Galois element to every coefficient (constant and u's).
    FactoredRational map_coefficients(const GaloisElement& g) const;

    std::string str() const;

private:
    static bool lattice_normalized(const LatticeVector& v);

    size_t rank_;
    Scalar constant_;
    LatticeVector monomial_;
    std::map<Key, long long> factors_;
};

} // namespace muforge
