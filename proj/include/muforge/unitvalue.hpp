#pragma once

#include "muforge/scalar.hpp"

#include <optional>

namespace muforge {

/// Element of the group mu_inf x q^Q: a root of unity e^{2 pi i rot}
/// times q^exp, with rot in [0,1) and exp rational.
struct UnitValue {
    Rat rot; // rotation number, canonical representative in [0,1)
    Rat exp; // exponent of q

    UnitValue() : rot(0), exp(0) {}
    UnitValue(const Rat& r, const Rat& e) : rot(mod1(r)), exp(e) {}

    static UnitValue identity() { return UnitValue(); }
    static UnitValue q_power(const Rat& e) { return UnitValue(Rat(0), e); }
    static UnitValue minus_one() { return UnitValue(Rat(1, 2), Rat(0)); }

    UnitValue operator*(const UnitValue& o) const { return UnitValue(rot + o.rot, exp + o.exp); }
    UnitValue inv() const { return UnitValue(-rot, -exp); }
    UnitValue pow(long long k) const { return UnitValue(rot * k, exp * k); }

    bool operator==(const UnitValue& o) const { return rot == o.rot && exp == o.exp; }
    bool operator!=(const UnitValue& o) const { return !(*this == o); }
    bool is_identity() const { return rot == 0 && exp == 0; }

    /// |v| = q^exp depends only on the exponent component.
    const Rat& abs_exponent() const { return exp; }

    std::string str() const;
};

/// Element of the modelled Galois group: a sign acting on t = q^{1/2}
/// and an Adams operation zeta -> zeta^cyclo on roots of unity.
struct GaloisElement {
    int sign = 1;  // +1 or -1, action t -> sign * t
    Int cyclo = 1; // acts on mu_inf, must be invertible mod each order met

    bool is_identity() const { return sign == 1 && cyclo == 1; }
    GaloisElement compose(const GaloisElement& o) const {
        return GaloisElement{sign * o.sign, cyclo * o.cyclo};
    }
};

/// gamma acting on Q(t): substitutes t -> sign * t.
Scalar galois_scalar(const GaloisElement& g, const Scalar& a);

/// gamma acting on mu_inf x q^Q. The exponent component never changes;
/// q^e with 2e an odd integer picks up a sign when gamma moves q^{1/2}.
/// Rejects 2e outside Z under sign = -1 ("half-integer regime violation")
/// and cyclo factors not invertible at the rotation's order.
UnitValue galois_unit(const GaloisElement& g, const UnitValue& v);

/// Embedding of representable unit values into Q(t): requires the
/// rotation in {0, 1/2} and 2*exp integral.
Scalar unit_to_scalar(const UnitValue& v);

/// Inverse direction for monomials +-t^k; empty when |c| != 1.
std::optional<UnitValue> scalar_to_unit(const Scalar& a);

} // namespace muforge
