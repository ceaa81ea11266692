#pragma once

#include "muforge/linalg.hpp"
#include "muforge/unitvalue.hpp"

#include <vector>

namespace muforge {

/// Point of the torus Hom(Lambda, mu_inf x q^Q), stored as one unit value
/// per lattice coordinate; evaluation is the group homomorphism
/// chi(lambda) = prod values[i]^{lambda_i}.
struct TorusPoint {
    std::vector<UnitValue> values;

    TorusPoint() = default;
    explicit TorusPoint(std::vector<UnitValue> v) : values(std::move(v)) {}
    static TorusPoint identity(size_t n) { return TorusPoint(std::vector<UnitValue>(n)); }

    size_t rank() const { return values.size(); }

    UnitValue eval(const LatticeVector& lambda) const {
        Rat r(0), e(0);
        for (size_t i = 0; i < values.size(); ++i) {
            r += values[i].rot * lambda[i];
            e += values[i].exp * lambda[i];
        }
        return UnitValue(r, e);
    }

    TorusPoint operator*(const TorusPoint& o) const {
        std::vector<UnitValue> v(values.size());
        for (size_t i = 0; i < values.size(); ++i) v[i] = values[i] * o.values[i];
        return TorusPoint(std::move(v));
    }

    TorusPoint inv() const {
        std::vector<UnitValue> v(values.size());
        for (size_t i = 0; i < values.size(); ++i) v[i] = values[i].inv();
        return TorusPoint(std::move(v));
    }

    bool operator==(const TorusPoint& o) const { return values == o.values; }
    bool operator!=(const TorusPoint& o) const { return !(*this == o); }

    bool is_identity() const {
        for (const auto& v : values)
            if (!v.is_identity()) return false;
        return true;
    }

    bool is_unitary() const {
        for (const auto& v : values)
            if (v.exp != 0) return false;
        return true;
    }

    /// Exponent components as a rational vector (log_q of coordinate sizes).
    RatVec exponent_vector() const {
        RatVec e(values.size());
        for (size_t i = 0; i < values.size(); ++i) e[i] = values[i].exp;
        return e;
    }

    /// (w . chi)(lambda) = chi(w^{-1} lambda); pass the inverse lattice matrix.
    TorusPoint transformed(const IntMat& w_inv) const {
        size_t n = values.size();
        std::vector<UnitValue> v(n);
        for (size_t j = 0; j < n; ++j) {
            LatticeVector col(n);
            for (size_t i = 0; i < n; ++i) col[i] = w_inv[i][j];
            v[j] = eval(col);
        }
        return TorusPoint(std::move(v));
    }

    bool operator<(const TorusPoint& o) const {
        for (size_t i = 0; i < values.size(); ++i) {
            if (values[i].exp != o.values[i].exp) return values[i].exp < o.values[i].exp;
            if (values[i].rot != o.values[i].rot) return values[i].rot < o.values[i].rot;
        }
        return false;
    }

    std::string str() const;
};

} // namespace muforge
